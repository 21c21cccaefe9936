//! Asymptotic density of index sets over a finite horizon.
//!
//! The density profile of a set `K` is the sequence `|K_n| / n`; its tail
//! behaviour is what every density notion here is read off from. A set has
//! an (ordinary) density when the profile settles, and `x` counts as an
//! r-density when the profile stays within `r` of `x` in the tail-limsup
//! sense.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seq::IndexSet;
use crate::tail::{
    tail_liminf, tail_limsup, threshold_verdict, DefectEstimate, EstimatorConfig, Verdict,
};

/// The sequence `|K_n| / n` for `n = 1..=horizon`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityProfile {
    ratios: Vec<f64>,
}

impl DensityProfile {
    pub fn ratios(&self) -> &[f64] {
        &self.ratios
    }

    /// Ratio at 1-based `n`.
    pub fn at(&self, n: usize) -> f64 {
        self.ratios[n - 1]
    }

    pub fn len(&self) -> usize {
        self.ratios.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ratios.is_empty()
    }
}

/// `|K_n|` for 1-based `n`; errors past the horizon.
pub fn prefix_count(k: &IndexSet, n: usize) -> Result<usize> {
    k.prefix_count(n)
}

/// Counting ratios `|K_n| / n` for every `n` up to the horizon.
pub fn density_profile(k: &IndexSet) -> DensityProfile {
    let mut ratios = Vec::with_capacity(k.horizon());
    let mut members = k.iter().peekable();
    let mut count = 0usize;
    for n in 1..=k.horizon() {
        if members.peek() == Some(&n) {
            members.next();
            count += 1;
        }
        ratios.push(count as f64 / n as f64);
    }
    DensityProfile { ratios }
}

/// Whether the profile settles on the evidence window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum Existence {
    Exists(f64),
    DoesNotExist,
}

/// Tail estimate of a density profile with an existence verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub limsup: DefectEstimate,
    pub liminf: DefectEstimate,
    pub verdict: Existence,
}

impl DensityEstimate {
    /// Width of the oscillation band over the window.
    pub fn band_width(&self) -> f64 {
        self.limsup.value.as_f64() - self.liminf.value.as_f64()
    }

    pub fn midpoint(&self) -> f64 {
        (self.limsup.value.as_f64() + self.liminf.value.as_f64()) / 2.0
    }
}

/// Estimates `d(K)`: the density exists (as far as this prefix can tell)
/// when the profile's tail oscillation band is no wider than the verdict
/// tolerance, and the reported value is the band midpoint.
pub fn estimate_density(k: &IndexSet, cfg: &EstimatorConfig) -> Result<DensityEstimate> {
    let profile = density_profile(k);
    let limsup = tail_limsup(profile.ratios(), cfg)?;
    let liminf = tail_liminf(profile.ratios(), cfg)?;
    let width = limsup.value.as_f64() - liminf.value.as_f64();
    let verdict = if width <= cfg.verdict_tol {
        Existence::Exists((limsup.value.as_f64() + liminf.value.as_f64()) / 2.0)
    } else {
        Existence::DoesNotExist
    };
    Ok(DensityEstimate {
        limsup,
        liminf,
        verdict,
    })
}

/// Tail limsup of `| |K_n|/n - x |`: the smallest fuzziness (up to the
/// verdict tolerance) at which `x` passes as an r-density of `K`.
pub fn density_defect(k: &IndexSet, x: f64, cfg: &EstimatorConfig) -> Result<DefectEstimate> {
    let profile = density_profile(k);
    let deviations: Vec<f64> = profile.ratios().iter().map(|r| (r - x).abs()).collect();
    tail_limsup(&deviations, cfg)
}

/// Is `x` an asymptotic r-density of `K`?
pub fn is_r_density(k: &IndexSet, x: f64, r: f64, cfg: &EstimatorConfig) -> Result<Verdict> {
    if r < 0.0 || r.is_nan() {
        return Err(Error::NegativeR { r });
    }
    let defect = density_defect(k, x, cfg)?;
    Ok(threshold_verdict(defect.value, r, cfg.verdict_tol))
}

/// Density report for a subsequence's index set inside a parent of length
/// `N`, including the statistically-dense verdict (density exists and
/// equals one within tolerance).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsequenceDensity {
    pub density: DensityEstimate,
    /// Tail limsup of `| |H_n|/n - 1 |`, the defect of full density.
    pub defect_from_full: DefectEstimate,
    /// Whether full density is admissible at the requested fuzziness `r`.
    pub r_verdict: Verdict,
    pub is_statistically_dense: bool,
}

pub fn subsequence_density(
    parent_len: usize,
    h: &IndexSet,
    r: f64,
    cfg: &EstimatorConfig,
) -> Result<SubsequenceDensity> {
    if h.horizon() != parent_len {
        return Err(Error::InvalidParam(format!(
            "subsequence horizon {} must equal the parent length {}",
            h.horizon(),
            parent_len
        )));
    }
    if r < 0.0 || r.is_nan() {
        return Err(Error::NegativeR { r });
    }
    let density = estimate_density(h, cfg)?;
    let defect_from_full = density_defect(h, 1.0, cfg)?;
    let r_verdict = threshold_verdict(defect_from_full.value, r, cfg.verdict_tol);
    let is_statistically_dense = match density.verdict {
        Existence::Exists(x) => (x - 1.0).abs() <= cfg.verdict_tol,
        Existence::DoesNotExist => false,
    };
    Ok(SubsequenceDensity {
        density,
        defect_from_full,
        r_verdict,
        is_statistically_dense,
    })
}
