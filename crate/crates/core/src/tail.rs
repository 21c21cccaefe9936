//! Tail-window estimators for limsup/liminf-type quantities.
//!
//! Every asymptotic statement in this crate is reduced, on a finite prefix,
//! to a max or min over a trailing window of the data. The window is the
//! positions `ceil((1-w)*N)..=N` for a configured tail fraction `w`, so a
//! larger `w` means more of the prefix counts as "late". Estimates carry
//! their evidence window so reports stay auditable, and a distinguished
//! [`DefectValue::Unbounded`] marks statistics that keep doubling across
//! dyadic sub-windows and therefore admit no finite limsup estimate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Configuration shared by all tail estimators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatorConfig {
    /// Fraction `w` of the prefix treated as the tail, in `(0, 1]`.
    pub tail_fraction: f64,
    /// Explicit strictly-decreasing epsilon grid. When `None`, a geometric
    /// grid is derived from the data (see [`EstimatorConfig::eps_grid_for`]).
    pub eps_grid: Option<Vec<f64>>,
    /// Number of points in the derived geometric grid.
    pub eps_count: usize,
    /// Tolerance for all threshold verdicts.
    pub verdict_tol: f64,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self {
            tail_fraction: 0.5,
            eps_grid: None,
            eps_count: 20,
            verdict_tol: 1e-3,
        }
    }
}

impl EstimatorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tail_fraction > 0.0 && self.tail_fraction <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "tail_fraction must lie in (0, 1], got {}",
                self.tail_fraction
            )));
        }
        if !(self.verdict_tol >= 0.0 && self.verdict_tol.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "verdict_tol must be a non-negative real, got {}",
                self.verdict_tol
            )));
        }
        if self.eps_count == 0 {
            return Err(Error::InvalidConfig("eps_count must be positive".into()));
        }
        if let Some(grid) = &self.eps_grid {
            if grid.is_empty() {
                return Err(Error::InvalidConfig("eps_grid must be non-empty".into()));
            }
            let mut prev = f64::INFINITY;
            for &e in grid {
                if !(e > 0.0 && e.is_finite()) {
                    return Err(Error::InvalidConfig(format!(
                        "eps_grid entries must be positive reals, got {e}"
                    )));
                }
                if e >= prev {
                    return Err(Error::InvalidConfig(
                        "eps_grid must be strictly decreasing".into(),
                    ));
                }
                prev = e;
            }
        }
        Ok(())
    }

    /// 1-based start of the tail window for a prefix of length `n`.
    /// Non-empty for every `n >= 1`.
    pub fn window_start(&self, n: usize) -> usize {
        let raw = ((1.0 - self.tail_fraction) * n as f64).ceil() as usize;
        raw.clamp(1, n)
    }

    /// The epsilon grid used for exceedance analysis of `values`.
    ///
    /// An explicit grid wins. Otherwise the grid is geometric, starting at
    /// half the tail value span and halving `eps_count` times, cut off at a
    /// floor with two parts: a floating-point guard of `1e-9` times the
    /// value scale, and a resolution guard `2 / (verdict_tol * window_start)`.
    /// The resolution guard drops epsilons so small that a vanishing head
    /// (say deviations shrinking like `1/i`) would still flood every window
    /// ratio above the verdict tolerance, which no finite prefix can
    /// distinguish from genuine positive density.
    pub fn eps_grid_for(&self, values: &[f64]) -> Vec<f64> {
        if let Some(grid) = &self.eps_grid {
            return grid.clone();
        }
        let start = self.window_start(values.len());
        let tail = &values[start - 1..];
        let tail_max = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let tail_min = tail.iter().cloned().fold(f64::INFINITY, f64::min);
        let scale = tail_max.abs().max(tail_min.abs());
        let tol = self.verdict_tol.max(1e-12);
        let floor = (1e-9 * scale).max(2.0 / (tol * start as f64));
        let top = (tail_max - tail_min) / 2.0;
        let mut grid = Vec::with_capacity(self.eps_count);
        let mut eps = top;
        for _ in 0..self.eps_count {
            if eps < floor {
                break;
            }
            grid.push(eps);
            eps /= 2.0;
        }
        if grid.is_empty() {
            grid.push(floor.max(f64::MIN_POSITIVE));
        }
        grid
    }
}

/// A limsup/liminf-type estimate. `Unbounded` marks a statistic that grows
/// past any fixed bound across doubling sub-windows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DefectValue {
    Finite(f64),
    Unbounded,
}

impl DefectValue {
    pub fn is_unbounded(&self) -> bool {
        matches!(self, DefectValue::Unbounded)
    }

    /// The finite value, or `+inf` for the unbounded marker.
    pub fn as_f64(&self) -> f64 {
        match self {
            DefectValue::Finite(v) => *v,
            DefectValue::Unbounded => f64::INFINITY,
        }
    }
}

impl Serialize for DefectValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DefectValue::Finite(v) => s.serialize_f64(*v),
            DefectValue::Unbounded => s.serialize_str("unbounded"),
        }
    }
}

impl<'de> Deserialize<'de> for DefectValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Tag(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(DefectValue::Finite(v)),
            Raw::Tag(t) if t == "unbounded" => Ok(DefectValue::Unbounded),
            Raw::Tag(t) => Err(serde::de::Error::custom(format!(
                "expected a number or \"unbounded\", got {t:?}"
            ))),
        }
    }
}

/// An estimated limsup-type quantity together with the oscillation band and
/// the evidence window it was measured on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DefectEstimate {
    pub value: DefectValue,
    /// Minimum of the statistic over the evidence window.
    pub band_low: f64,
    /// Maximum of the statistic over the evidence window.
    pub band_high: f64,
    /// 1-based window bounds, inclusive; `window_end` is the prefix length.
    pub window_start: usize,
    pub window_end: usize,
}

impl DefectEstimate {
    pub fn band_width(&self) -> f64 {
        self.band_high - self.band_low
    }
}

fn window_extrema(xs: &[f64], cfg: &EstimatorConfig) -> Result<(f64, f64, usize, usize)> {
    cfg.validate()?;
    if xs.is_empty() {
        return Err(Error::EmptyInput);
    }
    for (i, v) in xs.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite { index: i + 1 });
        }
    }
    let n = xs.len();
    let start = cfg.window_start(n);
    let tail = &xs[start - 1..];
    let hi = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = tail.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok((lo, hi, start, n))
}

/// Finite-prefix limsup surrogate: the maximum of `xs` over the tail window.
pub fn tail_limsup(xs: &[f64], cfg: &EstimatorConfig) -> Result<DefectEstimate> {
    let (lo, hi, start, end) = window_extrema(xs, cfg)?;
    Ok(DefectEstimate {
        value: DefectValue::Finite(hi),
        band_low: lo,
        band_high: hi,
        window_start: start,
        window_end: end,
    })
}

/// Finite-prefix liminf surrogate: the minimum of `xs` over the tail window.
pub fn tail_liminf(xs: &[f64], cfg: &EstimatorConfig) -> Result<DefectEstimate> {
    let (lo, hi, start, end) = window_extrema(xs, cfg)?;
    Ok(DefectEstimate {
        value: DefectValue::Finite(lo),
        band_low: lo,
        band_high: hi,
        window_start: start,
        window_end: end,
    })
}

/// Doubling-window growth test. Fires when the max over the last half of
/// the data exceeds the max over the preceding quarter by a factor of at
/// least two, and that quarter in turn dominates the eighth before it the
/// same way. Intended for non-negative deviation streams; a statistic that
/// keeps doubling like this has no usable finite limsup on this prefix.
pub fn looks_unbounded(xs: &[f64]) -> bool {
    let n = xs.len();
    if n < 8 {
        return false;
    }
    let max_over = |lo: usize, hi: usize| xs[lo..hi].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let m0 = max_over(n / 2, n);
    let m1 = max_over(n / 4, n / 2);
    let m2 = max_over(n / 8, n / 4);
    m1 > 0.0 && m2 > 0.0 && m0 >= 2.0 * m1 && m1 >= 2.0 * m2
}

/// Threshold verdict for "is this defect admissible at fuzziness r".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accept,
    Reject,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Accept => write!(f, "accept"),
            Verdict::Reject => write!(f, "reject"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// The shared acceptance rule: a measured defect `d` is accepted at
/// fuzziness `r` when `d <= r + tol`. Estimates landing within one further
/// tolerance above that threshold are reported inconclusive rather than
/// rejected, since the estimator cannot separate them from the boundary.
pub fn threshold_verdict(defect: DefectValue, r: f64, tol: f64) -> Verdict {
    match defect {
        DefectValue::Unbounded => Verdict::Reject,
        DefectValue::Finite(d) => {
            if d <= r + tol {
                Verdict::Accept
            } else if d <= r + 2.0 * tol {
                Verdict::Inconclusive
            } else {
                Verdict::Reject
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sequence_pins_both_estimators() {
        let cfg = EstimatorConfig::default();
        let xs = vec![1.0, 1.0, 1.0, 1.0];
        let up = tail_limsup(&xs, &cfg).unwrap();
        assert_eq!(up.value, DefectValue::Finite(1.0));
        assert_eq!((up.band_low, up.band_high), (1.0, 1.0));
        assert_eq!((up.window_start, up.window_end), (2, 4));
        let lo = tail_liminf(&xs, &cfg).unwrap();
        assert_eq!(lo.value, DefectValue::Finite(1.0));
    }

    #[test]
    fn alternation_separates_the_estimators() {
        let cfg = EstimatorConfig::default();
        let xs = vec![0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0];
        let up = tail_limsup(&xs, &cfg).unwrap();
        assert_eq!(up.value, DefectValue::Finite(1.0));
        assert_eq!(up.band_low, 0.0);
        let lo = tail_liminf(&xs, &cfg).unwrap();
        assert_eq!(lo.value, DefectValue::Finite(0.0));
    }

    #[test]
    fn even_count_ratios_settle_at_one_half() {
        // ratios (1/n)|K_n| for K = even numbers, n = 1..1e5; the exact
        // ratio is floor(n/2)/n, so the window max is 0.5 on the nose.
        let cfg = EstimatorConfig::default();
        let xs: Vec<f64> = (1..=100_000)
            .map(|n| (n / 2) as f64 / n as f64)
            .collect();
        let up = tail_limsup(&xs, &cfg).unwrap();
        assert!((up.value.as_f64() - 0.5).abs() < 1e-4);
        let lo = tail_liminf(&xs, &cfg).unwrap();
        assert!((lo.value.as_f64() - 0.5).abs() < 1e-4);
    }

    #[test]
    fn empty_input_is_a_usage_error() {
        let cfg = EstimatorConfig::default();
        assert_eq!(tail_limsup(&[], &cfg), Err(Error::EmptyInput));
        assert_eq!(tail_liminf(&[], &cfg), Err(Error::EmptyInput));
    }

    #[test]
    fn estimators_ignore_everything_before_the_window() {
        let cfg = EstimatorConfig::default();
        let tail = vec![3.0, 4.0, 5.0, 4.0];
        let mut padded = vec![100.0, -100.0, 42.0, 0.0];
        padded.extend_from_slice(&tail);
        let up = tail_limsup(&padded, &cfg).unwrap();
        // window of the 8-element input starts at position 4
        assert_eq!(up.window_start, 4);
        assert_eq!(up.value, DefectValue::Finite(5.0));
        assert_eq!(up.band_low, 0.0);
    }

    #[test]
    fn exact_limit_reached_in_window_is_returned_exactly() {
        let cfg = EstimatorConfig::default();
        let mut xs = vec![9.0, -2.0];
        xs.extend(std::iter::repeat(7.0).take(6));
        assert_eq!(
            tail_limsup(&xs, &cfg).unwrap().value,
            DefectValue::Finite(7.0)
        );
        assert_eq!(
            tail_liminf(&xs, &cfg).unwrap().value,
            DefectValue::Finite(7.0)
        );
    }

    #[test]
    fn liminf_never_exceeds_limsup() {
        let cfg = EstimatorConfig::default();
        for seed in 0..32u64 {
            let xs: Vec<f64> = (0..257)
                .map(|i| crate::generators::unit_draw(seed, i) * 10.0 - 5.0)
                .collect();
            let up = tail_limsup(&xs, &cfg).unwrap().value.as_f64();
            let lo = tail_liminf(&xs, &cfg).unwrap().value.as_f64();
            assert!(lo <= up);
        }
    }

    #[test]
    fn window_start_is_always_in_range() {
        let cfg = EstimatorConfig {
            tail_fraction: 1.0,
            ..Default::default()
        };
        assert_eq!(cfg.window_start(1), 1);
        assert_eq!(cfg.window_start(10), 1);
        let half = EstimatorConfig::default();
        assert_eq!(half.window_start(1), 1);
        assert_eq!(half.window_start(8), 4);
        assert_eq!(half.window_start(100_000), 50_000);
    }

    #[test]
    fn growth_fires_the_doubling_test_and_noise_does_not() {
        let linear: Vec<f64> = (1..=512).map(|i| i as f64).collect();
        assert!(looks_unbounded(&linear));
        let bounded: Vec<f64> = (1..=512).map(|i| 1.0 + 0.5 * ((i % 7) as f64)).collect();
        assert!(!looks_unbounded(&bounded));
        let zeros = vec![0.0; 512];
        assert!(!looks_unbounded(&zeros));
        let decaying: Vec<f64> = (1..=512).map(|i| 1.0 / i as f64).collect();
        assert!(!looks_unbounded(&decaying));
    }

    #[test]
    fn verdict_rule_boundaries() {
        let tol = 1e-3;
        assert_eq!(
            threshold_verdict(DefectValue::Finite(0.5), 0.5, tol),
            Verdict::Accept
        );
        assert_eq!(
            threshold_verdict(DefectValue::Finite(0.5004), 0.5, tol),
            Verdict::Accept
        );
        assert_eq!(
            threshold_verdict(DefectValue::Finite(0.5015), 0.5, tol),
            Verdict::Inconclusive
        );
        assert_eq!(
            threshold_verdict(DefectValue::Finite(0.51), 0.5, tol),
            Verdict::Reject
        );
        assert_eq!(
            threshold_verdict(DefectValue::Unbounded, 10.0, tol),
            Verdict::Reject
        );
    }

    #[test]
    fn auto_grid_is_strictly_decreasing_and_floored() {
        let cfg = EstimatorConfig::default();
        let xs: Vec<f64> = (1..=1000).map(|i| (i % 2) as f64).collect();
        let grid = cfg.eps_grid_for(&xs);
        assert!(!grid.is_empty());
        for w in grid.windows(2) {
            assert!(w[1] < w[0]);
        }
        // resolution floor: 2 / (tol * window_start) = 2 / (1e-3 * 500) = 4.0
        // exceeds the span-derived top of 0.5, so the grid collapses to it.
        assert!(grid.iter().all(|&e| e > 0.0));
        let constant = vec![3.0; 100];
        let g2 = cfg.eps_grid_for(&constant);
        assert_eq!(g2.len(), 1);
        assert!(g2[0] > 0.0);
    }
}
