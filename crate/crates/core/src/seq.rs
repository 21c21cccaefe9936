//! Core domain types: finite sequence prefixes and finite index-set
//! realizations.
//!
//! Everything downstream operates on a [`SequencePrefix`] (the first `N`
//! terms of a real sequence, 1-based) or an [`IndexSet`] (a subset of
//! `1..=horizon` whose membership is fully known up to the horizon).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite prefix `a_1..a_N` of a real sequence. Values are 1-based in all
/// reports; internally stored in a zero-based `Vec`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequencePrefix {
    values: Vec<f64>,
}

impl SequencePrefix {
    /// Builds a prefix, rejecting empty input and non-finite entries.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { index: i + 1 });
            }
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Term `a_i` with 1-based `i`. Panics if out of range.
    pub fn get(&self, i: usize) -> f64 {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The subsequence picked out by `indices`, re-indexed as its own
    /// prefix `b_1..b_M`.
    pub fn subsequence(&self, indices: &IndexSet) -> Result<Self> {
        if indices.horizon() != self.len() {
            return Err(Error::InvalidParam(format!(
                "index-set horizon {} does not match sequence length {}",
                indices.horizon(),
                self.len()
            )));
        }
        SequencePrefix::new(indices.iter().map(|i| self.get(i)).collect())
    }

    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// A finite realization of a set `K` of natural numbers: the members of
/// `K ∩ {1..horizon}`, strictly increasing. Membership beyond the horizon
/// is unknown, and operations refuse to answer past it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSet {
    indices: Vec<usize>,
    horizon: usize,
}

impl IndexSet {
    pub fn new(indices: Vec<usize>, horizon: usize) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::InvalidParam("horizon must be positive".into()));
        }
        let mut prev = 0usize;
        for &i in &indices {
            if i == 0 {
                return Err(Error::InvalidParam("indices are 1-based".into()));
            }
            if i <= prev {
                return Err(Error::InvalidParam(format!(
                    "indices must be strictly increasing (saw {i} after {prev})"
                )));
            }
            if i > horizon {
                return Err(Error::InvalidParam(format!(
                    "index {i} exceeds the horizon {horizon}"
                )));
            }
            prev = i;
        }
        Ok(Self { indices, horizon })
    }

    /// Materializes `{i in 1..=horizon : pred(i)}`.
    pub fn from_predicate(horizon: usize, pred: impl Fn(usize) -> bool) -> Result<Self> {
        Self::new((1..=horizon).filter(|&i| pred(i)).collect(), horizon)
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// `|K_n|`, the number of members not exceeding `n`. Errors when `n`
    /// lies beyond the known horizon.
    pub fn prefix_count(&self, n: usize) -> Result<usize> {
        if n > self.horizon {
            return Err(Error::OutOfEvidence {
                n,
                horizon: self.horizon,
            });
        }
        Ok(self.indices.partition_point(|&i| i <= n))
    }

    /// Union within a common horizon.
    pub fn union(&self, other: &IndexSet) -> Result<IndexSet> {
        if self.horizon != other.horizon {
            return Err(Error::InvalidParam(format!(
                "horizon mismatch: {} vs {}",
                self.horizon, other.horizon
            )));
        }
        let mut merged: Vec<usize> = self
            .indices
            .iter()
            .chain(other.indices.iter())
            .copied()
            .collect();
        merged.sort_unstable();
        merged.dedup();
        IndexSet::new(merged, self.horizon)
    }
}
