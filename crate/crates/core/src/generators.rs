//! Deterministic construction of the canonical test objects: the even
//! numbers, the digit-condition set with no settling density, the spike
//! sequence, convergent baselines, and planted sequences whose exception
//! set has a prescribed exact density. Seeded variants use a counter-based
//! mix so generation is reproducible and order-independent.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seq::{IndexSet, SequencePrefix};

/// SplitMix64 finalizer. One full pass per draw keeps draws independent of
/// evaluation order.
fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform draw in `[0, 1)` addressed by `(seed, counter)`.
pub fn unit_draw(seed: u64, counter: u64) -> f64 {
    let bits = splitmix64(splitmix64(seed) ^ counter.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    (bits >> 11) as f64 / (1u64 << 53) as f64
}

/// `{2, 4, 6, ...}` up to the horizon.
pub fn evens(horizon: usize) -> Result<IndexSet> {
    IndexSet::from_predicate(horizon, |i| i % 2 == 0)
}

fn decimal_digits(mut n: usize) -> u32 {
    let mut d = 1;
    while n >= 10 {
        n /= 10;
        d += 1;
    }
    d
}

/// Even positive integers with an even number of decimal digits, up to the
/// horizon. The counting ratio of this set oscillates between roughly 1/22
/// and 5/11 forever, so it has no asymptotic density.
pub fn even_digit_evens(horizon: usize) -> Result<IndexSet> {
    IndexSet::from_predicate(horizon, |i| i % 2 == 0 && decimal_digits(i) % 2 == 0)
}

/// `a_i = i` for even `i`, `1` otherwise. Unbounded, not statistically
/// convergent, yet `1` is admissible as a statistical limit at fuzziness
/// one half.
pub fn spike_sequence(n: usize) -> Result<SequencePrefix> {
    SequencePrefix::new(
        (1..=n)
            .map(|i| if i % 2 == 0 { i as f64 } else { 1.0 })
            .collect(),
    )
}

/// Decay profile for [`convergent_sequence`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecayProfile {
    /// `a + 1/i`
    Reciprocal,
    /// `a + ratio^(i-1)`
    Geometric { ratio: f64 },
}

/// An ordinarily convergent baseline `a_i = a + profile(i)`.
pub fn convergent_sequence(a: f64, n: usize, profile: DecayProfile) -> Result<SequencePrefix> {
    if let DecayProfile::Geometric { ratio } = profile {
        if !(ratio.abs() < 1.0) {
            return Err(Error::InvalidParam(format!(
                "geometric ratio must satisfy |ratio| < 1, got {ratio}"
            )));
        }
    }
    SequencePrefix::new(
        (1..=n)
            .map(|i| match profile {
                DecayProfile::Reciprocal => a + 1.0 / i as f64,
                DecayProfile::Geometric { ratio } => a + ratio.powi(i as i32 - 1),
            })
            .collect(),
    )
}

/// How exception values are placed by [`planted_sequence`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlantMode {
    Deterministic,
    Random,
}

/// A planted sequence and its exception set.
#[derive(Debug, Clone, PartialEq)]
pub struct Planted {
    pub values: SequencePrefix,
    pub exceptions: IndexSet,
}

/// Builds a bounded sequence that converges to `a` off an exception set of
/// exact prefix density `floor(n*r)/n`.
///
/// Off the exceptions the terms are `a` plus a perturbation no larger than
/// `1/i`, so the `r = 0` instance converges in the ordinary sense. On the
/// exceptions the terms sit inside `(-m, m)` at distance 1 from `a` when
/// the band allows it, otherwise as far from `a` as the band allows;
/// deterministic mode alternates sides, random mode draws them seeded.
pub fn planted_sequence(
    a: f64,
    r: f64,
    m: f64,
    n: usize,
    seed: u64,
    mode: PlantMode,
) -> Result<Planted> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::InvalidParam(format!(
            "exception density r must lie in [0, 1), got {r}"
        )));
    }
    if !(m > 0.0) || a.abs() >= m {
        return Err(Error::InvalidParam(format!(
            "need |a| < m with m positive, got a = {a}, m = {m}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParam("n must be positive".into()));
    }

    let edge = m * (1.0 - 1e-6);
    // Feasible exception offsets on each side, capped at the band edge.
    let up = if a + 1.0 <= edge { Some(1.0) } else { None };
    let down = if a - 1.0 >= -edge { Some(1.0) } else { None };
    let (up, down) = if up.is_none() && down.is_none() {
        // Neither side reaches distance 1: fall back to the farthest
        // feasible offset, shrunk a hair so exceedance tests at the exact
        // band edge stay strict.
        let up_room = edge - a;
        let down_room = edge + a;
        if up_room >= down_room {
            (Some(up_room), None)
        } else {
            (None, Some(down_room))
        }
    } else {
        (up, down)
    };

    let mut values = Vec::with_capacity(n);
    let mut exception_indices = Vec::new();
    let mut side_up = true;
    for i in 1..=n {
        let is_exception = (i as f64 * r).floor() > ((i - 1) as f64 * r).floor();
        if is_exception {
            exception_indices.push(i);
            let dist;
            let go_up;
            match (up, down, mode) {
                (Some(u), None, _) => {
                    go_up = true;
                    dist = u;
                }
                (None, Some(d), _) => {
                    go_up = false;
                    dist = d;
                }
                (Some(u), Some(d), PlantMode::Deterministic) => {
                    go_up = side_up;
                    side_up = !side_up;
                    dist = if go_up { u } else { d };
                }
                (Some(u), Some(d), PlantMode::Random) => {
                    go_up = unit_draw(seed, 2 * i as u64) < 0.5;
                    let room = if go_up { edge - a } else { edge + a };
                    let base = if go_up { u } else { d };
                    // anywhere between distance 1 and the band edge
                    dist = base + unit_draw(seed, 2 * i as u64 + 1) * (room - base);
                }
                (None, None, _) => unreachable!(),
            }
            values.push(if go_up { a + dist } else { a - dist });
        } else {
            let magnitude = 1.0 / i as f64;
            let pert = match mode {
                PlantMode::Deterministic => {
                    if i % 2 == 0 {
                        magnitude
                    } else {
                        -magnitude
                    }
                }
                PlantMode::Random => (2.0 * unit_draw(seed, 2 * i as u64) - 1.0) * magnitude,
            };
            // keep the convergent part inside the band too
            values.push((a + pert).clamp(-edge, edge));
        }
    }

    Ok(Planted {
        values: SequencePrefix::new(values)?,
        exceptions: IndexSet::new(exception_indices, n)?,
    })
}

/// Seeded index set where each index is a member with probability one half.
pub fn random_index_set(seed: u64, horizon: usize) -> Result<IndexSet> {
    IndexSet::from_predicate(horizon, |i| unit_draw(seed, i as u64) < 0.5)
}

/// Seeded bounded sequence: uniform draws over `[center - half_span,
/// center + half_span]`.
pub fn random_bounded_sequence(
    seed: u64,
    n: usize,
    center: f64,
    half_span: f64,
) -> Result<SequencePrefix> {
    SequencePrefix::new(
        (1..=n)
            .map(|i| center + (2.0 * unit_draw(seed, i as u64) - 1.0) * half_span)
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cesaro;

    #[test]
    fn evens_small_cases() {
        assert_eq!(evens(5).unwrap().indices(), &[2, 4]);
        assert!(evens(1).unwrap().is_empty());
        assert_eq!(evens(100_000).unwrap().len(), 50_000);
    }

    #[test]
    fn digit_set_membership() {
        let k = even_digit_evens(100).unwrap();
        assert!(!k.contains(8));
        assert!(k.contains(10));
        assert!(!k.contains(100));
        let members: Vec<usize> = k.iter().collect();
        let expected: Vec<usize> = (10..=98).step_by(2).collect();
        assert_eq!(members, expected);
        assert_eq!(members.len(), 45);

        let big = even_digit_evens(10_000).unwrap();
        assert_eq!(big.prefix_count(9_999).unwrap(), 4_545);
    }

    #[test]
    fn spike_terms() {
        let l = spike_sequence(6).unwrap();
        assert_eq!(l.values(), &[1.0, 2.0, 1.0, 4.0, 1.0, 6.0]);
        let l = spike_sequence(8).unwrap();
        assert_eq!(l.get(7), 1.0);
        let means = cesaro::partial_means(&l);
        assert_eq!(means[7], 3.0); // (1+2+1+4+1+6+1+8)/8
    }

    #[test]
    fn convergent_profiles() {
        let l = convergent_sequence(0.0, 8, DecayProfile::Reciprocal).unwrap();
        assert_eq!(l.get(4), 0.25);
        let g = convergent_sequence(2.0, 8, DecayProfile::Geometric { ratio: 0.5 }).unwrap();
        assert_eq!(g.get(3) - 2.0, 0.25);
        assert!(convergent_sequence(0.0, 8, DecayProfile::Geometric { ratio: 1.5 }).is_err());
    }

    #[test]
    fn planted_exception_placement_is_exact() {
        let p = planted_sequence(0.0, 0.25, 1.0, 12, 0, PlantMode::Deterministic).unwrap();
        assert_eq!(p.exceptions.indices(), &[4, 8, 12]);

        let p = planted_sequence(0.0, 0.5, 1.0, 10, 0, PlantMode::Deterministic).unwrap();
        let expected: Vec<usize> = (2..=10).step_by(2).collect();
        assert_eq!(p.exceptions.indices(), expected);

        let p = planted_sequence(0.5, 0.0, 2.0, 100, 0, PlantMode::Deterministic).unwrap();
        assert!(p.exceptions.is_empty());
        for i in 1..=100 {
            assert!((p.values.get(i) - 0.5).abs() <= 1.0 / i as f64 + 1e-12);
        }
    }

    #[test]
    fn planted_density_is_floor_nr_over_n() {
        for &(r, seed) in &[(0.1, 3u64), (0.25, 7), (0.5, 11)] {
            let p = planted_sequence(0.0, r, 1.0, 5_000, seed, PlantMode::Random).unwrap();
            for n in 1..=5_000usize {
                let expected = (n as f64 * r).floor() as usize;
                assert_eq!(p.exceptions.prefix_count(n).unwrap(), expected);
            }
        }
    }

    #[test]
    fn planted_values_stay_in_band_and_far_from_a() {
        for seed in 0..8u64 {
            for &(a, m) in &[(0.0, 1.0), (1.0, 2.0), (-2.0, 3.0)] {
                let p = planted_sequence(a, 0.25, m, 2_000, seed, PlantMode::Random).unwrap();
                let feasible = (m * (1.0 - 1e-6) - a.abs()).min(1.0);
                for i in 1..=2_000usize {
                    let v = p.values.get(i);
                    assert!(v.abs() < m);
                    if p.exceptions.contains(i) {
                        assert!((v - a).abs() >= feasible - 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn identical_parameters_reproduce_identical_bytes() {
        let a = planted_sequence(1.0, 0.3, 2.0, 1_000, 42, PlantMode::Random).unwrap();
        let b = planted_sequence(1.0, 0.3, 2.0, 1_000, 42, PlantMode::Random).unwrap();
        assert_eq!(a, b);
        let c = planted_sequence(1.0, 0.3, 2.0, 1_000, 43, PlantMode::Random).unwrap();
        assert_ne!(a, c);

        let r1 = random_bounded_sequence(9, 500, 0.0, 1.0).unwrap();
        let r2 = random_bounded_sequence(9, 500, 0.0, 1.0).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn parameter_violations_are_usage_errors() {
        assert!(planted_sequence(0.0, 1.0, 1.0, 10, 0, PlantMode::Deterministic).is_err());
        assert!(planted_sequence(0.0, -0.1, 1.0, 10, 0, PlantMode::Deterministic).is_err());
        assert!(planted_sequence(2.0, 0.5, 1.0, 10, 0, PlantMode::Deterministic).is_err());
        assert!(planted_sequence(0.0, 0.5, 0.0, 10, 0, PlantMode::Deterministic).is_err());
        assert!(planted_sequence(0.0, 0.5, 1.0, 0, 0, PlantMode::Deterministic).is_err());
    }
}
