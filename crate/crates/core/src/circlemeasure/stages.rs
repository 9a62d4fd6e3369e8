use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::ratio::RatioParam;
use crate::{Error, Result};

/// Upper bound on materialized stages. A stage holds `2^n` intervals, so
/// this caps memory rather than arithmetic precision.
pub const DEFAULT_MAX_GENERATION: u32 = 24;

/// The stage `E_n(xi)`: `2^n` sorted closed intervals of length `xi^n`.
#[derive(Clone, Debug)]
pub struct IntervalSet {
    pub ratio: RatioParam,
    pub generation: u32,
    pub intervals: Vec<(BigRational, BigRational)>,
}

impl IntervalSet {
    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn total_length(&self) -> BigRational {
        self.intervals
            .iter()
            .fold(BigRational::zero(), |acc, (a, b)| acc + (b - a))
    }

    /// Whether every interval of `self` lies inside some interval of `outer`.
    pub fn is_nested_in(&self, outer: &IntervalSet) -> bool {
        let mut j = 0;
        for (a, b) in &self.intervals {
            while j < outer.intervals.len() && &outer.intervals[j].1 < a {
                j += 1;
            }
            match outer.intervals.get(j) {
                Some((oa, ob)) if oa <= a && b <= ob => {}
                _ => return false,
            }
        }
        true
    }

    pub fn to_f64(&self) -> Vec<(f64, f64)> {
        self.intervals
            .iter()
            .map(|(a, b)| (a.to_f64().unwrap_or(f64::NAN), b.to_f64().unwrap_or(f64::NAN)))
            .collect()
    }

    /// All interval endpoints in increasing order.
    pub fn endpoints_f64(&self) -> Vec<f64> {
        self.to_f64().into_iter().flat_map(|(a, b)| [a, b]).collect()
    }
}

pub fn cantor_stage(ratio: &RatioParam, n: u32) -> Result<IntervalSet> {
    cantor_stage_bounded(ratio, n, DEFAULT_MAX_GENERATION)
}

/// Builds `E_n(xi)` by repeatedly removing the concentric open middle part
/// of relative length `1 - 2 xi` from every interval.
pub fn cantor_stage_bounded(ratio: &RatioParam, n: u32, max_generation: u32) -> Result<IntervalSet> {
    if n > max_generation {
        return Err(Error::GenerationTooLarge {
            requested: n,
            max: max_generation,
        });
    }
    let xi = ratio.require_exact()?;
    let (p, q) = ratio.as_fraction().expect("exact ratio");
    let (p, q) = (BigInt::from(p), BigInt::from(q));

    // Left endpoints as integers over the common denominator q^s.
    let mut lefts = vec![BigInt::zero()];
    let mut p_pow = BigInt::one();
    for _ in 0..n {
        let shift = &p_pow * (&q - &p);
        lefts = lefts
            .into_iter()
            .flat_map(|l| {
                let base = l * &q;
                let right = &base + &shift;
                [base, right]
            })
            .collect();
        p_pow *= &p;
    }
    let denominator = num_traits::pow(q.clone(), n as usize);
    let intervals = lefts
        .into_iter()
        .map(|l| {
            let r = &l + &p_pow;
            (
                BigRational::new(l, denominator.clone()),
                BigRational::new(r, denominator.clone()),
            )
        })
        .collect();
    debug_assert_eq!(
        BigRational::new(p_pow.clone(), denominator.clone()),
        num_traits::pow(xi, n as usize)
    );
    Ok(IntervalSet {
        ratio: ratio.clone(),
        generation: n,
        intervals,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GapGeneration {
    pub generation: u32,
    #[serde(serialize_with = "crate::fmt::serialize_display")]
    pub length: BigRational,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GapSummary {
    pub ratio: RatioParam,
    pub entries: Vec<GapGeneration>,
}

impl GapSummary {
    pub fn total_length(&self) -> BigRational {
        self.entries.iter().fold(BigRational::zero(), |acc, g| {
            acc + &g.length * BigRational::from_integer(BigInt::from(g.multiplicity))
        })
    }
}

/// Lengths and multiplicities of the removed open intervals for generations
/// `0..=max_generation`: `2^k` gaps of length `xi^k (1 - 2 xi)`.
pub fn complementary_gaps(ratio: &RatioParam, max_generation: u32) -> Result<GapSummary> {
    if max_generation >= 64 {
        return Err(Error::GenerationTooLarge {
            requested: max_generation,
            max: 63,
        });
    }
    let xi = ratio.require_exact()?;
    let central = BigRational::one() - BigRational::from_integer(2.into()) * &xi;
    let mut scale = BigRational::one();
    let entries = (0..=max_generation)
        .map(|k| {
            let g = GapGeneration {
                generation: k,
                length: &scale * &central,
                multiplicity: 1u64 << k,
            };
            scale *= &xi;
            g
        })
        .collect();
    Ok(GapSummary {
        ratio: ratio.clone(),
        entries,
    })
}

/// Left endpoints of a stage in a form suited to phase evaluation. Rational
/// ratios with small enough denominators keep exact integer numerators so
/// that `n * t mod 1` is reduced without rounding.
#[derive(Clone, Debug)]
pub(crate) enum StageLefts {
    Exact {
        numerators: Vec<u128>,
        denominator: u128,
        length_numerator: u128,
    },
    Float {
        lefts: Vec<f64>,
        length: f64,
    },
}

impl StageLefts {
    pub fn new(ratio: &RatioParam, stage: u32, max_generation: u32) -> Result<Self> {
        if stage > max_generation {
            return Err(Error::GenerationTooLarge {
                requested: stage,
                max: max_generation,
            });
        }
        if let Some((p, q)) = ratio.as_fraction() {
            if let Some(exact) = Self::exact(p as u128, q as u128, stage) {
                return Ok(exact);
            }
        }
        let xi = ratio.value();
        let mut lefts = vec![0.0f64];
        let mut len = 1.0f64;
        for _ in 0..stage {
            let shift = len * (1.0 - xi);
            lefts = lefts.into_iter().flat_map(|l| [l, l + shift]).collect();
            len *= xi;
        }
        Ok(StageLefts::Float { lefts, length: len })
    }

    fn exact(p: u128, q: u128, stage: u32) -> Option<Self> {
        let denominator = q.checked_pow(stage)?;
        if denominator > 1u128 << 62 {
            return None;
        }
        let mut numerators = vec![0u128];
        let mut p_pow = 1u128;
        for _ in 0..stage {
            let shift = p_pow * (q - p);
            numerators = numerators.into_iter().flat_map(|l| [l * q, l * q + shift]).collect();
            p_pow *= p;
        }
        Some(StageLefts::Exact {
            numerators,
            denominator,
            length_numerator: p_pow,
        })
    }

    pub fn len(&self) -> usize {
        match self {
            StageLefts::Exact { numerators, .. } => numerators.len(),
            StageLefts::Float { lefts, .. } => lefts.len(),
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            StageLefts::Exact {
                denominator,
                length_numerator,
                ..
            } => *length_numerator as f64 / *denominator as f64,
            StageLefts::Float { length, .. } => *length,
        }
    }

    pub fn left(&self, i: usize) -> f64 {
        match self {
            StageLefts::Exact {
                numerators,
                denominator,
                ..
            } => numerators[i] as f64 / *denominator as f64,
            StageLefts::Float { lefts, .. } => lefts[i],
        }
    }

    /// `n * left_i mod 1`, in `[0, 1)`.
    pub fn phase_turns(&self, n: i64, i: usize) -> f64 {
        match self {
            StageLefts::Exact {
                numerators,
                denominator,
                ..
            } => {
                let d = *denominator;
                let m = (n.unsigned_abs() as u128) % d;
                let r = (m * numerators[i]) % d;
                let r = if n < 0 && r != 0 { d - r } else { r };
                r as f64 / d as f64
            }
            StageLefts::Float { lefts, .. } => {
                let x = (n as f64 * lefts[i]).rem_euclid(1.0);
                if x >= 1.0 {
                    0.0
                } else {
                    x
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn triadic_first_step() {
        let s = cantor_stage(&RatioParam::rational(1, 3).unwrap(), 1).unwrap();
        assert_eq!(s.intervals, vec![(r(0, 1), r(1, 3)), (r(2, 3), r(1, 1))]);
    }

    #[test]
    fn generation_zero_is_unit_interval() {
        let s = cantor_stage(&RatioParam::rational(2, 7).unwrap(), 0).unwrap();
        assert_eq!(s.intervals, vec![(r(0, 1), r(1, 1))]);
    }

    #[test]
    fn quarter_second_step() {
        let s = cantor_stage(&RatioParam::rational(1, 4).unwrap(), 2).unwrap();
        assert_eq!(
            s.intervals,
            vec![
                (r(0, 1), r(1, 16)),
                (r(3, 16), r(1, 4)),
                (r(3, 4), r(13, 16)),
                (r(15, 16), r(1, 1))
            ]
        );
    }

    #[test]
    fn invariants_through_generation_twelve() {
        for ratio in [
            RatioParam::rational(1, 3).unwrap(),
            RatioParam::rational(2, 13).unwrap(),
        ] {
            let xi = ratio.exact().unwrap();
            let mut prev = cantor_stage(&ratio, 0).unwrap();
            for n in 1..=12u32 {
                let s = cantor_stage(&ratio, n).unwrap();
                assert_eq!(s.len(), 1usize << n);
                let len = num_traits::pow(xi.clone(), n as usize);
                assert!(s.intervals.iter().all(|(a, b)| b - a == len));
                assert_eq!(
                    s.total_length(),
                    num_traits::pow(BigRational::from_integer(2.into()) * &xi, n as usize)
                );
                assert!(s.intervals.windows(2).all(|w| w[0].1 < w[1].0));
                assert!(s.is_nested_in(&prev));
                prev = s;
            }
        }
    }

    #[test]
    fn limits_and_irrational() {
        let xi = RatioParam::rational(1, 3).unwrap();
        assert!(matches!(
            cantor_stage(&xi, 25),
            Err(Error::GenerationTooLarge { requested: 25, max: 24 })
        ));
        assert!(cantor_stage_bounded(&xi, 5, 4).is_err());
        let irr = RatioParam::untagged(0.3).unwrap();
        assert!(matches!(cantor_stage(&irr, 2), Err(Error::NotRational(_))));
    }

    #[test]
    fn gaps() {
        let g = complementary_gaps(&RatioParam::rational(1, 3).unwrap(), 0).unwrap();
        assert_eq!(g.entries.len(), 1);
        assert_eq!(g.entries[0].length, r(1, 3));

        let g = complementary_gaps(&RatioParam::rational(1, 4).unwrap(), 1).unwrap();
        assert_eq!(g.entries[0].length, r(1, 2));
        assert_eq!(g.entries[0].multiplicity, 1);
        assert_eq!(g.entries[1].length, r(1, 8));
        assert_eq!(g.entries[1].multiplicity, 2);

        let g = complementary_gaps(&RatioParam::rational(1, 3).unwrap(), 2).unwrap();
        assert_eq!(g.total_length(), r(19, 27));
    }

    #[test]
    fn gap_total_matches_stage_complement() {
        let xi = RatioParam::rational(3, 10).unwrap();
        for k in 0..8 {
            let g = complementary_gaps(&xi, k).unwrap();
            let s = cantor_stage(&xi, k + 1).unwrap();
            assert_eq!(g.total_length() + s.total_length(), BigRational::one());
        }
    }

    #[test]
    fn exact_lefts_match_stage() {
        let xi = RatioParam::rational(2, 5).unwrap();
        let stage = cantor_stage(&xi, 6).unwrap();
        let lefts = StageLefts::new(&xi, 6, 24).unwrap();
        assert!(matches!(lefts, StageLefts::Exact { .. }));
        for (i, (a, _)) in stage.to_f64().iter().enumerate() {
            assert_eq!(lefts.left(i), *a);
        }
        // Second left endpoint is 3/5: 7 * 3/5 = 21/5 -> 1/5 turn.
        let one = StageLefts::new(&xi, 1, 24).unwrap();
        assert!((one.phase_turns(7, 1) - 0.2).abs() < 1e-15);
        assert!((one.phase_turns(-7, 1) - 0.8).abs() < 1e-15);
    }
}
