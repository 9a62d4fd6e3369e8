use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::atoms::DiskAtomSet;
use crate::circlemeasure::{RatioParam, StageLefts, DEFAULT_MAX_GENERATION};
use crate::{Error, Result};

/// `n` arcs `Delta_{n,k} = [2 pi (k-1)/n, 2 pi k/n)` with atoms at
/// `r_n e^{(2k-1) pi i / n}`, `r_n = cos(pi/n)`. Every point of an arc lies
/// within `sin(pi/n) < pi/n` of its atom.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiscretizationGrid {
    pub n: usize,
    pub radius: f64,
}

impl DiscretizationGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("arc count must be >= 2, got {n}")));
        }
        Ok(DiscretizationGrid {
            n,
            radius: (PI / n as f64).cos(),
        })
    }

    /// Angle of the atom for arc `k` in `1..=n`.
    pub fn angle(&self, k: usize) -> f64 {
        (2 * k - 1) as f64 * PI / self.n as f64
    }

    pub fn atom(&self, k: usize) -> Complex64 {
        Complex64::from_polar(self.radius, self.angle(k))
    }
}

/// Circle measures with computable arc masses. Positions are in turns:
/// `s` in `[0, 1)` stands for `exp(2 pi i s)`.
#[derive(Clone, Debug)]
pub enum CircleMeasure {
    Lebesgue,
    CantorStage {
        ratio: RatioParam,
        stage: u32,
    },
    /// Point masses at the given positions.
    Atoms {
        positions: Vec<f64>,
        weights: Vec<f64>,
    },
}

impl CircleMeasure {
    /// Masses of the `n` arcs `[(k-1)/n, k/n)`.
    pub fn arc_masses(&self, n: usize) -> Result<Vec<f64>> {
        match self {
            CircleMeasure::Lebesgue => Ok(vec![1.0 / n as f64; n]),
            CircleMeasure::Atoms { positions, weights } => {
                if positions.len() != weights.len() {
                    return Err(Error::LengthMismatch {
                        expected: positions.len(),
                        got: weights.len(),
                    });
                }
                let mut out = vec![0.0; n];
                for (&s, &w) in positions.iter().zip(weights) {
                    let s = s.rem_euclid(1.0);
                    let k = ((s * n as f64).floor() as usize).min(n - 1);
                    out[k] += w;
                }
                Ok(out)
            }
            CircleMeasure::CantorStage { ratio, stage } => cantor_arc_masses(ratio, *stage, n),
        }
    }
}

fn cantor_arc_masses(ratio: &RatioParam, stage: u32, n: usize) -> Result<Vec<f64>> {
    let lefts = StageLefts::new(ratio, stage, DEFAULT_MAX_GENERATION)?;
    match &lefts {
        StageLefts::Exact {
            numerators,
            denominator,
            length_numerator,
        } => {
            // Work in units of 1 / (q^m n): interval i is
            // [n N_i, n N_i + n p^m], arc k is [k q^m, (k+1) q^m].
            let nn = n as u128;
            let d = *denominator;
            let len = length_numerator * nn;
            let mut overlap = vec![0u128; n];
            for &num in numerators {
                let a = num * nn;
                let b = a + len;
                let mut k = (a / d) as usize;
                while k < n && (k as u128) * d < b {
                    let lo = a.max(k as u128 * d);
                    let hi = b.min((k as u128 + 1) * d);
                    if hi > lo {
                        overlap[k] += hi - lo;
                    }
                    k += 1;
                }
            }
            let total = len * numerators.len() as u128;
            Ok(overlap.into_iter().map(|o| o as f64 / total as f64).collect())
        }
        StageLefts::Float { .. } => {
            let len = lefts.length();
            let mass = 1.0 / lefts.len() as f64;
            let mut out = vec![0.0; n];
            for i in 0..lefts.len() {
                let a = lefts.left(i);
                let b = a + len;
                let mut k = ((a * n as f64).floor() as usize).min(n - 1);
                while k < n && (k as f64) / (n as f64) < b {
                    let lo = a.max(k as f64 / n as f64);
                    let hi = b.min((k + 1) as f64 / n as f64);
                    if hi > lo {
                        out[k] += mass * (hi - lo) / len;
                    }
                    k += 1;
                }
            }
            Ok(out)
        }
    }
}

/// Replaces the mass of each arc by an atom at its grid point.
pub fn discretize_measure(measure: &CircleMeasure, n: usize) -> Result<DiskAtomSet> {
    let grid = DiscretizationGrid::new(n)?;
    let weights = measure.arc_masses(n)?;
    let atoms = (1..=n).map(|k| grid.atom(k)).collect();
    DiskAtomSet::new(atoms, weights)
}
