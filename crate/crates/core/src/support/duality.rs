use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::atoms::DiskAtomSet;
use crate::wiener::CoefficientSeries;
use crate::{Error, Result};

/// Angular grid size and radial ladder `r_k = 1 - 2^-k`, `k = 0..=max_k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SearchConfig {
    pub angles: usize,
    pub max_k: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            angles: 4096,
            max_k: 20,
        }
    }
}

pub fn radial_ladder(max_k: u32) -> Vec<f64> {
    (0..=max_k).map(|k| 1.0 - 0.5f64.powi(k as i32)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SupOverS0 {
    pub best: f64,
    pub witness: DiskAtomSet,
    pub radius: f64,
    /// Index on the angular grid; the angle is `2 pi angle_index / angles`.
    pub angle_index: usize,
    /// `(2 pi / M + 1 - r_max) sum j |a_j|`: how far `best` can sit below
    /// `sup |f_a|` on the closed disk.
    pub resolution: f64,
}

/// `sup_{x in S0} |<a, x>|` searched over single atoms `phi_lambda`, which
/// suffice because `x -> |<a, x>|` is convex and the `phi_lambda` are the
/// extreme points.
pub fn sup_over_s0(a: &CoefficientSeries, config: SearchConfig) -> Result<SupOverS0> {
    if a.coefficients().iter().all(|c| *c == Complex64::new(0.0, 0.0)) {
        return Err(Error::InvalidParameter("series is identically zero".into()));
    }
    if config.angles < 8 || config.max_k > 52 {
        return Err(Error::InvalidParameter(format!(
            "search grid needs angles >= 8 and max_k <= 52, got {} and {}",
            config.angles, config.max_k
        )));
    }
    let radii = radial_ladder(config.max_k);
    let per_radius: Vec<(f64, usize)> = radii
        .par_iter()
        .map(|&r| {
            let vals = a.values_on_circle(config.angles, r);
            let mut best = (f64::NEG_INFINITY, 0usize);
            for (i, v) in vals.iter().enumerate() {
                if v.norm() > best.0 {
                    best = (v.norm(), i);
                }
            }
            best
        })
        .collect();
    // Ties go to the smallest angle, then the smallest radius.
    let mut winner = (f64::NEG_INFINITY, usize::MAX, usize::MAX);
    for (k, &(v, i)) in per_radius.iter().enumerate() {
        if v > winner.0 || (v == winner.0 && i < winner.1) {
            winner = (v, i, k);
        }
    }
    let (best, angle_index, k) = winner;
    let radius = radii[k];
    let lambda = Complex64::from_polar(radius, TAU * angle_index as f64 / config.angles as f64);
    let resolution = (TAU / config.angles as f64 + (1.0 - radii[radii.len() - 1])) * a.derivative_weight();
    Ok(SupOverS0 {
        best,
        witness: DiskAtomSet::dirac(lambda)?,
        radius,
        angle_index,
        resolution,
    })
}
