use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::support::{sup_over_s0, DiskAtomSet, SearchConfig};
use crate::wiener::CoefficientSeries;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DualityConfig {
    pub trials: usize,
    pub convex_trials: usize,
    pub seed: u64,
    pub max_degree: usize,
    pub max_nonzero: usize,
    pub max_atoms: usize,
    pub search: SearchConfig,
}

impl Default for DualityConfig {
    fn default() -> Self {
        DualityConfig {
            trials: 100,
            convex_trials: 500,
            seed: 7,
            max_degree: 64,
            max_nonzero: 8,
            max_atoms: 16,
            search: SearchConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualityTrial {
    pub trial: usize,
    pub degree: usize,
    pub nonzero: usize,
    pub sup_lower: f64,
    pub sup_upper: f64,
    /// Grid resolution of the search, see [`SupOverS0::resolution`](crate::support::SupOverS0).
    pub epsilon: f64,
    pub best: f64,
    pub within_bracket: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvexTrial {
    pub trial: usize,
    pub series: usize,
    pub atoms: usize,
    pub pairing_abs: f64,
    pub sup_upper: f64,
    pub violation: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualityReport {
    pub config: DualityConfig,
    pub trials: Vec<DualityTrial>,
    pub convex: Vec<ConvexTrial>,
    pub bracket_failures: usize,
    pub convex_violations: usize,
    pub violations: usize,
}

fn random_series(rng: &mut ChaCha8Rng, max_degree: usize, max_nonzero: usize) -> CoefficientSeries {
    let degree = rng.random_range(1..=max_degree);
    let nonzero = rng.random_range(1..=max_nonzero);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); degree + 1];
    coeffs[degree] = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    for _ in 1..nonzero {
        let j = rng.random_range(0..=degree);
        coeffs[j] = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    }
    CoefficientSeries::new(coeffs)
}

fn random_atoms(rng: &mut ChaCha8Rng, max_atoms: usize) -> Result<DiskAtomSet> {
    let n = rng.random_range(1..=max_atoms);
    let atoms: Vec<Complex64> = (0..n)
        .map(|_| {
            let r: f64 = rng.random::<f64>().sqrt();
            let t: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(r.min(1.0 - 1e-15), t)
        })
        .collect();
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(1e-3..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    let drift: f64 = 1.0 - weights.iter().sum::<f64>();
    weights[0] += drift;
    DiskAtomSet::new(atoms, weights)
}

/// Random sparse series: the single-atom search must land in the sup-norm
/// bracket widened by its grid resolution, and random points of `S0` must
/// never pair above the upper bound.
pub fn duality_trials(config: &DualityConfig) -> Result<DualityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let series: Vec<CoefficientSeries> = (0..config.trials)
        .map(|_| random_series(&mut rng, config.max_degree, config.max_nonzero))
        .collect();
    let mut trials = Vec::with_capacity(series.len());
    let mut uppers = Vec::with_capacity(series.len());
    for (i, a) in series.iter().enumerate() {
        let bracket = a.sup_norm_estimate(config.search.angles)?;
        let s = sup_over_s0(a, config.search)?;
        let within = s.best >= bracket.lower - s.resolution && s.best <= bracket.upper;
        uppers.push(bracket.upper);
        trials.push(DualityTrial {
            trial: i,
            degree: a.degree(),
            nonzero: a.coefficients().iter().filter(|c| c.norm() > 0.0).count(),
            sup_lower: bracket.lower,
            sup_upper: bracket.upper,
            epsilon: s.resolution,
            best: s.best,
            within_bracket: within,
        });
    }
    let mut convex = Vec::with_capacity(config.convex_trials);
    if !series.is_empty() {
        for t in 0..config.convex_trials {
            let k = rng.random_range(0..series.len());
            let x = random_atoms(&mut rng, config.max_atoms)?;
            let a = &series[k];
            let p = a.pairing(&x.moments(a.degree()).entries)?.norm();
            convex.push(ConvexTrial {
                trial: t,
                series: k,
                atoms: x.len(),
                pairing_abs: p,
                sup_upper: uppers[k],
                violation: p > uppers[k],
            });
        }
    }
    let bracket_failures = trials.iter().filter(|t| !t.within_bracket).count();
    let convex_violations = convex.iter().filter(|t| t.violation).count();
    Ok(DualityReport {
        config: *config,
        trials,
        convex,
        bracket_failures,
        convex_violations,
        violations: bracket_failures + convex_violations,
    })
}
