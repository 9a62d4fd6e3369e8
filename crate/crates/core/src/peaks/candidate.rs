use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::metric::admissible_parameters;
use super::weight::herglotz_weight_moments;
use crate::circlemeasure::{RatioParam, StageLefts, DEFAULT_MAX_GENERATION};
use crate::fmt::{serialize_complex, serialize_display};
use crate::wiener::{mobius_postcompose, reciprocal_one_plus, CoefficientSeries, DEFAULT_MAX_DEGREE};
use crate::{Error, Result};

/// Abel damping `rho = 1 - DEFAULT_DAMPING / D` applied to the Herglotz
/// coefficients before division.
pub const DEFAULT_DAMPING: f64 = 2.0;

const RING_RADII: [f64; 5] = [0.0, 0.5, 0.9, 0.99, 1.0];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeakParams {
    pub alpha: f64,
    #[serde(serialize_with = "serialize_display")]
    pub ratio: RatioParam,
    /// Gaps of generations `0..generations` carry the weight.
    pub generations: u32,
    pub degree: usize,
    pub damping: f64,
    /// Boundary grid for the sup-norm bracket.
    pub sup_grid: usize,
    /// Grid for the `Re F` rings.
    pub ring_grid: usize,
    pub sup_slack: f64,
    pub deficiency_cap: f64,
}

impl PeakParams {
    pub fn new(alpha: f64, ratio: RatioParam, generations: u32, degree: usize) -> Self {
        PeakParams {
            alpha,
            ratio,
            generations,
            degree,
            damping: DEFAULT_DAMPING,
            sup_grid: 1 << 22,
            ring_grid: 1 << 16,
            sup_slack: 1e-6,
            deficiency_cap: 0.05,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let adm = admissible_parameters(self.alpha, self.ratio.value());
        if let Some(reason) = adm.reason {
            return Err(Error::InvalidParameter(reason));
        }
        if self.generations > DEFAULT_MAX_GENERATION - 1 {
            return Err(Error::GenerationTooLarge {
                requested: self.generations,
                max: DEFAULT_MAX_GENERATION - 1,
            });
        }
        if self.degree == 0 || 2 * self.degree > DEFAULT_MAX_DEGREE {
            return Err(Error::DegreeTooLarge {
                requested: self.degree,
                max: DEFAULT_MAX_DEGREE / 2,
            });
        }
        if !(self.damping >= 0.0 && self.damping < self.degree as f64) {
            return Err(Error::InvalidParameter(format!(
                "damping must lie in [0, degree), got {}",
                self.damping
            )));
        }
        if self.sup_grid < 8 || self.ring_grid < 8 {
            return Err(Error::InvalidParameter("grids must have at least 8 points".into()));
        }
        if !(self.sup_slack >= 0.0 && self.deficiency_cap > 0.0) {
            return Err(Error::InvalidParameter("slack and caps must be nonnegative".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightSummary {
    pub c0: f64,
    pub total_mass: f64,
    pub central_gap_mass: f64,
    pub tail_ratio: f64,
    pub mass_identity_gap: f64,
    pub nodes: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeakDiagnostics {
    pub sup_lower: f64,
    pub sup_upper: f64,
    pub sup_grid: usize,
    pub sup_argmax_angle: f64,
    /// Minimum of `Re F` over the rings `ring_radii` (the truncated, damped `F`).
    pub min_re_f: f64,
    pub ring_radii: Vec<f64>,
    pub ring_grid: usize,
    /// `|G(0)|`.
    pub origin_abs: f64,
    /// `max |1 - G(r e(theta))|` over the endpoints `theta` of the last stage.
    pub peak_deficiency: f64,
    pub deficiency_radius: f64,
    pub deficiency_points: usize,
    /// `l1` mass of the coefficients of `G` between degree `D` and `2D`.
    pub truncation_residual: f64,
    pub l1_norm: f64,
    pub sup_slack: f64,
    pub deficiency_cap: f64,
    /// `(1 + |g0|) / (1 - |g0|)`, the factor by which the Blaschke factor can
    /// stretch distances to 1; present after `vanish_at_origin`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lipschitz_factor: Option<f64>,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeakCandidate {
    pub series: CoefficientSeries,
    #[serde(serialize_with = "serialize_complex")]
    pub beta: Complex64,
    pub vanishes_at_origin: bool,
    pub params: PeakParams,
    pub weight: WeightSummary,
    pub diagnostics: PeakDiagnostics,
    /// `G` through degree `2D`, kept for the residual and for composition.
    #[serde(skip)]
    pub extended: CoefficientSeries,
}

fn ring_minimum(f: &CoefficientSeries, grid: usize) -> f64 {
    RING_RADII
        .par_iter()
        .map(|&r| {
            f.values_on_circle(grid, r)
                .iter()
                .map(|v| v.re)
                .fold(f64::INFINITY, f64::min)
        })
        .collect::<Vec<f64>>()
        .into_iter()
        .fold(f64::INFINITY, f64::min)
}

fn stage_endpoints(params: &PeakParams) -> Result<Vec<f64>> {
    let lefts = StageLefts::new(&params.ratio, params.generations, DEFAULT_MAX_GENERATION)?;
    let len = lefts.length();
    Ok((0..lefts.len())
        .flat_map(|i| [lefts.left(i), lefts.left(i) + len])
        .collect())
}

fn diagnose(
    series: &CoefficientSeries,
    params: &PeakParams,
    min_re_f: f64,
    deficiency_cap: f64,
    lipschitz_factor: Option<f64>,
) -> Result<PeakDiagnostics> {
    let bracket = series.sup_norm_estimate(params.sup_grid)?;
    let radius = 1.0 - 1.0 / params.degree as f64;
    let endpoints = stage_endpoints(params)?;
    let deficiency = endpoints
        .par_iter()
        .map(|&t| (Complex64::new(1.0, 0.0) - series.eval(Complex64::from_polar(radius, TAU * t))).norm())
        .collect::<Vec<f64>>()
        .into_iter()
        .fold(0.0, f64::max);
    let mut violations = Vec::new();
    if bracket.upper > 1.0 + params.sup_slack {
        violations.push(format!(
            "sup-norm upper bound {} exceeds 1 + {}",
            bracket.upper, params.sup_slack
        ));
    }
    if !(deficiency <= deficiency_cap) {
        violations.push(format!("peak deficiency {deficiency} exceeds cap {deficiency_cap}"));
    }
    if min_re_f < -params.sup_slack {
        violations.push(format!("min Re F {min_re_f} below -{}", params.sup_slack));
    }
    Ok(PeakDiagnostics {
        sup_lower: bracket.lower,
        sup_upper: bracket.upper,
        sup_grid: bracket.grid,
        sup_argmax_angle: TAU * bracket.argmax as f64 / bracket.grid as f64,
        min_re_f,
        ring_radii: RING_RADII.to_vec(),
        ring_grid: params.ring_grid,
        origin_abs: series.coefficient(0).norm(),
        peak_deficiency: deficiency,
        deficiency_radius: radius,
        deficiency_points: endpoints.len(),
        truncation_residual: series.truncation_residual().unwrap_or(0.0),
        l1_norm: series.wiener_norm(),
        sup_slack: params.sup_slack,
        deficiency_cap,
        lipschitz_factor,
        violations,
    })
}

fn finish(candidate: PeakCandidate) -> Result<PeakCandidate> {
    if candidate.diagnostics.violations.is_empty() {
        Ok(candidate)
    } else {
        Err(Error::CapExceeded {
            violations: candidate.diagnostics.violations.clone(),
            candidate: Box::new(candidate),
        })
    }
}

/// `G = F / (1 + F) = 1 - 1 / (1 + F)` with
/// `F(z) = c_0 + 2 sum_{k=1}^D c_k rho^k z^k`, computed through degree `2D`
/// and truncated to `D`. A candidate breaking a cap comes back inside
/// [`Error::CapExceeded`].
pub fn build_peak_candidate(params: &PeakParams) -> Result<PeakCandidate> {
    params.validate()?;
    if params.generations == 0 {
        return Err(Error::InvalidParameter(
            "at least one generation of gaps is needed".into(),
        ));
    }
    let weight = herglotz_weight_moments(params)?;
    let d = params.degree;
    let rho = 1.0 - params.damping / d as f64;
    let mut scale = 1.0;
    let f: Vec<Complex64> = weight
        .moments
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let v = if k == 0 {
                Complex64::new(c.re, 0.0)
            } else {
                2.0 * c * scale
            };
            scale *= rho;
            v
        })
        .collect();
    let f = CoefficientSeries::new(f);
    let h = reciprocal_one_plus(&f, 2 * d)?;
    let mut g: Vec<Complex64> = h.coefficients().iter().map(|c| -c).collect();
    g[0] += 1.0;
    let extended = CoefficientSeries::new(g);
    let series = extended.truncate(d);
    let min_re_f = ring_minimum(&f, params.ring_grid);
    let diagnostics = diagnose(&series, params, min_re_f, params.deficiency_cap, None)?;
    finish(PeakCandidate {
        series,
        beta: Complex64::new(1.0, 0.0),
        vanishes_at_origin: false,
        params: params.clone(),
        weight: WeightSummary {
            c0: weight.c0(),
            total_mass: weight.total_mass,
            central_gap_mass: weight.central_gap_mass,
            tail_ratio: weight.tail_ratio,
            mass_identity_gap: weight.mass_identity_gap(),
            nodes: weight.nodes,
        },
        diagnostics,
        extended,
    })
}

/// `(f / beta + 1) / 2`: a weak peak function with value `beta` on `E`
/// becomes a peak function with value 1 there.
pub fn weak_to_peak(f: &CoefficientSeries, beta: Complex64) -> Result<CoefficientSeries> {
    if beta == Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidParameter("beta = 0: trivial functional".into()));
    }
    let lower = f
        .sup_norm_estimate(4096.max(8 * (f.degree() + 1).next_power_of_two()))?
        .lower;
    if lower > beta.norm() * (1.0 + 1e-9) {
        return Err(Error::InvalidParameter(format!(
            "sup |f| >= {lower} exceeds |beta| = {}",
            beta.norm()
        )));
    }
    let mut out: Vec<Complex64> = f.coefficients().iter().map(|c| c / beta * 0.5).collect();
    out[0] += 0.5;
    Ok(CoefficientSeries::new(out))
}

/// Post-composes with the Blaschke factor that sends `G(0)` to 0 and fixes 1.
/// The deficiency cap grows by the factor's Lipschitz constant near the
/// boundary; the other caps carry over.
pub fn vanish_at_origin(candidate: &PeakCandidate) -> Result<PeakCandidate> {
    let params = &candidate.params;
    let g0 = candidate.series.coefficient(0);
    let extended = mobius_postcompose(&candidate.extended, 2 * params.degree)?;
    let series = extended.truncate(params.degree);
    let lipschitz = (1.0 + g0.norm()) / (1.0 - g0.norm());
    let diagnostics = diagnose(
        &series,
        params,
        candidate.diagnostics.min_re_f,
        candidate.diagnostics.deficiency_cap * lipschitz,
        Some(lipschitz),
    )?;
    finish(PeakCandidate {
        series,
        beta: candidate.beta,
        vanishes_at_origin: true,
        params: params.clone(),
        weight: candidate.weight.clone(),
        diagnostics,
        extended,
    })
}
