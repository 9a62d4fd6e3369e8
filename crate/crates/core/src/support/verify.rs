use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::atoms::MomentVector;
use crate::circlemeasure::{coefficient_table, CoefficientMethod, RatioParam, StageLefts, DEFAULT_MAX_GENERATION};
use crate::fmt::serialize_complex;
use crate::quadrature::GaussLegendre;
use crate::wiener::CoefficientSeries;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VerifyConfig {
    /// Boundary grid for the sup-norm bracket.
    pub grid: usize,
    /// Verdict slack: supported when `|p| >= (1 - tau) L`.
    pub tau: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            grid: 1 << 22,
            tau: 0.2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportVerdict {
    Supported,
    NotSupported,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupportDiagnostics {
    pub tau: f64,
    pub grid: usize,
    /// Boundary angle (radians) where the grid maximum of `|f_b|` sits.
    pub argmax_angle: f64,
    pub pairing_abs: f64,
    /// `sum |b_j| err_j` from the error bounds of `y`.
    pub moment_error: f64,
    /// `|p| - moment_error`.
    pub pairing_lower_bound: f64,
    pub l1_norm: f64,
    pub truncation_residual: Option<f64>,
    pub moment_source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupportReport {
    #[serde(serialize_with = "serialize_complex")]
    pub pairing: Complex64,
    pub sup_lower: f64,
    pub sup_upper: f64,
    /// `|p| / sup_upper`.
    pub ratio: f64,
    pub verdict: SupportVerdict,
    /// Set when `b` is constant, i.e. a trivial functional.
    pub trivial_flag: bool,
    pub degree: usize,
    pub diagnostics: SupportDiagnostics,
}

/// Compares `|<b, y>|` with the sup-norm bracket of `f_b`.
pub fn verify_support_pair(b: &CoefficientSeries, y: &MomentVector, config: VerifyConfig) -> Result<SupportReport> {
    if !(0.0..1.0).contains(&config.tau) {
        return Err(Error::InvalidParameter(format!(
            "tau must lie in [0, 1), got {}",
            config.tau
        )));
    }
    let p = b.pairing(&y.entries)?;
    let bracket = b.sup_norm_estimate(config.grid)?;
    let moment_error: f64 = b
        .coefficients()
        .iter()
        .enumerate()
        .map(|(j, c)| c.norm() * y.error_bound(j))
        .sum();
    let ratio = if bracket.upper > 0.0 {
        p.norm() / bracket.upper
    } else {
        0.0
    };
    let verdict = if p.norm() >= (1.0 - config.tau) * bracket.lower && bracket.lower > 0.0 {
        SupportVerdict::Supported
    } else {
        SupportVerdict::NotSupported
    };
    Ok(SupportReport {
        pairing: p,
        sup_lower: bracket.lower,
        sup_upper: bracket.upper,
        ratio,
        verdict,
        trivial_flag: b.is_trivial(),
        degree: b.degree(),
        diagnostics: SupportDiagnostics {
            tau: config.tau,
            grid: config.grid,
            argmax_angle: TAU * bracket.argmax as f64 / config.grid as f64,
            pairing_abs: p.norm(),
            moment_error,
            pairing_lower_bound: p.norm() - moment_error,
            l1_norm: b.wiener_norm(),
            truncation_residual: b.truncation_residual(),
            moment_source: y.source.clone(),
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Crosscheck {
    /// `sum_j b_j sigma_hat(-j)` from the product formula.
    #[serde(serialize_with = "serialize_complex")]
    pub series: Complex64,
    /// `int f_b d sigma_m` by Gauss-Legendre quadrature on each stage interval.
    #[serde(serialize_with = "serialize_complex")]
    pub integral: Complex64,
    pub difference: f64,
    /// `||b||_1 2 pi D xi^m` plus the coefficient tolerances and a rounding
    /// allowance of `1e-10 ||b||_1`.
    pub bound: f64,
}

const CROSSCHECK_TOL: f64 = 1e-12;
const GAUSS_NODES: usize = 8;

/// Two independent evaluations of `<b, y>` for the Cantor moments `y`.
pub fn pairing_crosscheck(b: &CoefficientSeries, ratio: &RatioParam, stage: u32, degree: usize) -> Result<Crosscheck> {
    if b.degree() > degree {
        return Err(Error::InvalidParameter(format!(
            "series degree {} exceeds the requested degree {degree}",
            b.degree()
        )));
    }
    let table = coefficient_table(
        ratio,
        0..=degree as i64,
        CoefficientMethod::Product { tol: CROSSCHECK_TOL },
    )?;
    let series: Complex64 = b
        .coefficients()
        .iter()
        .enumerate()
        .map(|(j, c)| c * table.values[j].conj())
        .sum();
    let tails: f64 = b
        .coefficients()
        .iter()
        .enumerate()
        .map(|(j, c)| c.norm() * table.tail_bounds[j])
        .sum();

    let lefts = StageLefts::new(ratio, stage, DEFAULT_MAX_GENERATION)?;
    let len = lefts.length();
    // Panels short enough that f_b turns by at most about one radian.
    let panels = ((degree as f64 * len * TAU).ceil() as usize).max(1);
    let rule = GaussLegendre::new(GAUSS_NODES);
    let partial: Vec<Complex64> = (0..lefts.len())
        .into_par_iter()
        .map(|i| {
            let a = lefts.left(i);
            let mut acc = Complex64::new(0.0, 0.0);
            let h = len / panels as f64;
            for p in 0..panels {
                // Offsets are taken from the panel start so the weights sum
                // to h without cancellation against the left endpoint.
                let start = a + h * p as f64;
                for (u, w) in rule.on(0.0, h) {
                    acc += b.eval(Complex64::from_polar(1.0, TAU * (start + u))) * w;
                }
            }
            acc / len
        })
        .collect();
    let integral = partial.iter().sum::<Complex64>() / lefts.len() as f64;

    let l1 = b.wiener_norm();
    let bound = l1 * 2.0 * PI * degree as f64 * ratio.value().powi(stage as i32) + tails + 1e-10 * l1;
    Ok(Crosscheck {
        series,
        integral,
        difference: (series - integral).norm(),
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::support::{moment_vector, MeasureSpec};

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn lebesgue_is_not_supported_by_z() {
        let b = CoefficientSeries::monomial(1);
        let y = moment_vector(&MeasureSpec::Lebesgue, 1).unwrap();
        let r = verify_support_pair(&b, &y, VerifyConfig { grid: 1024, tau: 0.2 }).unwrap();
        assert_eq!(r.pairing, Complex64::new(0.0, 0.0));
        assert_eq!(r.ratio, 0.0);
        assert_eq!(r.verdict, SupportVerdict::NotSupported);
        assert!(!r.trivial_flag);
    }

    #[test]
    fn constant_functional_is_flagged() {
        let b = CoefficientSeries::constant(one());
        let ratio = RatioParam::rational(1, 3).unwrap();
        let y = moment_vector(&MeasureSpec::Cantor { ratio, tol: 1e-12 }, 0).unwrap();
        let r = verify_support_pair(&b, &y, VerifyConfig { grid: 1024, tau: 0.2 }).unwrap();
        assert_eq!(r.pairing, one());
        assert_eq!(r.sup_lower, 1.0);
        assert!(r.trivial_flag);
        assert_eq!(r.verdict, SupportVerdict::Supported);
    }

    #[test]
    fn short_moment_vector_rejected() {
        let b = CoefficientSeries::monomial(3);
        let y = moment_vector(&MeasureSpec::Lebesgue, 1).unwrap();
        assert!(verify_support_pair(&b, &y, VerifyConfig::default()).is_err());
    }

    #[test]
    fn crosscheck_examples() {
        let third = RatioParam::rational(1, 3).unwrap();
        let c = pairing_crosscheck(&CoefficientSeries::constant(one()), &third, 12, 0).unwrap();
        assert!(
            (c.series - one()).norm() < 1e-15 && (c.integral - one()).norm() < 1e-12,
            "{c:?}"
        );

        let c = pairing_crosscheck(&CoefficientSeries::monomial(1), &third, 12, 1).unwrap();
        assert!(c.difference <= c.bound);
        let sigma1 = crate::fs_coeff_product(&third, -1, 1e-12).unwrap().value;
        assert!((c.series - sigma1).norm() < 1e-15);
    }
}
