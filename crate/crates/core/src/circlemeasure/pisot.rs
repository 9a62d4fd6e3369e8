use num_complex::Complex64;
use serde::Serialize;

use crate::{Error, Result};

pub const DEFAULT_PISOT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PisotVerdict {
    Pisot,
    NotPisot,
    /// Some root modulus lies within the tolerance of 1; the caller must
    /// refine precision. Salem numbers land here.
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct PisotReport {
    pub verdict: PisotVerdict,
    /// All complex roots, sorted by decreasing modulus.
    #[serde(serialize_with = "crate::fmt::serialize_complex_vec")]
    pub roots: Vec<Complex64>,
    /// The real root above 1 when it is the only root outside the unit disk.
    pub dominant_root: Option<f64>,
    /// Moduli of every root other than the dominant one.
    pub conjugate_moduli: Vec<f64>,
    pub tol: f64,
}

/// Strips leading zeros and checks monicity.
pub(crate) fn normalize_monic(coeffs: &[i64]) -> Result<Vec<i64>> {
    let first = coeffs.iter().position(|&c| c != 0).ok_or(Error::ZeroPolynomial)?;
    let poly = coeffs[first..].to_vec();
    if poly[0] != 1 {
        return Err(Error::NotMonic(poly[0]));
    }
    if poly.len() < 2 {
        return Err(Error::InvalidParameter("polynomial must have degree >= 1".into()));
    }
    Ok(poly)
}

/// Decides whether the real root above 1 of a monic integer polynomial is a
/// Pisot number, i.e. whether every other root lies strictly inside the unit
/// disk. The polynomial is assumed irreducible.
pub fn pisot_check(coeffs: &[i64], tol: f64) -> Result<PisotReport> {
    if !(tol >= 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be >= 0, got {tol}")));
    }
    let poly = normalize_monic(coeffs)?;

    // x + c has the single root -c; decide exactly.
    if poly.len() == 2 {
        let root = -(poly[1] as f64);
        let verdict = if -poly[1] >= 2 {
            PisotVerdict::Pisot
        } else {
            PisotVerdict::NotPisot
        };
        return Ok(PisotReport {
            verdict,
            roots: vec![Complex64::new(root, 0.0)],
            dominant_root: (verdict == PisotVerdict::Pisot).then_some(root),
            conjugate_moduli: Vec::new(),
            tol,
        });
    }

    let fcoeffs: Vec<f64> = poly.iter().map(|&c| c as f64).collect();
    let mut roots = polynomial_roots(&fcoeffs);
    roots.sort_by(|a, b| b.norm().total_cmp(&a.norm()).then(b.arg().total_cmp(&a.arg())));

    let near_circle = roots.iter().any(|z| (z.norm() - 1.0).abs() <= tol);
    let outside: Vec<&Complex64> = roots.iter().filter(|z| z.norm() > 1.0 + tol).collect();
    let single_real = outside.len() == 1 && outside[0].re > 0.0 && outside[0].im.abs() <= 1e-9 * outside[0].norm();

    let verdict = if near_circle {
        PisotVerdict::Inconclusive
    } else if single_real {
        PisotVerdict::Pisot
    } else {
        PisotVerdict::NotPisot
    };
    let dominant_root = single_real.then(|| outside[0].re);
    let conjugate_moduli = roots.iter().skip(1).map(|z| z.norm()).collect();
    Ok(PisotReport {
        verdict,
        roots,
        dominant_root,
        conjugate_moduli,
        tol,
    })
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of a polynomial (highest degree first) by the
/// Aberth-Ehrlich iteration followed by a Newton polish.
pub fn polynomial_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let first = match coeffs.iter().position(|&c| c != 0.0) {
        Some(i) => i,
        None => return Vec::new(),
    };
    let lead = coeffs[first];
    let monic: Vec<f64> = coeffs[first..].iter().map(|c| c / lead).collect();
    let n = monic.len() - 1;
    if n == 0 {
        return Vec::new();
    }

    // Cauchy bound for the initial circle.
    let radius = 1.0 + monic[1..].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect();

    for _ in 0..1000 {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let (p, dp) = horner(&monic, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }

    for root in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&monic, *root);
            let step = p / dp;
            if !step.is_finite() || step.norm() == 0.0 {
                break;
            }
            *root -= step;
        }
        // Real coefficients: a root whose imaginary part is pure rounding
        // noise is real.
        if root.im.abs() <= 1e-14 * root.norm().max(1.0) {
            root.im = 0.0;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_is_pisot() {
        let r = pisot_check(&[1, -1, -1], DEFAULT_PISOT_TOL).unwrap();
        assert_eq!(r.verdict, PisotVerdict::Pisot);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((r.dominant_root.unwrap() - phi).abs() < 1e-13);
        assert!((r.conjugate_moduli[0] - (phi - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn integers_are_pisot() {
        for k in 2..20 {
            let r = pisot_check(&[1, -k], DEFAULT_PISOT_TOL).unwrap();
            assert_eq!(r.verdict, PisotVerdict::Pisot, "k = {k}");
            assert_eq!(r.dominant_root, Some(k as f64));
        }
        assert_eq!(pisot_check(&[1, -1], 1e-9).unwrap().verdict, PisotVerdict::NotPisot);
        assert_eq!(pisot_check(&[1, 3], 1e-9).unwrap().verdict, PisotVerdict::NotPisot);
    }

    #[test]
    fn sqrt_two_is_not_pisot() {
        let r = pisot_check(&[1, 0, -2], DEFAULT_PISOT_TOL).unwrap();
        assert_eq!(r.verdict, PisotVerdict::NotPisot);
        assert!(r.dominant_root.is_none());
    }

    #[test]
    fn plastic_number_and_salem() {
        // x^3 - x - 1: smallest Pisot number.
        assert_eq!(pisot_check(&[1, 0, -1, -1], 1e-9).unwrap().verdict, PisotVerdict::Pisot);
        // Lehmer's polynomial has a Salem root: conjugates on the circle.
        let lehmer = [1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1];
        assert_eq!(pisot_check(&lehmer, 1e-9).unwrap().verdict, PisotVerdict::Inconclusive);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(pisot_check(&[0, 0], 1e-9), Err(Error::ZeroPolynomial)));
        assert!(matches!(pisot_check(&[], 1e-9), Err(Error::ZeroPolynomial)));
        assert!(matches!(pisot_check(&[2, -1, -1], 1e-9), Err(Error::NotMonic(2))));
        assert!(pisot_check(&[1], 1e-9).is_err());
        // Leading zeros are ignored.
        assert_eq!(pisot_check(&[0, 1, -3], 1e-9).unwrap().verdict, PisotVerdict::Pisot);
    }

    #[test]
    fn roots_reconstruct_polynomial() {
        let coeffs = [1.0, -3.0, 0.5, 2.0, -7.0];
        for z in polynomial_roots(&coeffs) {
            assert!(horner(&coeffs, z).0.norm() < 1e-10);
        }
    }
}
