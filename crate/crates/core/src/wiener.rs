//! Truncated coefficient series `a = (a_0, ..., a_D)`.
//!
//! A series is read two ways: as the function `f_a(z) = sum a_j z^j` in the
//! Wiener algebra, normed by `||a||_1`, and as a functional on `c0` acting
//! by `<a, x> = sum a_j x_j`.

use std::f64::consts::TAU;
use std::io::Write;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::fmt::f17;
use crate::{Error, Result};

/// Largest degree accepted by the composition routines.
pub const DEFAULT_MAX_DEGREE: usize = 1 << 16;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientSeries {
    coeffs: Vec<Complex64>,
    l1: f64,
    residual: Option<f64>,
}

impl CoefficientSeries {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(ZERO);
        }
        let l1 = coeffs.iter().map(|c| c.norm()).sum();
        CoefficientSeries {
            coeffs,
            l1,
            residual: None,
        }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// `z^j`.
    pub fn monomial(j: usize) -> Self {
        let mut coeffs = vec![ZERO; j + 1];
        coeffs[j] = ONE;
        Self::new(coeffs)
    }

    /// Attaches an estimate of the `l1` norm of coefficients dropped beyond
    /// the truncation degree.
    pub fn with_residual(mut self, residual: f64) -> Self {
        self.residual = Some(residual);
        self
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coefficient(&self, j: usize) -> Complex64 {
        self.coeffs.get(j).copied().unwrap_or(ZERO)
    }

    pub fn truncation_residual(&self) -> Option<f64> {
        self.residual
    }

    /// `||f_a||_+ = ||a||_1`.
    pub fn wiener_norm(&self) -> f64 {
        self.l1
    }

    /// `sum j |a_j|`, a bound for `|f_a'|` on the closed disk.
    pub fn derivative_weight(&self) -> f64 {
        self.coeffs.iter().enumerate().map(|(j, c)| j as f64 * c.norm()).sum()
    }

    /// Constant series are the trivial functionals.
    pub fn is_trivial(&self) -> bool {
        self.coeffs[1..].iter().all(|c| *c == ZERO)
    }

    /// Keeps coefficients `0..=degree`; the dropped `l1` mass is added to the
    /// residual.
    pub fn truncate(&self, degree: usize) -> Self {
        if degree >= self.degree() {
            return self.clone();
        }
        let dropped: f64 = self.coeffs[degree + 1..].iter().map(|c| c.norm()).sum();
        let mut out = Self::new(self.coeffs[..=degree].to_vec());
        out.residual = Some(self.residual.unwrap_or(0.0) + dropped);
        out
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| f(c)).collect())
    }

    /// `f_a(z)` for `|z| <= 1`.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        let modulus = z.norm();
        if !(modulus <= 1.0 + 1e-12) {
            return Err(Error::OutsideDisk { modulus });
        }
        Ok(self.eval(z))
    }

    pub(crate) fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// `f_a(r e^{2 pi i m / M})` for `m = 0..M`, by one FFT of the folded
    /// coefficients.
    pub fn values_on_circle(&self, m: usize, radius: f64) -> Vec<Complex64> {
        let mut buf = vec![ZERO; m];
        let mut scale = 1.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            buf[j % m] += c * scale;
            scale *= radius;
        }
        FftPlanner::<f64>::new().plan_fft_inverse(m).process(&mut buf);
        buf
    }

    /// Bracket for `||f_a||_inf`: the lower end is the maximum over the
    /// `M`-th roots of unity, the upper end adds `(2 pi / M) sum j |a_j|`.
    /// For polynomials the supremum over the disk sits on the circle.
    pub fn sup_norm_estimate(&self, grid: usize) -> Result<SupNormBracket> {
        if grid < 8 {
            return Err(Error::InvalidParameter(format!(
                "sup-norm grid must be >= 8, got {grid}"
            )));
        }
        let values = self.values_on_circle(grid, 1.0);
        let (mut lower, mut argmax) = (0.0f64, 0usize);
        for (i, v) in values.iter().enumerate() {
            let a = v.norm();
            if a > lower {
                lower = a;
                argmax = i;
            }
        }
        let upper = lower + TAU / grid as f64 * self.derivative_weight();
        Ok(SupNormBracket {
            lower,
            upper,
            grid,
            argmax,
        })
    }

    /// `<a, x> = sum a_j x_j`; `x` must cover every coefficient.
    pub fn pairing(&self, x: &[Complex64]) -> Result<Complex64> {
        if x.len() < self.coeffs.len() {
            return Err(Error::LengthMismatch {
                expected: self.coeffs.len(),
                got: x.len(),
            });
        }
        Ok(self.pairing_padded(x))
    }

    /// As [`pairing`](Self::pairing) with `x` extended by zeros.
    pub fn pairing_padded(&self, x: &[Complex64]) -> Complex64 {
        self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// Columns `j,re,im`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "j,re,im")?;
        for (j, c) in self.coeffs.iter().enumerate() {
            writeln!(w, "{j},{},{}", f17(c.re), f17(c.im))?;
        }
        Ok(())
    }
}

impl Serialize for CoefficientSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let fields = if self.residual.is_some() { 4 } else { 3 };
        let mut st = s.serialize_struct("CoefficientSeries", fields)?;
        st.serialize_field("degree", &self.degree())?;
        st.serialize_field(
            "coefficients",
            &self.coeffs.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
        )?;
        st.serialize_field("l1_norm", &self.l1)?;
        if let Some(r) = self.residual {
            st.serialize_field("truncation_residual", &r)?;
        }
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SupNormBracket {
    pub lower: f64,
    pub upper: f64,
    pub grid: usize,
    /// Grid index of the maximum; the angle is `2 pi argmax / grid`.
    pub argmax: usize,
}

/// Cauchy product truncated to `degree`.
pub fn convolve(a: &[Complex64], b: &[Complex64], degree: usize) -> Vec<Complex64> {
    let mut out = vec![ZERO; degree + 1];
    for (i, x) in a.iter().enumerate().take(degree + 1) {
        if *x == ZERO {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(degree + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn check_degree(degree: usize) -> Result<()> {
    if degree > DEFAULT_MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            requested: degree,
            max: DEFAULT_MAX_DEGREE,
        });
    }
    Ok(())
}

/// Taylor coefficients at 0 of an analytic function `F`, convergent on the
/// disk of the given radius. A finite list with infinite radius is a
/// polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticGerm {
    pub coeffs: Vec<Complex64>,
    pub radius: f64,
}

impl AnalyticGerm {
    pub fn polynomial(coeffs: Vec<Complex64>) -> Self {
        AnalyticGerm {
            coeffs,
            radius: f64::INFINITY,
        }
    }

    /// `1 / (1 + w)` through `w^terms`.
    pub fn reciprocal_one_plus(terms: usize) -> Self {
        let coeffs = (0..=terms).map(|k| if k % 2 == 0 { ONE } else { -ONE }).collect();
        AnalyticGerm { coeffs, radius: 1.0 }
    }
}

/// Degree-`degree` truncation of `F o g` by Horner's rule in series
/// arithmetic. Exact for polynomial `F`; for a truncated germ the result is
/// exact when `g(0) = 0` and the germ has at least `degree + 1` terms.
pub fn compose_power_series(
    outer: &AnalyticGerm,
    inner: &CoefficientSeries,
    degree: usize,
) -> Result<CoefficientSeries> {
    check_degree(degree)?;
    let g0 = inner.coefficient(0).norm();
    if !(g0 < outer.radius) {
        return Err(Error::GermRadius {
            value: g0,
            radius: outer.radius,
        });
    }
    let mut acc = vec![ZERO; degree + 1];
    for &c in outer.coeffs.iter().rev() {
        acc = convolve(&acc, inner.coefficients(), degree);
        acc[0] += c;
    }
    Ok(CoefficientSeries::new(acc))
}

/// Coefficients of `1 / (1 + F)` through `degree`, by long division.
pub fn reciprocal_one_plus(f: &CoefficientSeries, degree: usize) -> Result<CoefficientSeries> {
    check_degree(degree)?;
    let lead = ONE + f.coefficient(0);
    if lead == ZERO {
        return Err(Error::ZeroDivisor);
    }
    let inv = lead.inv();
    let fc = f.coefficients();
    let mut h = vec![ZERO; degree + 1];
    h[0] = inv;
    for n in 1..=degree {
        let top = n.min(fc.len() - 1);
        let s: Complex64 = (1..=top).map(|j| fc[j] * h[n - j]).sum();
        h[n] = -s * inv;
    }
    Ok(CoefficientSeries::new(h))
}

/// The unimodular constant `e^{i gamma} = (1 - conj(g0)) / (1 - g0)` that
/// makes the Blaschke factor fix 1.
pub fn mobius_phase(g0: Complex64) -> Complex64 {
    (ONE - g0.conj()) / (ONE - g0)
}

/// `G = F o g` with the Blaschke factor
/// `F(w) = e^{i gamma} (w - g0) / (1 - conj(g0) w)`, `g0 = g(0)`.
/// `G(0) = 0` exactly and `F(1) = 1`.
pub fn mobius_postcompose(g: &CoefficientSeries, degree: usize) -> Result<CoefficientSeries> {
    check_degree(degree)?;
    let g0 = g.coefficient(0);
    if g0 == ZERO {
        return Err(Error::InvalidParameter(
            "g(0) = 0: already vanishes at the origin".into(),
        ));
    }
    if !(g0.norm() < 1.0) {
        return Err(Error::InvalidParameter(format!("|g(0)| = {} must be < 1", g0.norm())));
    }
    let phase = mobius_phase(g0);
    // 1 - conj(g0) g = 1 + F' with F' = -conj(g0) g.
    let scaled = g.map(|c| -g0.conj() * c);
    let denom = reciprocal_one_plus(&scaled, degree)?;
    let mut numer: Vec<Complex64> = g.coefficients().iter().take(degree + 1).map(|c| c * phase).collect();
    numer[0] = ZERO;
    let mut out = convolve(&numer, denom.coefficients(), degree);
    out[0] = ZERO;
    Ok(CoefficientSeries::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn evaluation_examples() {
        let one = CoefficientSeries::constant(ONE);
        assert_eq!(one.evaluate(c(0.3, -0.4)).unwrap(), ONE);
        let half = CoefficientSeries::from_real(&[0.5, 0.5]);
        assert_eq!(half.evaluate(ONE).unwrap(), ONE);
        let z = CoefficientSeries::monomial(1);
        assert_eq!(z.evaluate(c(0.0, 1.0)).unwrap(), c(0.0, 1.0));
        assert!(matches!(z.evaluate(c(1.1, 0.0)), Err(Error::OutsideDisk { .. })));
    }

    #[test]
    fn sup_norm_brackets() {
        let z = CoefficientSeries::monomial(1);
        let b = z.sup_norm_estimate(64).unwrap();
        assert!(b.lower <= 1.0 + 1e-15 && b.upper >= 1.0);
        let half = CoefficientSeries::from_real(&[0.5, 0.5]);
        let b = half.sup_norm_estimate(64).unwrap();
        assert!((b.lower - 1.0).abs() < 1e-15);
        assert_eq!(b.argmax, 0);
        assert!(half.wiener_norm() >= b.lower);
        assert!(half.sup_norm_estimate(4).is_err());
    }

    #[test]
    fn circle_values_match_horner_with_folding() {
        let a = CoefficientSeries::new((0..40).map(|j| c((j as f64).sin(), 0.1 * j as f64)).collect());
        for m in [8, 16, 64] {
            let vals = a.values_on_circle(m, 0.9);
            for (i, v) in vals.iter().enumerate() {
                let z = Complex64::from_polar(0.9, TAU * i as f64 / m as f64);
                assert!((v - a.eval(z)).norm() < 1e-11);
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let e0 = CoefficientSeries::constant(ONE);
        assert_eq!(e0.pairing(&[c(0.25, 1.0), c(7.0, 0.0)]).unwrap(), c(0.25, 1.0));
        let half = CoefficientSeries::from_real(&[0.5, 0.5]);
        assert_eq!(half.pairing(&[ONE, ONE]).unwrap(), ONE);
        assert!(matches!(
            half.pairing(&[ONE]),
            Err(Error::LengthMismatch { expected: 2, got: 1 })
        ));
        assert_eq!(half.pairing_padded(&[ONE]), c(0.5, 0.0));
    }

    #[test]
    fn compose_examples() {
        let z = CoefficientSeries::monomial(1);
        let sq = AnalyticGerm::polynomial(vec![ZERO, ZERO, ONE]);
        assert_eq!(
            compose_power_series(&sq, &z, 4).unwrap().coefficients(),
            &[ZERO, ZERO, ONE, ZERO, ZERO]
        );

        let geo = compose_power_series(&AnalyticGerm::reciprocal_one_plus(12), &z, 8).unwrap();
        for (k, v) in geo.coefficients().iter().enumerate() {
            assert_eq!(*v, if k % 2 == 0 { ONE } else { -ONE });
        }

        let bad = CoefficientSeries::from_real(&[1.5, 0.1]);
        assert!(matches!(
            compose_power_series(&AnalyticGerm::reciprocal_one_plus(4), &bad, 4),
            Err(Error::GermRadius { .. })
        ));
    }

    #[test]
    fn reciprocal_examples() {
        let r = reciprocal_one_plus(&CoefficientSeries::constant(ZERO), 3).unwrap();
        assert_eq!(r.coefficients(), &[ONE, ZERO, ZERO, ZERO]);
        let r = reciprocal_one_plus(&CoefficientSeries::constant(ONE), 2).unwrap();
        assert_eq!(r.coefficients(), &[c(0.5, 0.0), ZERO, ZERO]);
        let r = reciprocal_one_plus(&CoefficientSeries::monomial(1), 6).unwrap();
        for (k, v) in r.coefficients().iter().enumerate() {
            assert_eq!(*v, if k % 2 == 0 { ONE } else { -ONE });
        }
        assert!(matches!(
            reciprocal_one_plus(&CoefficientSeries::constant(-ONE), 3),
            Err(Error::ZeroDivisor)
        ));
    }

    #[test]
    fn mobius_examples() {
        let g = CoefficientSeries::from_real(&[0.5, 0.5]);
        let out = mobius_postcompose(&g, 64).unwrap();
        assert_eq!(out.coefficient(0), ZERO);
        assert!((out.eval(ONE) - ONE).norm() < 1e-10);
        let grid = out.values_on_circle(512, 1.0);
        assert!(grid.iter().all(|v| v.norm() <= 1.0 + 1e-9));

        assert!(mobius_postcompose(&out, 8).is_err());
        assert!(mobius_postcompose(&CoefficientSeries::from_real(&[1.0, 0.0]), 8).is_err());
    }

    #[test]
    fn mobius_with_complex_center() {
        let g = CoefficientSeries::new(vec![c(0.2, 0.3), c(0.25, -0.1), c(0.1, 0.05)]);
        let out = mobius_postcompose(&g, 200).unwrap();
        assert_eq!(out.coefficient(0), ZERO);
        let g0 = g.coefficient(0);
        for z in [c(0.3, 0.1), c(-0.2, 0.5)] {
            let w = g.eval(z);
            let direct = mobius_phase(g0) * (w - g0) / (ONE - g0.conj() * w);
            assert!((out.eval(z) - direct).norm() < 1e-12);
        }
        // F(1) = 1.
        let fixed = mobius_phase(g0) * (ONE - g0) / (ONE - g0.conj());
        assert!((fixed - ONE).norm() < 1e-15);
    }

    #[test]
    fn truncate_tracks_residual() {
        let a = CoefficientSeries::from_real(&[1.0, -0.5, 0.25, 0.125]);
        let t = a.truncate(1);
        assert_eq!(t.degree(), 1);
        assert_eq!(t.truncation_residual(), Some(0.375));
        assert!(!t.is_trivial());
        assert!(a.truncate(0).is_trivial());
    }
}
