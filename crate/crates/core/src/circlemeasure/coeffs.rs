use std::f64::consts::PI;
use std::fmt;
use std::io::Write;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use super::ratio::RatioParam;
use super::stages::{StageLefts, DEFAULT_MAX_GENERATION};
use crate::fmt::f17;
use crate::{Error, Result};

pub const DEFAULT_PRODUCT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProductValue {
    #[serde(serialize_with = "crate::fmt::serialize_complex")]
    pub value: Complex64,
    /// Upper bound on `|value - sigma_hat(n)|`.
    pub tail_bound: f64,
    /// Number of cosine factors kept.
    pub terms: usize,
}

/// `sum_{k > terms} theta_k^2 / 2` with `theta_k = pi n xi^(k-1) (1 - xi)`.
fn quadratic_tail(n: f64, xi: f64, terms: usize) -> f64 {
    let a = PI * n * (1.0 - xi);
    a * a * xi.powi(2 * terms as i32) / (2.0 * (1.0 - xi * xi))
}

/// Cosine angles divided by pi, reduced mod 2 exactly for rational ratios.
struct AngleSource {
    exact: Option<(BigInt, BigInt)>,
    xi: f64,
}

impl AngleSource {
    fn new(ratio: &RatioParam) -> Self {
        let exact = ratio.as_fraction().map(|(p, q)| (BigInt::from(p), BigInt::from(q)));
        AngleSource {
            exact,
            xi: ratio.value(),
        }
    }

    /// theta_k / pi for k = 1..=terms.
    fn turns(&self, n: u64, terms: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(terms);
        let mut scale = 1.0 - self.xi;
        let mut pq = self.exact.as_ref().map(|(p, q)| (BigInt::one(), q.clone(), p, q));
        for _ in 0..terms {
            let estimate = n as f64 * scale;
            let t = match pq.as_mut() {
                Some((p_pow, q_pow, p, q)) if estimate > 2.0 => {
                    let modulus: BigInt = &*q_pow * 2;
                    let num = (BigInt::from(n) * &*p_pow * (*q - *p)) % &modulus;
                    let t = BigRational::new(num, q_pow.clone()).to_f64().unwrap_or(estimate);
                    *p_pow *= *p;
                    *q_pow *= *q;
                    t
                }
                Some((p_pow, q_pow, p, q)) => {
                    *p_pow *= *p;
                    *q_pow *= *q;
                    estimate
                }
                None => estimate,
            };
            out.push(t);
            scale *= self.xi;
        }
        out
    }
}

/// Fourier-Stieltjes coefficient of the Cantor measure from the infinite
/// product `(-1)^n prod_{k>=1} cos(pi n xi^(k-1) (1 - xi))`, truncated at
/// the least number of factors whose quadratic tail falls below `tol`.
pub fn fs_coeff_product(ratio: &RatioParam, n: i64, tol: f64) -> Result<ProductValue> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be > 0, got {tol}")));
    }
    let xi = ratio.value();
    let m = n.unsigned_abs();
    if m == 0 {
        return Ok(ProductValue {
            value: Complex64::new(1.0, 0.0),
            tail_bound: 0.0,
            terms: 0,
        });
    }
    let mut terms = 0usize;
    while quadratic_tail(m as f64, xi, terms) >= tol {
        terms += 1;
    }
    let product: f64 = AngleSource::new(ratio)
        .turns(m, terms)
        .into_iter()
        .map(|t| (PI * t).cos())
        .product();
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(ProductValue {
        value: Complex64::new(sign * product, 0.0),
        tail_bound: quadratic_tail(m as f64, xi, terms),
        terms,
    })
}

/// `2 pi |n| xi^m`: transporting `sigma_m` onto `sigma` moves no mass
/// farther than one stage interval.
pub fn fs_coeff_oracle_bound(ratio: &RatioParam, stage: u32, n: i64) -> f64 {
    2.0 * PI * n.unsigned_abs() as f64 * ratio.value().powi(stage as i32)
}

/// Least stage whose oracle bound at `|n| = n_max` is below `target`,
/// capped at the materialization limit.
pub fn oracle_stage_for_bound(ratio: &RatioParam, n_max: i64, target: f64) -> u32 {
    (0..=DEFAULT_MAX_GENERATION)
        .find(|&m| fs_coeff_oracle_bound(ratio, m, n_max) < target)
        .unwrap_or(DEFAULT_MAX_GENERATION)
}

/// `e^{-i pi x} sin(pi x) / (pi x)`, the mean of `e^{-2 pi i n s}` over an
/// interval of length `x / n`.
fn interval_mean(x: f64) -> Complex64 {
    if x == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let s = (PI * x).sin() / (PI * x);
    Complex64::from_polar(s, -PI * x)
}

pub(crate) fn oracle_from_lefts(lefts: &StageLefts, stage: u32, n: i64) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let factor = match lefts {
        StageLefts::Exact {
            denominator,
            length_numerator,
            ..
        } if ((n.unsigned_abs() as u128 % denominator) * length_numerator).is_multiple_of(*denominator) => {
            // n times the interval length is an integer: the mean vanishes.
            return Complex64::new(0.0, 0.0);
        }
        _ => interval_mean(n as f64 * lefts.length()),
    };
    let sum: Complex64 = (0..lefts.len())
        .map(|i| Complex64::from_polar(1.0, -2.0 * PI * lefts.phase_turns(n, i)))
        .sum();
    factor * sum / (2f64).powi(stage as i32)
}

/// Direct integral `int e^{-2 pi i n t} d sigma_m(t)` against the normalized
/// Lebesgue measure of the stage `E_m`, interval by interval.
pub fn fs_coeff_oracle(ratio: &RatioParam, stage: u32, n: i64) -> Result<Complex64> {
    let lefts = StageLefts::new(ratio, stage, DEFAULT_MAX_GENERATION)?;
    Ok(oracle_from_lefts(&lefts, stage, n))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CoefficientMethod {
    Product { tol: f64 },
    Oracle { stage: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TableMethod {
    Product {
        tol: f64,
    },
    Oracle {
        stage: u32,
    },
    /// Values supplied by the caller.
    External,
}

impl fmt::Display for TableMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableMethod::Product { .. } => write!(f, "product"),
            TableMethod::Oracle { stage } => write!(f, "oracle({stage})"),
            TableMethod::External => write!(f, "external"),
        }
    }
}

impl Serialize for TableMethod {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Coefficients `mu_hat(n)` for a contiguous index range.
#[derive(Clone, Debug)]
pub struct FourierCoefficientTable {
    pub ratio: Option<RatioParam>,
    pub method: TableMethod,
    pub start: i64,
    pub values: Vec<Complex64>,
    pub tail_bounds: Vec<f64>,
}

impl FourierCoefficientTable {
    pub fn from_values(start: i64, values: Vec<Complex64>) -> Self {
        let tail_bounds = vec![0.0; values.len()];
        FourierCoefficientTable {
            ratio: None,
            method: TableMethod::External,
            start,
            values,
            tail_bounds,
        }
    }

    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    pub fn get(&self, n: i64) -> Option<Complex64> {
        let i = usize::try_from(n - self.start).ok()?;
        self.values.get(i).copied()
    }

    pub fn tail_bound(&self, n: i64) -> Option<f64> {
        let i = usize::try_from(n - self.start).ok()?;
        self.tail_bounds.get(i).copied()
    }

    pub fn indices(&self) -> RangeInclusive<i64> {
        self.start..=self.end()
    }

    /// Columns `n,re,im,abs,method,tail_bound`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "n,re,im,abs,method,tail_bound")?;
        let method = self.method.to_string();
        for (i, v) in self.values.iter().enumerate() {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                self.start + i as i64,
                f17(v.re),
                f17(v.im),
                f17(v.norm()),
                method,
                f17(self.tail_bounds[i])
            )?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TableRow {
    n: i64,
    re: f64,
    im: f64,
    abs: f64,
    tail_bound: f64,
}

impl Serialize for FourierCoefficientTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<TableRow> = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| TableRow {
                n: self.start + i as i64,
                re: v.re,
                im: v.im,
                abs: v.norm(),
                tail_bound: self.tail_bounds[i],
            })
            .collect();
        let mut st = s.serialize_struct("FourierCoefficientTable", 4)?;
        st.serialize_field("ratio", &self.ratio)?;
        st.serialize_field("method", &self.method)?;
        st.serialize_field("start", &self.start)?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

pub fn coefficient_table(
    ratio: &RatioParam,
    range: RangeInclusive<i64>,
    method: CoefficientMethod,
) -> Result<FourierCoefficientTable> {
    if range.is_empty() {
        return Err(Error::RangeMismatch("empty index range".into()));
    }
    let start = *range.start();
    let (values, tail_bounds, method): (Vec<Complex64>, Vec<f64>, TableMethod) = match method {
        CoefficientMethod::Product { tol } => {
            let cells: Result<Vec<ProductValue>> =
                range.into_par_iter().map(|n| fs_coeff_product(ratio, n, tol)).collect();
            let cells = cells?;
            (
                cells.iter().map(|c| c.value).collect(),
                cells.iter().map(|c| c.tail_bound).collect(),
                TableMethod::Product { tol },
            )
        }
        CoefficientMethod::Oracle { stage } => {
            let lefts = StageLefts::new(ratio, stage, DEFAULT_MAX_GENERATION)?;
            let values: Vec<Complex64> = range
                .clone()
                .into_par_iter()
                .map(|n| oracle_from_lefts(&lefts, stage, n))
                .collect();
            let bounds = range.map(|n| fs_coeff_oracle_bound(ratio, stage, n)).collect();
            (values, bounds, TableMethod::Oracle { stage })
        }
    };
    Ok(FourierCoefficientTable {
        ratio: Some(ratio.clone()),
        method,
        start,
        values,
        tail_bounds,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecayBlock {
    /// Block `[2^k, 2^(k+1))`.
    pub k: u32,
    pub max_abs: f64,
    pub argmax: i64,
}

/// Maximum of `|mu_hat(n)|` over each dyadic block `[2^k, 2^(k+1))` for
/// `k` in `blocks`.
pub fn decay_profile(table: &FourierCoefficientTable, blocks: RangeInclusive<u32>) -> Result<Vec<DecayBlock>> {
    let (first, last) = (*blocks.start(), *blocks.end());
    if blocks.is_empty() || last >= 62 {
        return Err(Error::RangeMismatch(format!("invalid block range {first}..={last}")));
    }
    let lo = 1i64 << first;
    let hi = (1i64 << (last + 1)) - 1;
    if table.start > lo || table.end() < hi {
        return Err(Error::RangeMismatch(format!(
            "table covers {}..={}, blocks need {lo}..={hi}",
            table.start,
            table.end()
        )));
    }
    Ok(blocks
        .map(|k| {
            let (mut max_abs, mut argmax) = (f64::NEG_INFINITY, 0);
            for n in (1i64 << k)..(1i64 << (k + 1)) {
                let a = table.get(n).expect("covered").norm();
                if a > max_abs {
                    max_abs = a;
                    argmax = n;
                }
            }
            DecayBlock { k, max_abs, argmax }
        })
        .collect())
}
