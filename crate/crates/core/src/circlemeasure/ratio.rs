use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Serialize, Serializer};

use super::pisot::{normalize_monic, polynomial_roots};
use crate::{Error, Result};

/// The Cantor ratio `xi`, `0 < xi < 1/2`.
///
/// Rational ratios are stored exactly. An irrational ratio is only
/// meaningful for classification when it carries the integer minimal
/// polynomial of `1/xi`; the float value is used for transcendental
/// evaluations.
#[derive(Clone, Debug, PartialEq)]
pub enum RatioParam {
    Rational {
        numerator: u64,
        denominator: u64,
    },
    Algebraic {
        value: f64,
        reciprocal_minpoly: Option<Vec<i64>>,
    },
}

impl RatioParam {
    pub fn rational(numerator: u64, denominator: u64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::MalformedRatio(format!("{numerator}/{denominator}")));
        }
        let g = numerator.gcd(&denominator);
        let (p, q) = (numerator / g, denominator / g);
        if p == 0 || (p as u128) * 2 >= q as u128 {
            return Err(Error::RatioOutOfRange(format!("{numerator}/{denominator}")));
        }
        Ok(RatioParam::Rational {
            numerator: p,
            denominator: q,
        })
    }

    /// Irrational ratio `xi = 1/theta` where `theta` is a real root > 2 of
    /// the monic integer polynomial `reciprocal_minpoly` (highest degree
    /// first). With `approx` the root closest to `1/approx` is chosen,
    /// otherwise the largest real root.
    pub fn algebraic(reciprocal_minpoly: Vec<i64>, approx: Option<f64>) -> Result<Self> {
        let poly = normalize_monic(&reciprocal_minpoly)?;
        let fcoeffs: Vec<f64> = poly.iter().map(|&c| c as f64).collect();
        let mut real_roots: Vec<f64> = polynomial_roots(&fcoeffs)
            .into_iter()
            .filter(|z| z.im.abs() <= 1e-9 * z.norm().max(1.0))
            .map(|z| z.re)
            .filter(|&r| r > 2.0)
            .collect();
        real_roots.sort_by(|a, b| b.total_cmp(a));
        let theta = match approx {
            Some(x) => {
                if !(x > 0.0 && x < 0.5) {
                    return Err(Error::RatioOutOfRange(x.to_string()));
                }
                let target = 1.0 / x;
                real_roots
                    .iter()
                    .copied()
                    .min_by(|a, b| (a - target).abs().total_cmp(&(b - target).abs()))
                    .filter(|r| (r - target).abs() <= 1e-6 * target)
                    .ok_or_else(|| Error::InvalidParameter(format!("no real root of the tag agrees with 1/{x}")))?
            }
            None => *real_roots
                .first()
                .ok_or_else(|| Error::RatioOutOfRange("tag has no real root above 2".to_string()))?,
        };
        Ok(RatioParam::Algebraic {
            value: 1.0 / theta,
            reciprocal_minpoly: Some(poly),
        })
    }

    /// An irrational ratio without algebraic information. Usable for
    /// numerics; classification reports `Unknown`.
    pub fn untagged(value: f64) -> Result<Self> {
        if !(value > 0.0 && value < 0.5) {
            return Err(Error::RatioOutOfRange(value.to_string()));
        }
        Ok(RatioParam::Algebraic {
            value,
            reciprocal_minpoly: None,
        })
    }

    pub fn value(&self) -> f64 {
        match self {
            RatioParam::Rational { numerator, denominator } => *numerator as f64 / *denominator as f64,
            RatioParam::Algebraic { value, .. } => *value,
        }
    }

    pub fn as_fraction(&self) -> Option<(u64, u64)> {
        match self {
            RatioParam::Rational { numerator, denominator } => Some((*numerator, *denominator)),
            RatioParam::Algebraic { .. } => None,
        }
    }

    pub fn exact(&self) -> Option<BigRational> {
        self.as_fraction()
            .map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub(crate) fn require_exact(&self) -> Result<BigRational> {
        self.exact().ok_or_else(|| Error::NotRational(self.to_string()))
    }
}

impl fmt::Display for RatioParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatioParam::Rational { numerator, denominator } => write!(f, "{numerator}/{denominator}"),
            RatioParam::Algebraic {
                value,
                reciprocal_minpoly: Some(poly),
            } => {
                let coeffs: Vec<String> = poly.iter().map(i64::to_string).collect();
                write!(f, "1/root({})={}", coeffs.join(","), crate::fmt::f17(*value))
            }
            RatioParam::Algebraic {
                value,
                reciprocal_minpoly: None,
            } => {
                write!(f, "untagged={}", crate::fmt::f17(*value))
            }
        }
    }
}

impl FromStr for RatioParam {
    type Err = Error;

    /// Only exact `p/q` is accepted; decimals would silently change the
    /// classification.
    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s
            .trim()
            .split_once('/')
            .ok_or_else(|| Error::MalformedRatio(s.to_string()))?;
        let p: u64 = p.trim().parse().map_err(|_| Error::MalformedRatio(s.to_string()))?;
        let q: u64 = q.trim().parse().map_err(|_| Error::MalformedRatio(s.to_string()))?;
        RatioParam::rational(p, q)
    }
}

impl Serialize for RatioParam {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses `"1,-3,1"` into integer coefficients, highest degree first.
pub fn parse_polynomial(s: &str) -> Result<Vec<i64>> {
    let coeffs: std::result::Result<Vec<i64>, _> = s.split(',').map(|c| c.trim().parse::<i64>()).collect();
    match coeffs {
        Ok(c) if !c.is_empty() => Ok(c),
        _ => Err(Error::MalformedPolynomial(s.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_and_validates() {
        assert_eq!(
            RatioParam::rational(2, 6).unwrap(),
            RatioParam::Rational {
                numerator: 1,
                denominator: 3
            }
        );
        assert!(RatioParam::rational(1, 2).is_err());
        assert!(RatioParam::rational(3, 5).is_err());
        assert!(RatioParam::rational(0, 5).is_err());
        assert!(RatioParam::rational(1, 0).is_err());
    }

    #[test]
    fn parses_exact_fractions_only() {
        assert_eq!("2/5".parse::<RatioParam>().unwrap().to_string(), "2/5");
        assert!("0.4".parse::<RatioParam>().is_err());
        assert!("3/5".parse::<RatioParam>().is_err());
        assert!("a/b".parse::<RatioParam>().is_err());
    }

    #[test]
    fn algebraic_picks_reciprocal_root() {
        let r = RatioParam::algebraic(vec![1, -3, 1], None).unwrap();
        let expected = (3.0 - 5f64.sqrt()) / 2.0;
        assert!((r.value() - expected).abs() < 1e-14);
        assert!(RatioParam::algebraic(vec![1, -3, 1], Some(0.3)).is_err());
        // x^2 - x - 1: golden ratio 1.618 < 2, so xi > 1/2.
        assert!(RatioParam::algebraic(vec![1, -1, -1], None).is_err());
    }

    #[test]
    fn polynomial_syntax() {
        assert_eq!(parse_polynomial("1,-1,-1").unwrap(), vec![1, -1, -1]);
        assert!(parse_polynomial("1,x").is_err());
        assert!(parse_polynomial("").is_err());
    }
}
