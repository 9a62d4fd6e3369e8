use serde::Serialize;

use super::pisot::{pisot_check, PisotVerdict, DEFAULT_PISOT_TOL};
use super::ratio::RatioParam;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "NotRajchman_IntegerReciprocal")]
    NotRajchmanIntegerReciprocal,
    #[serde(rename = "NotRajchman_PisotReciprocal")]
    NotRajchmanPisotReciprocal,
    #[serde(rename = "Rajchman_RationalNonIntegerReciprocal")]
    RajchmanRationalNonIntegerReciprocal,
    #[serde(rename = "Rajchman_NotPisotReciprocal")]
    RajchmanNotPisotReciprocal,
    Unknown,
}

impl Verdict {
    /// `Some(true)` when the Cantor measure's coefficients tend to zero.
    pub fn is_rajchman(self) -> Option<bool> {
        match self {
            Verdict::NotRajchmanIntegerReciprocal | Verdict::NotRajchmanPisotReciprocal => Some(false),
            Verdict::RajchmanRationalNonIntegerReciprocal | Verdict::RajchmanNotPisotReciprocal => Some(true),
            Verdict::Unknown => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Evidence {
    pub message: String,
    pub reciprocal: String,
    pub dominant_root: Option<f64>,
    pub conjugate_moduli: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationVerdict {
    pub ratio: RatioParam,
    pub verdict: Verdict,
    pub evidence: Evidence,
}

pub fn rajchman_classify(ratio: &RatioParam) -> ClassificationVerdict {
    rajchman_classify_with_tol(ratio, DEFAULT_PISOT_TOL)
}

/// Salem's criterion: `sigma(xi)` fails to be Rajchman exactly when `1/xi`
/// is a Pisot number. For rational `xi = p/q` this reduces to `p = 1`.
pub fn rajchman_classify_with_tol(ratio: &RatioParam, tol: f64) -> ClassificationVerdict {
    let (verdict, evidence) = match ratio {
        RatioParam::Rational { numerator, denominator } => {
            let reciprocal = format!("{denominator}/{numerator}");
            if *numerator == 1 {
                (
                    Verdict::NotRajchmanIntegerReciprocal,
                    Evidence {
                        message: format!("1/xi = {denominator} is a positive integer"),
                        reciprocal: denominator.to_string(),
                        dominant_root: Some(*denominator as f64),
                        conjugate_moduli: Vec::new(),
                    },
                )
            } else {
                (
                    Verdict::RajchmanRationalNonIntegerReciprocal,
                    Evidence {
                        message: format!(
                            "1/xi = {reciprocal} is a non-integer rational, hence not an algebraic integer"
                        ),
                        reciprocal,
                        dominant_root: None,
                        conjugate_moduli: Vec::new(),
                    },
                )
            }
        }
        RatioParam::Algebraic {
            value,
            reciprocal_minpoly: None,
        } => (
            Verdict::Unknown,
            Evidence {
                message: "irrational ratio without a minimal-polynomial tag for 1/xi".into(),
                reciprocal: crate::fmt::f17(1.0 / value),
                dominant_root: None,
                conjugate_moduli: Vec::new(),
            },
        ),
        RatioParam::Algebraic {
            value,
            reciprocal_minpoly: Some(poly),
        } => {
            let reciprocal = crate::fmt::f17(1.0 / value);
            match pisot_check(poly, tol) {
                Ok(report) => {
                    let moduli: Vec<f64> = report.roots.iter().map(|z| z.norm()).collect();
                    let (verdict, message) = match report.verdict {
                        PisotVerdict::Pisot => (
                            Verdict::NotRajchmanPisotReciprocal,
                            "1/xi is a Pisot number: all conjugates inside the unit disk",
                        ),
                        PisotVerdict::NotPisot => (
                            Verdict::RajchmanNotPisotReciprocal,
                            "1/xi is not a Pisot number: some conjugate outside the unit disk",
                        ),
                        PisotVerdict::Inconclusive => (
                            Verdict::Unknown,
                            "a conjugate modulus lies within tolerance of 1; refine precision",
                        ),
                    };
                    (
                        verdict,
                        Evidence {
                            message: message.into(),
                            reciprocal,
                            dominant_root: report.dominant_root,
                            conjugate_moduli: if report.dominant_root.is_some() {
                                report.conjugate_moduli
                            } else {
                                moduli
                            },
                        },
                    )
                }
                Err(e) => (
                    Verdict::Unknown,
                    Evidence {
                        message: format!("tag rejected: {e}"),
                        reciprocal,
                        dominant_root: None,
                        conjugate_moduli: Vec::new(),
                    },
                ),
            }
        }
    };
    ClassificationVerdict {
        ratio: ratio.clone(),
        verdict,
        evidence,
    }
}
