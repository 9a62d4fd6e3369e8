use num_complex::Complex64;
use serde::Serialize;

use crate::circlemeasure::{coefficient_table, CoefficientMethod, RatioParam, StageLefts, DEFAULT_MAX_GENERATION};
use crate::fmt::{serialize_complex_vec, serialize_display};
use crate::{Error, Result};

const WEIGHT_TOL: f64 = 1e-12;

/// Probability measure `sum w_k delta(zeta_k)` on the closed disk.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiskAtomSet {
    #[serde(serialize_with = "serialize_complex_vec")]
    atoms: Vec<Complex64>,
    weights: Vec<f64>,
}

impl DiskAtomSet {
    pub fn new(atoms: Vec<Complex64>, weights: Vec<f64>) -> Result<Self> {
        if atoms.len() != weights.len() {
            return Err(Error::LengthMismatch {
                expected: atoms.len(),
                got: weights.len(),
            });
        }
        if atoms.is_empty() {
            return Err(Error::InvalidParameter("atom set is empty".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(**w >= 0.0)) {
            return Err(Error::InvalidParameter(format!("negative weight {w}")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::InvalidParameter(format!("weights sum to {total}, not 1")));
        }
        if let Some(z) = atoms.iter().find(|z| !(z.norm() <= 1.0)) {
            return Err(Error::OutsideDisk { modulus: z.norm() });
        }
        Ok(DiskAtomSet { atoms, weights })
    }

    pub fn dirac(lambda: Complex64) -> Result<Self> {
        Self::new(vec![lambda], vec![1.0])
    }

    pub fn atoms(&self) -> &[Complex64] {
        &self.atoms
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn max_modulus(&self) -> f64 {
        self.atoms.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `y_j = sum_k w_k zeta_k^j`, `j = 0..=degree`.
    pub fn moments(&self, degree: usize) -> MomentVector {
        let mut y = vec![Complex64::new(0.0, 0.0); degree + 1];
        for (z, &w) in self.atoms.iter().zip(&self.weights) {
            if w == 0.0 {
                continue;
            }
            let mut p = Complex64::new(w, 0.0);
            for slot in y.iter_mut() {
                *slot += p;
                p *= z;
            }
        }
        MomentVector::new(y, format!("atoms({})", self.len()))
    }
}

/// Entries `y_0..y_D` of the moment sequence of a measure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentVector {
    pub source: String,
    #[serde(serialize_with = "serialize_complex_vec")]
    pub entries: Vec<Complex64>,
    /// Per-entry bound on the distance to the exact moment, when the entries
    /// come from a truncated computation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_bounds: Option<Vec<f64>>,
}

impl MomentVector {
    pub fn new(entries: Vec<Complex64>, source: impl Into<String>) -> Self {
        MomentVector {
            source: source.into(),
            entries,
            error_bounds: None,
        }
    }

    pub fn degree(&self) -> usize {
        self.entries.len().saturating_sub(1)
    }

    pub fn error_bound(&self, j: usize) -> f64 {
        self.error_bounds
            .as_ref()
            .and_then(|b| b.get(j).copied())
            .unwrap_or(0.0)
    }
}

/// `(lambda^j)_{j=0..=degree}` for `|lambda| < 1`.
pub fn phi_lambda(lambda: Complex64, degree: usize) -> Result<MomentVector> {
    if !(lambda.norm() < 1.0) {
        return Err(Error::OutsideDisk { modulus: lambda.norm() });
    }
    let mut y = DiskAtomSet {
        atoms: vec![lambda],
        weights: vec![1.0],
    }
    .moments(degree);
    y.source = format!("phi({}, {})", lambda.re, lambda.im);
    Ok(y)
}

/// Measures whose moment vectors can be produced.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeasureSpec {
    Atoms(DiskAtomSet),
    /// The Cantor measure itself, through the product formula.
    Cantor {
        #[serde(serialize_with = "serialize_display")]
        ratio: RatioParam,
        tol: f64,
    },
    /// Normalized Lebesgue measure on the stage `E_m`.
    CantorStage {
        #[serde(serialize_with = "serialize_display")]
        ratio: RatioParam,
        stage: u32,
    },
    /// Normalized arc length on the circle.
    Lebesgue,
}

/// `y_j = nu_hat(-j) = int t^j d nu(t)`, with `[0, 1]` carried to the circle
/// by `s -> exp(2 pi i s)` for the Cantor measures.
pub fn moment_vector(measure: &MeasureSpec, degree: usize) -> Result<MomentVector> {
    match measure {
        MeasureSpec::Atoms(set) => Ok(set.moments(degree)),
        MeasureSpec::Lebesgue => {
            let mut y = vec![Complex64::new(0.0, 0.0); degree + 1];
            y[0] = Complex64::new(1.0, 0.0);
            Ok(MomentVector::new(y, "lebesgue"))
        }
        MeasureSpec::Cantor { ratio, tol } => {
            let table = coefficient_table(ratio, 0..=degree as i64, CoefficientMethod::Product { tol: *tol })?;
            Ok(MomentVector {
                source: format!("cantor({ratio})"),
                entries: table.values.iter().map(|v| v.conj()).collect(),
                error_bounds: Some(table.tail_bounds),
            })
        }
        MeasureSpec::CantorStage { ratio, stage } => {
            let lefts = StageLefts::new(ratio, *stage, DEFAULT_MAX_GENERATION)?;
            let entries = (0..=degree as i64)
                .map(|j| crate::circlemeasure::oracle_from_lefts(&lefts, *stage, -j))
                .collect();
            Ok(MomentVector::new(entries, format!("cantor_stage({ratio}, {stage})")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn phi_examples() {
        assert_eq!(
            phi_lambda(c(0.0, 0.0), 3).unwrap().entries,
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]
        );
        assert_eq!(
            phi_lambda(c(0.5, 0.0), 3).unwrap().entries,
            vec![c(1.0, 0.0), c(0.5, 0.0), c(0.25, 0.0), c(0.125, 0.0)]
        );
        assert!(phi_lambda(c(1.0, 0.0), 3).is_err());
    }

    #[test]
    fn atom_set_validation() {
        assert!(DiskAtomSet::new(vec![c(0.1, 0.0)], vec![0.5]).is_err());
        assert!(DiskAtomSet::new(vec![c(1.1, 0.0)], vec![1.0]).is_err());
        assert!(DiskAtomSet::new(vec![c(0.1, 0.0), c(0.2, 0.0)], vec![1.5, -0.5]).is_err());
        assert!(DiskAtomSet::new(vec![c(0.1, 0.0)], vec![1.0, 0.0]).is_err());
        let set = DiskAtomSet::new(vec![c(0.5, 0.0), c(0.0, -0.5)], vec![0.25, 0.75]).unwrap();
        let y = set.moments(2);
        assert_eq!(y.entries[0], c(1.0, 0.0));
        assert!((y.entries[2] - c(0.25 * 0.25 + 0.75 * -0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn lebesgue_and_dirac_moments() {
        let y = moment_vector(&MeasureSpec::Lebesgue, 4).unwrap();
        assert_eq!(y.entries[0], c(1.0, 0.0));
        assert!(y.entries[1..].iter().all(|v| *v == c(0.0, 0.0)));

        let stage0 = MeasureSpec::CantorStage {
            ratio: RatioParam::rational(1, 3).unwrap(),
            stage: 0,
        };
        let y = moment_vector(&stage0, 4).unwrap();
        assert_eq!(y.entries[0], c(1.0, 0.0));
        assert!(y.entries[1..].iter().all(|v| v.norm() < 1e-15));

        let lam = c(0.3, -0.2);
        let y = moment_vector(&MeasureSpec::Atoms(DiskAtomSet::dirac(lam).unwrap()), 6).unwrap();
        assert_eq!(y.entries, phi_lambda(lam, 6).unwrap().entries);
    }

    #[test]
    fn cantor_moments_are_conjugate_coefficients() {
        let ratio = RatioParam::rational(1, 3).unwrap();
        let y = moment_vector(
            &MeasureSpec::Cantor {
                ratio: ratio.clone(),
                tol: 1e-12,
            },
            9,
        )
        .unwrap();
        assert_eq!(y.entries[0], c(1.0, 0.0));
        let stage = moment_vector(&MeasureSpec::CantorStage { ratio, stage: 14 }, 9).unwrap();
        for j in 0..=9 {
            let bound = 1e-12 + 2.0 * std::f64::consts::PI * j as f64 * (1.0f64 / 3.0).powi(14);
            assert!((y.entries[j] - stage.entries[j]).norm() <= bound);
        }
    }
}
