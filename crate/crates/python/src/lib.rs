//! Python bindings. Report-like results come back as plain dicts built
//! from the same serialization the CLI uses.

use modsupport::circlemeasure::CoefficientMethod;
use modsupport::peaks::MetricSumMode;
use modsupport::support::{MeasureSpec, SearchConfig, VerifyConfig};
use modsupport::{Complex64, Error};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::Serialize;

fn err(e: Error) -> PyErr {
    match e {
        Error::CapExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "RatioParam", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyRatio(modsupport::RatioParam);

#[pymethods]
impl PyRatio {
    #[staticmethod]
    fn rational(numerator: u64, denominator: u64) -> PyResult<Self> {
        modsupport::RatioParam::rational(numerator, denominator)
            .map(PyRatio)
            .map_err(err)
    }

    /// `poly` lists the minimal polynomial of `1/xi`, leading coefficient first.
    #[staticmethod]
    #[pyo3(signature = (poly, approx=None))]
    fn algebraic(poly: Vec<i64>, approx: Option<f64>) -> PyResult<Self> {
        modsupport::RatioParam::algebraic(poly, approx)
            .map(PyRatio)
            .map_err(err)
    }

    #[staticmethod]
    fn untagged(value: f64) -> PyResult<Self> {
        modsupport::RatioParam::untagged(value).map(PyRatio).map_err(err)
    }

    #[getter]
    fn value(&self) -> f64 {
        self.0.value()
    }

    fn __repr__(&self) -> String {
        format!("RatioParam({})", self.0)
    }
}

#[pyclass(name = "CoefficientSeries", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySeries(modsupport::CoefficientSeries);

#[pymethods]
impl PySeries {
    #[new]
    fn new(coefficients: Vec<Complex64>) -> Self {
        PySeries(modsupport::CoefficientSeries::new(coefficients))
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    #[getter]
    fn coefficients(&self) -> Vec<Complex64> {
        self.0.coefficients().to_vec()
    }

    #[getter]
    fn truncation_residual(&self) -> Option<f64> {
        self.0.truncation_residual()
    }

    fn wiener_norm(&self) -> f64 {
        self.0.wiener_norm()
    }

    fn evaluate(&self, z: Complex64) -> PyResult<Complex64> {
        self.0.evaluate(z).map_err(err)
    }

    #[pyo3(signature = (grid=1 << 16))]
    fn sup_norm_estimate<'py>(&self, py: Python<'py>, grid: usize) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.sup_norm_estimate(grid).map_err(err)?)
    }

    fn pairing(&self, y: &PyMoments) -> PyResult<Complex64> {
        self.0.pairing(&y.0.entries).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.degree() + 1
    }
}

#[pyclass(name = "MomentVector", frozen)]
struct PyMoments(modsupport::MomentVector);

#[pymethods]
impl PyMoments {
    #[getter]
    fn entries(&self) -> Vec<Complex64> {
        self.0.entries.clone()
    }

    #[getter]
    fn source(&self) -> String {
        self.0.source.clone()
    }

    fn error_bound(&self, j: usize) -> f64 {
        self.0.error_bound(j)
    }

    fn __len__(&self) -> usize {
        self.0.entries.len()
    }
}

#[pyclass(name = "PeakCandidate", frozen)]
struct PyCandidate(modsupport::PeakCandidate);

#[pymethods]
impl PyCandidate {
    #[getter]
    fn series(&self) -> PySeries {
        PySeries(self.0.series.clone())
    }

    #[getter]
    fn beta(&self) -> Complex64 {
        self.0.beta
    }

    #[getter]
    fn vanishes_at_origin(&self) -> bool {
        self.0.vanishes_at_origin
    }

    #[getter]
    fn diagnostics<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.diagnostics)
    }

    fn vanish_at_origin(&self) -> PyResult<PyCandidate> {
        modsupport::vanish_at_origin(&self.0).map(PyCandidate).map_err(err)
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0)
    }
}

#[pyfunction]
fn rajchman_classify<'py>(py: Python<'py>, ratio: &PyRatio) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &modsupport::rajchman_classify(&ratio.0))
}

#[pyfunction]
#[pyo3(signature = (poly, tol=1e-9))]
fn pisot_check<'py>(py: Python<'py>, poly: Vec<i64>, tol: f64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &modsupport::pisot_check(&poly, tol).map_err(err)?)
}

/// `(value, tail_bound)` for the product formula at index `n`.
#[pyfunction]
#[pyo3(signature = (ratio, n, tol=1e-12))]
fn fs_coeff_product(ratio: &PyRatio, n: i64, tol: f64) -> PyResult<(Complex64, f64)> {
    let v = modsupport::fs_coeff_product(&ratio.0, n, tol).map_err(err)?;
    Ok((v.value, v.tail_bound))
}

#[pyfunction]
fn fs_coeff_oracle(ratio: &PyRatio, stage: u32, n: i64) -> PyResult<Complex64> {
    modsupport::fs_coeff_oracle(&ratio.0, stage, n).map_err(err)
}

/// Coefficients for `n = start..=end`. `stage` selects the oracle,
/// otherwise the product formula is used.
#[pyfunction]
#[pyo3(signature = (ratio, start, end, stage=None, tol=1e-12))]
fn coefficient_table(ratio: &PyRatio, start: i64, end: i64, stage: Option<u32>, tol: f64) -> PyResult<Vec<Complex64>> {
    let method = match stage {
        Some(stage) => CoefficientMethod::Oracle { stage },
        None => CoefficientMethod::Product { tol },
    };
    let table = modsupport::coefficient_table(&ratio.0, start..=end, method).map_err(err)?;
    Ok(table.indices().map(|n| table.get(n).unwrap()).collect())
}

/// Stage-`n` intervals as float pairs.
#[pyfunction]
fn cantor_stage(ratio: &PyRatio, n: u32) -> PyResult<Vec<(f64, f64)>> {
    Ok(modsupport::cantor_stage(&ratio.0, n).map_err(err)?.to_f64())
}

#[pyfunction]
fn phi_lambda(lambda: Complex64, degree: usize) -> PyResult<PyMoments> {
    modsupport::phi_lambda(lambda, degree).map(PyMoments).map_err(err)
}

#[pyfunction]
fn atom_moments(atoms: Vec<Complex64>, weights: Vec<f64>, degree: usize) -> PyResult<PyMoments> {
    Ok(PyMoments(
        modsupport::DiskAtomSet::new(atoms, weights)
            .map_err(err)?
            .moments(degree),
    ))
}

/// Moments of the Cantor measure, or of its stage-`stage` approximation.
#[pyfunction]
#[pyo3(signature = (ratio, degree, stage=None, tol=1e-12))]
fn cantor_moments(ratio: &PyRatio, degree: usize, stage: Option<u32>, tol: f64) -> PyResult<PyMoments> {
    let spec = match stage {
        Some(stage) => MeasureSpec::CantorStage {
            ratio: ratio.0.clone(),
            stage,
        },
        None => MeasureSpec::Cantor {
            ratio: ratio.0.clone(),
            tol,
        },
    };
    modsupport::moment_vector(&spec, degree).map(PyMoments).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (series, angles=4096, max_k=20))]
fn sup_over_s0<'py>(py: Python<'py>, series: &PySeries, angles: usize, max_k: u32) -> PyResult<Bound<'py, PyAny>> {
    let result = modsupport::sup_over_s0(&series.0, SearchConfig { angles, max_k }).map_err(err)?;
    to_py(py, &result)
}

#[pyfunction]
#[pyo3(signature = (series, moments, grid=1 << 22, tau=0.2))]
fn verify_support_pair<'py>(
    py: Python<'py>,
    series: &PySeries,
    moments: &PyMoments,
    grid: usize,
    tau: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let report = modsupport::verify_support_pair(&series.0, &moments.0, VerifyConfig { grid, tau }).map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
fn pairing_crosscheck<'py>(
    py: Python<'py>,
    series: &PySeries,
    ratio: &PyRatio,
    stage: u32,
) -> PyResult<Bound<'py, PyAny>> {
    let degree = series.0.degree();
    to_py(
        py,
        &modsupport::pairing_crosscheck(&series.0, &ratio.0, stage, degree).map_err(err)?,
    )
}

#[pyfunction]
fn admissible_parameters<'py>(py: Python<'py>, alpha: f64, xi: f64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &modsupport::admissible_parameters(alpha, xi))
}

/// Closed form when `generations` is omitted, otherwise the partial sum
/// through that generation.
#[pyfunction]
#[pyo3(signature = (xi, alpha, generations=None))]
fn metric_sum(xi: f64, alpha: f64, generations: Option<u32>) -> f64 {
    let mode = generations.map_or(MetricSumMode::ClosedForm, MetricSumMode::Partial);
    modsupport::metric_sum(xi, alpha, mode)
}

/// Builds a peak candidate. Grid sizes, slack and cap are optional
/// overrides of the library defaults.
#[pyfunction]
#[pyo3(signature = (alpha, ratio, generations, degree, damping=None, sup_grid=None, ring_grid=None, deficiency_cap=None))]
#[allow(clippy::too_many_arguments)]
fn build_peak_candidate(
    alpha: f64,
    ratio: &PyRatio,
    generations: u32,
    degree: usize,
    damping: Option<f64>,
    sup_grid: Option<usize>,
    ring_grid: Option<usize>,
    deficiency_cap: Option<f64>,
) -> PyResult<PyCandidate> {
    let mut params = modsupport::PeakParams::new(alpha, ratio.0.clone(), generations, degree);
    if let Some(v) = damping {
        params.damping = v;
    }
    if let Some(v) = sup_grid {
        params.sup_grid = v;
    }
    if let Some(v) = ring_grid {
        params.ring_grid = v;
    }
    if let Some(v) = deficiency_cap {
        params.deficiency_cap = v;
    }
    modsupport::build_peak_candidate(&params).map(PyCandidate).map_err(err)
}

/// Herglotz weight summary: `{c0, total_mass, mass_identity_gap, moments}`.
#[pyfunction]
fn herglotz_weight<'py>(
    py: Python<'py>,
    alpha: f64,
    ratio: &PyRatio,
    generations: u32,
    degree: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let params = modsupport::PeakParams::new(alpha, ratio.0.clone(), generations, degree);
    let w = modsupport::herglotz_weight_moments(&params).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("c0", w.c0())?;
    out.set_item("total_mass", w.total_mass)?;
    out.set_item("mass_identity_gap", w.mass_identity_gap())?;
    out.set_item("moments", w.moments.clone())?;
    Ok(out.into_any())
}

#[pymodule]
fn pymodsupport(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRatio>()?;
    m.add_class::<PySeries>()?;
    m.add_class::<PyMoments>()?;
    m.add_class::<PyCandidate>()?;
    m.add_function(wrap_pyfunction!(rajchman_classify, m)?)?;
    m.add_function(wrap_pyfunction!(pisot_check, m)?)?;
    m.add_function(wrap_pyfunction!(fs_coeff_product, m)?)?;
    m.add_function(wrap_pyfunction!(fs_coeff_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(coefficient_table, m)?)?;
    m.add_function(wrap_pyfunction!(cantor_stage, m)?)?;
    m.add_function(wrap_pyfunction!(phi_lambda, m)?)?;
    m.add_function(wrap_pyfunction!(atom_moments, m)?)?;
    m.add_function(wrap_pyfunction!(cantor_moments, m)?)?;
    m.add_function(wrap_pyfunction!(sup_over_s0, m)?)?;
    m.add_function(wrap_pyfunction!(verify_support_pair, m)?)?;
    m.add_function(wrap_pyfunction!(pairing_crosscheck, m)?)?;
    m.add_function(wrap_pyfunction!(admissible_parameters, m)?)?;
    m.add_function(wrap_pyfunction!(metric_sum, m)?)?;
    m.add_function(wrap_pyfunction!(build_peak_candidate, m)?)?;
    m.add_function(wrap_pyfunction!(herglotz_weight, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
