//! Python bindings. Matrices cross the boundary as nested lists of
//! `complex`, row-major.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use qcv::verify::{run_suite, Suite};
use qcv::{ComplexMatrix, Error, QuditDim, RepKind, Tolerance};

create_exception!(qudit_cv, QuditError, PyException);

fn err(e: Error) -> PyErr {
    QuditError::new_err(e.to_string())
}

fn dim(d: usize) -> PyResult<QuditDim> {
    QuditDim::new(d).map_err(err)
}

fn rows(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m[(r, c)]).collect())
        .collect()
}

fn parse_rep(name: &str) -> PyResult<RepKind> {
    name.parse().map_err(err)
}

/// Number representation: `N`, shift `X`, clock `Z` and `theta_z`.
#[pyclass(frozen, module = "qudit_cv")]
struct NumberRep(qcv::NumberRep);

#[pymethods]
impl NumberRep {
    #[getter]
    fn d(&self) -> usize {
        self.0.dim().get()
    }
    #[getter(N)]
    fn n_op(&self) -> Vec<Vec<Complex64>> {
        rows(self.0.n_op())
    }
    #[getter(X)]
    fn x_op(&self) -> Vec<Vec<Complex64>> {
        rows(self.0.x_op())
    }
    #[getter(Z)]
    fn z_op(&self) -> Vec<Vec<Complex64>> {
        rows(self.0.z_op())
    }
    #[getter]
    fn theta_z(&self) -> Vec<Vec<Complex64>> {
        rows(self.0.theta_z())
    }
    /// DFT sign (+1 or -1) whose columns diagonalize `theta_z`.
    #[getter]
    fn dft_sign(&self) -> i32 {
        self.0.phase_sign().value()
    }
    /// `X(x) = exp(i x theta_z)`.
    fn continuous_x(&self, x: f64) -> PyResult<Vec<Vec<Complex64>>> {
        qcv::continuous_x(&self.0, x).map(|m| rows(&m)).map_err(err)
    }
    /// `Z(z) = exp(i z N)`.
    fn continuous_z(&self, z: f64) -> PyResult<Vec<Vec<Complex64>>> {
        qcv::continuous_z(&self.0, z).map(|m| rows(&m)).map_err(err)
    }
    fn __repr__(&self) -> String {
        format!("NumberRep(d={})", self.0.dim())
    }
}

/// SU(2) weight representation in the `|j,m)_z` basis.
#[pyclass(frozen, module = "qudit_cv")]
struct WeightRep(qcv::WeightRep);

#[pymethods]
impl WeightRep {
    #[getter]
    fn d(&self) -> usize {
        self.0.dim().get()
    }
    #[getter(X)]
    fn x_op(&self) -> Vec<Vec<Complex64>> {
        rows(self.0.x_op())
    }
    #[getter(Z)]
    fn z_op(&self) -> Vec<Vec<Complex64>> {
        rows(self.0.z_op())
    }
    #[getter]
    fn theta_z(&self) -> Vec<Vec<Complex64>> {
        rows(self.0.theta_z())
    }
    fn __repr__(&self) -> String {
        format!("WeightRep(d={})", self.0.dim())
    }
}

/// SU(2) phase representation; matrices are in z-weight coordinates.
#[pyclass(frozen, module = "qudit_cv")]
struct PhaseRep(qcv::PhaseRep);

#[pymethods]
impl PhaseRep {
    #[getter]
    fn d(&self) -> usize {
        self.0.dim().get()
    }
    /// Phase states as the columns of a matrix.
    #[getter]
    fn phase_states(&self) -> Vec<Vec<Complex64>> {
        rows(&self.0.phase_state_matrix())
    }
    #[getter(X)]
    fn x_op(&self) -> Vec<Vec<Complex64>> {
        rows(self.0.x_op())
    }
    #[getter(Z)]
    fn z_op(&self) -> Vec<Vec<Complex64>> {
        rows(self.0.z_op())
    }
    #[getter]
    fn theta_x(&self) -> Vec<Vec<Complex64>> {
        rows(self.0.theta_x())
    }
    #[getter]
    fn sign(&self) -> i32 {
        self.0.sign().value()
    }
    #[getter]
    fn half_offset(&self) -> f64 {
        self.0.half_offset()
    }
    fn __repr__(&self) -> String {
        format!("PhaseRep(d={})", self.0.dim())
    }
}

/// Calibrated Kerr SUM gate.
#[pyclass(frozen, module = "qudit_cv")]
struct SumCalibration(qcv::SumCalibration);

#[pymethods]
impl SumCalibration {
    #[getter]
    fn d(&self) -> usize {
        self.0.d.get()
    }
    #[getter]
    fn chi(&self) -> f64 {
        self.0.chi
    }
    #[getter]
    fn t_star(&self) -> f64 {
        self.0.t_star
    }
    #[getter]
    fn chi_t(&self) -> f64 {
        self.0.chi_t()
    }
    #[getter]
    fn sign(&self) -> i32 {
        self.0.sign.value()
    }
    #[getter]
    fn fidelity(&self) -> f64 {
        self.0.fidelity
    }
    /// Dense `d² × d²` gate in the two-mode number basis.
    fn gate(&self) -> PyResult<Vec<Vec<Complex64>>> {
        qcv::sum_gate(&self.0).map(|m| rows(&m)).map_err(err)
    }
    /// Gate in the hybrid number ⊗ phase basis.
    fn hybrid_matrix(&self) -> PyResult<Vec<Vec<Complex64>>> {
        qcv::hybrid_sum_matrix(&self.0).map(|m| rows(&m)).map_err(err)
    }
    /// Calibration record as JSON (17 significant digits).
    fn to_json(&self) -> PyResult<String> {
        qcv::json::to_string(&self.0, false).map_err(|e| QuditError::new_err(e.to_string()))
    }
    fn __repr__(&self) -> String {
        format!(
            "SumCalibration(d={}, chi_t={}, sign={}, fidelity={})",
            self.0.d,
            self.0.chi_t(),
            self.0.sign.value(),
            self.0.fidelity
        )
    }
}

#[pyfunction]
fn build_number_rep(d: usize) -> PyResult<NumberRep> {
    qcv::build_number_rep(dim(d)?).map(NumberRep).map_err(err)
}

#[pyfunction]
fn build_weight_rep(d: usize) -> PyResult<WeightRep> {
    qcv::build_weight_rep(dim(d)?).map(WeightRep).map_err(err)
}

#[pyfunction]
fn build_phase_rep(d: usize) -> PyResult<PhaseRep> {
    qcv::build_phase_rep(dim(d)?).map(PhaseRep).map_err(err)
}

#[pyfunction]
fn fourier_gate(d: usize) -> PyResult<Vec<Vec<Complex64>>> {
    Ok(rows(&qcv::fourier_gate(dim(d)?)))
}

#[pyfunction]
#[pyo3(signature = (d, chi = 1.0))]
fn calibrate_sum(d: usize, chi: f64) -> PyResult<SumCalibration> {
    qcv::calibrate_sum(dim(d)?, chi).map(SumCalibration).map_err(err)
}

/// `X^a Z^b` in the named representation.
#[pyfunction]
fn pauli_element(rep: &str, d: usize, a: i64, b: i64) -> PyResult<Vec<Vec<Complex64>>> {
    let r = parse_rep(rep)?.build(dim(d)?).map_err(err)?;
    Ok(rows(&qcv::pauli_element(r.as_ref(), a, b).matrix))
}

/// `(expected, measured, residual)` for `ZX = ωXZ`.
#[pyfunction]
#[pyo3(signature = (rep, d, tol = 1e-10))]
fn commutation_phase(rep: &str, d: usize, tol: f64) -> PyResult<(Complex64, Complex64, f64)> {
    let r = parse_rep(rep)?.build(dim(d)?).map_err(err)?;
    let report = qcv::commutation_phase(r.as_ref(), Tolerance::new(tol).map_err(err)?).map_err(err)?;
    Ok((report.expected, report.measured, report.residual))
}

/// Runs a verification suite; returns one dict per check.
#[pyfunction]
#[pyo3(signature = (suite, d, reps = None, tol = None))]
fn verify<'py>(
    py: Python<'py>,
    suite: &str,
    d: usize,
    reps: Option<Vec<String>>,
    tol: Option<f64>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let suite: Suite = suite.parse().map_err(err)?;
    let reps = match reps {
        None => RepKind::ALL.to_vec(),
        Some(names) => names.iter().map(|n| parse_rep(n)).collect::<PyResult<_>>()?,
    };
    let tol = tol.map(Tolerance::new).transpose().map_err(err)?;
    let d = dim(d)?;
    let checks = py.detach(|| run_suite(suite, d, &reps, tol));
    checks
        .into_iter()
        .map(|c| {
            let dict = PyDict::new(py);
            dict.set_item("suite", c.suite)?;
            dict.set_item("name", c.name)?;
            dict.set_item("d", c.d)?;
            dict.set_item("residual", c.residual)?;
            dict.set_item("tolerance", c.tolerance)?;
            dict.set_item("passed", c.passed)?;
            dict.set_item("detail", c.detail)?;
            Ok(dict)
        })
        .collect()
}

/// Runs a sweep; returns `(d, metric, value)` rows sorted by metric then `d`.
#[pyfunction]
fn sweep(py: Python<'_>, metrics: &str, dims: &str) -> PyResult<Vec<(usize, String, f64)>> {
    let metrics = qcv::Metric::parse_list(metrics).map_err(err)?;
    let dims = qcv::parse_dims(dims).map_err(err)?;
    let records = py.detach(|| qcv::run_sweep(&metrics, &dims)).map_err(err)?;
    Ok(records.into_iter().map(|r| (r.d, r.metric, r.value)).collect())
}

#[pymodule]
fn qudit_cv(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("QuditError", m.py().get_type::<QuditError>())?;
    m.add_class::<NumberRep>()?;
    m.add_class::<WeightRep>()?;
    m.add_class::<PhaseRep>()?;
    m.add_class::<SumCalibration>()?;
    m.add_function(wrap_pyfunction!(build_number_rep, m)?)?;
    m.add_function(wrap_pyfunction!(build_weight_rep, m)?)?;
    m.add_function(wrap_pyfunction!(build_phase_rep, m)?)?;
    m.add_function(wrap_pyfunction!(fourier_gate, m)?)?;
    m.add_function(wrap_pyfunction!(calibrate_sum, m)?)?;
    m.add_function(wrap_pyfunction!(pauli_element, m)?)?;
    m.add_function(wrap_pyfunction!(commutation_phase, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    Ok(())
}
