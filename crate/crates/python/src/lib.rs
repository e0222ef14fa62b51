//! Python bindings for `unruh-core`.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use unruh_core::entanglement;
use unruh_core::frame::{self, RindlerPoint};
use unruh_core::rindler::{self, UnruhParams};
use unruh_core::wigner::{self, DisplacedMomentum, MomentumState};
use unruh_core::ComplexMatrix;

fn py_err(e: unruh_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for unruh_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn rows(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)]).collect())
        .collect()
}

fn matrix(rows: Vec<Vec<Complex64>>) -> PyResult<ComplexMatrix> {
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err("ragged matrix"));
    }
    ComplexMatrix::from_vec(n, cols, rows.into_iter().flatten().collect()).py()
}

/// On-shell momentum `(m cosh delta, m sinh delta, 0, 0)`.
#[pyclass(frozen, skip_from_py_object, name = "Momentum")]
struct PyMomentum {
    inner: MomentumState,
}

#[pymethods]
impl PyMomentum {
    #[new]
    fn new(m: f64, delta: f64) -> PyResult<Self> {
        Ok(Self {
            inner: wigner::kinematics(m, delta).py()?,
        })
    }

    #[getter]
    fn mass(&self) -> f64 {
        self.inner.mass()
    }

    #[getter]
    fn delta(&self) -> f64 {
        self.inner.delta()
    }

    #[getter]
    fn k0(&self) -> f64 {
        self.inner.k0()
    }

    #[getter]
    fn k1(&self) -> f64 {
        self.inner.k1()
    }

    /// `K = k1 / (k0 + m)`
    #[getter]
    fn k_ratio(&self) -> f64 {
        self.inner.k_ratio()
    }

    fn __repr__(&self) -> String {
        format!("Momentum(m={}, delta={})", self.inner.mass(), self.inner.delta())
    }
}

/// Region-I occupation of the fermion vacuum: closed form, matrix value and gap.
#[pyfunction]
fn occupation(py: Python<'_>, omega: f64) -> PyResult<Bound<'_, PyDict>> {
    let occ = rindler::occupation_i(&UnruhParams::from_omega(omega).py()?).py()?;
    let d = PyDict::new(py);
    d.set_item("omega", occ.omega)?;
    d.set_item("closed", occ.closed_form)?;
    d.set_item("matrix", occ.matrix_expectation)?;
    d.set_item("gap", occ.gap)?;
    d.set_item("convention", occ.convention.as_str())?;
    Ok(d)
}

/// Fermion vacuum amplitudes over `|n_I, n_II>` (index `n_I + 2 n_II`).
#[pyfunction]
fn fermion_vacuum(py: Python<'_>, omega: f64) -> PyResult<Bound<'_, PyDict>> {
    let params = UnruhParams::from_omega(omega).py()?;
    let vac = rindler::fermion_unruh_vacuum(&params).py()?;
    let convention = vac.convention.expect("fermion vacuum records its convention");
    let d = PyDict::new(py);
    d.set_item("amplitudes", vac.state.amplitudes().to_vec())?;
    d.set_item("convention", convention.as_str())?;
    d.set_item(
        "annihilation_residual",
        rindler::annihilation_residual(&params, convention).py()?,
    )?;
    d.set_item("schmidt", rindler::wedge_schmidt(&vac).py()?)?;
    Ok(d)
}

/// Schmidt coefficients across regions I | II of the fermion excited state.
#[pyfunction]
fn fermion_excited_schmidt(omega: f64) -> PyResult<Vec<f64>> {
    let exc = rindler::fermion_excited(&UnruhParams::from_omega(omega).py()?).py()?;
    rindler::wedge_schmidt(&exc).py()
}

/// Schmidt coefficients and truncation deficit of a scalar state (level 0 is the vacuum).
#[pyfunction]
#[pyo3(signature = (r, n_max = 64, level = 0))]
fn scalar_schmidt(r: f64, n_max: usize, level: usize) -> PyResult<(Vec<f64>, f64)> {
    let params = UnruhParams::from_squeezing(r).py()?;
    let state = if level == 0 {
        rindler::scalar_unruh_vacuum(&params, n_max).py()?
    } else {
        rindler::scalar_excited(&params, n_max, level).py()?
    };
    Ok((rindler::wedge_schmidt(&state).py()?, state.truncation_deficit))
}

#[pyfunction]
fn wigner_coefficients(p: &PyMomentum, deta: f64) -> PyResult<(f64, f64)> {
    let c = wigner::wigner_coefficients(&p.inner, deta).py()?;
    Ok((c.a, c.b))
}

/// Closed-form 2x2 Wigner matrix.
#[pyfunction]
fn wigner_matrix(p: &PyMomentum, deta: f64) -> PyResult<Vec<Vec<Complex64>>> {
    Ok(rows(wigner::wigner_matrix(&p.inner, deta).py()?.matrix()))
}

/// Little-group matrix composed from spinor boosts.
#[pyfunction]
#[pyo3(signature = (p, deta, comoving = false))]
fn little_group_oracle(p: &PyMomentum, deta: f64, comoving: bool) -> PyResult<Vec<Vec<Complex64>>> {
    let displaced = if comoving {
        DisplacedMomentum::Comoving
    } else {
        DisplacedMomentum::Transformed
    };
    Ok(rows(
        wigner::little_group_oracle_with(&p.inner, deta, displaced)
            .py()?
            .matrix(),
    ))
}

#[pyfunction]
fn closed_form_negativity(p: &PyMomentum, deta: f64) -> PyResult<f64> {
    entanglement::closed_form_negativity(&p.inner, deta).py()
}

#[pyfunction]
fn closed_form_mutual_information<'py>(py: Python<'py>, p: &PyMomentum, deta: f64) -> PyResult<Bound<'py, PyDict>> {
    let c = entanglement::closed_form_mutual_information(&p.inner, deta).py()?;
    let d = PyDict::new(py);
    d.set_item("value", c.value)?;
    d.set_item("terms", c.terms.to_vec())?;
    d.set_item("negative", c.negative)?;
    d.set_item("zero_acceleration_conflict", c.zero_acceleration_conflict)?;
    Ok(d)
}

/// Spin Bell pair with Rob's spin mapped by the Wigner matrix.
#[pyfunction]
fn spin_pair<'py>(py: Python<'py>, p: &PyMomentum, deta: f64) -> PyResult<Bound<'py, PyDict>> {
    let rep = entanglement::spin_pair_report(&p.inner, deta).py()?;
    let d = PyDict::new(py);
    d.set_item("a", rep.coefficients.a)?;
    d.set_item("b", rep.coefficients.b)?;
    d.set_item("unitarity_defect", rep.unitarity_defect)?;
    d.set_item("pre_norm", rep.pre_norm)?;
    d.set_item("amplitudes", rep.state.amplitudes().to_vec())?;
    d.set_item("lambda_min", rep.negativity.lambda_min)?;
    d.set_item("negativity", rep.negativity.exact)?;
    d.set_item("negativity_unnormalized", rep.negativity_unnormalized)?;
    d.set_item("negativity_closed", rep.negativity.closed)?;
    d.set_item("mutual_information", rep.mutual.exact)?;
    d.set_item("mutual_information_closed", rep.mutual.closed.map(|c| c.value))?;
    d.set_item("mutual_information_flag", rep.mutual.discrepancy_flag)?;
    Ok(d)
}

/// Alice and region I of the accelerated scalar pair.
#[pyfunction]
#[pyo3(signature = (r, n_max = 128))]
fn scalar_pair(py: Python<'_>, r: f64, n_max: usize) -> PyResult<Bound<'_, PyDict>> {
    let rep = entanglement::scalar_pair_report(r, n_max).py()?;
    let d = PyDict::new(py);
    d.set_item("mutual_information", rep.mutual.exact)?;
    d.set_item("negativity", rep.negativity.exact)?;
    d.set_item("deficit", rep.deficit)?;
    d.set_item("warning", rep.warning)?;
    Ok(d)
}

/// `2 |lambda_min|` of the partial transpose on subsystem `transposed`.
#[pyfunction]
#[pyo3(signature = (rho, dims, transposed = 1))]
fn negativity(rho: Vec<Vec<Complex64>>, dims: Vec<usize>, transposed: usize) -> PyResult<f64> {
    Ok(entanglement::negativity(&matrix(rho)?, &dims, transposed, None)
        .py()?
        .exact)
}

/// `(S_A, S_R, S_AR, I)` in bits.
#[pyfunction]
fn mutual_information(rho: Vec<Vec<Complex64>>, dims: Vec<usize>) -> PyResult<(f64, f64, f64, f64)> {
    let r = entanglement::mutual_information(&matrix(rho)?, &dims).py()?;
    Ok((r.s_a, r.s_r, r.s_ar, r.exact))
}

/// Upper-index connection `delta omega^a_b` for a coordinate displacement.
#[pyfunction]
fn connection_one_form(eta: f64, xi: f64, displacement: [f64; 4]) -> PyResult<[[f64; 4]; 4]> {
    let point = RindlerPoint::new(eta, xi).py()?;
    Ok(frame::connection_one_form(&point, displacement).py()?.upper)
}

/// `(t, x)` of the Rindler event `(eta, zeta)` for acceleration `a`.
#[pyfunction]
fn rindler_to_minkowski(eta: f64, zeta: f64, a: f64) -> PyResult<(f64, f64)> {
    let e = frame::rindler_to_minkowski(eta, zeta, a).py()?;
    Ok((e.t, e.x))
}

/// Runs the command-line front end; returns `(exit code, stdout)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String) {
    let mut out = Vec::new();
    let code = unruh_core::cli::run(std::iter::once("unruh".to_string()).chain(args), &mut out);
    (code, String::from_utf8_lossy(&out).into_owned())
}

#[pymodule]
fn unruh(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMomentum>()?;
    m.add_function(wrap_pyfunction!(occupation, m)?)?;
    m.add_function(wrap_pyfunction!(fermion_vacuum, m)?)?;
    m.add_function(wrap_pyfunction!(fermion_excited_schmidt, m)?)?;
    m.add_function(wrap_pyfunction!(scalar_schmidt, m)?)?;
    m.add_function(wrap_pyfunction!(wigner_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(wigner_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(little_group_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_negativity, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_mutual_information, m)?)?;
    m.add_function(wrap_pyfunction!(spin_pair, m)?)?;
    m.add_function(wrap_pyfunction!(scalar_pair, m)?)?;
    m.add_function(wrap_pyfunction!(negativity, m)?)?;
    m.add_function(wrap_pyfunction!(mutual_information, m)?)?;
    m.add_function(wrap_pyfunction!(connection_one_form, m)?)?;
    m.add_function(wrap_pyfunction!(rindler_to_minkowski, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
