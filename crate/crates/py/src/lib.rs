//! Python bindings: `import dissjacobi`.

use num_complex::Complex64 as C64;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use dissjacobi::inverse::{self, BlockData, MixedData};
use dissjacobi::io::{from_json, to_json};
use dissjacobi::jacobi::{self, charpoly, Eig, FiniteJacobi, JacobiClass, Spectrum};
use dissjacobi::livsic::{model_from_spectrum, triangular_to_jacobi};
use dissjacobi::mfunc;
use dissjacobi::semiinf::{self, ChebyshevVariant, VolterraParams};
use dissjacobi::verify::{self, Suite, SuiteParams};
use dissjacobi::{Error, ErrorKind, Tolerances};

create_exception!(dissjacobi, DissJacobiError, PyValueError, "Base class for library errors.");
create_exception!(dissjacobi, ParseError, DissJacobiError, "Malformed input.");
create_exception!(dissjacobi, DomainError, DissJacobiError, "Input outside the domain of the operation.");
create_exception!(dissjacobi, NumericalError, DissJacobiError, "Convergence or precision failure.");

fn err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e.kind() {
        ErrorKind::Parse => ParseError::new_err(msg),
        ErrorKind::Domain => DomainError::new_err(msg),
        ErrorKind::Numerical => NumericalError::new_err(msg),
    }
}

/// Defaults overridden by a `{name: value}` dict.
fn tolerances(tol: Option<&Bound<'_, PyDict>>) -> PyResult<Tolerances> {
    let mut t = Tolerances::default();
    if let Some(d) = tol {
        for (k, v) in d.iter() {
            t.set(&k.extract::<String>()?, v.extract::<f64>()?).map_err(err)?;
        }
    }
    Ok(t)
}

fn spectrum_from(eigs: Vec<(C64, usize)>, tol: &Tolerances) -> PyResult<Spectrum> {
    Spectrum::new(eigs.into_iter().map(|(z, mult)| Eig { z, mult }).collect(), tol).map_err(err)
}

fn spectrum_to(s: &Spectrum) -> Vec<(C64, usize)> {
    s.entries.iter().map(|e| (e.z, e.mult)).collect()
}

fn variant(name: &str) -> PyResult<ChebyshevVariant> {
    match name {
        "standard" => Ok(ChebyshevVariant::Standard),
        "modified" => Ok(ChebyshevVariant::Modified),
        other => Err(ParseError::new_err(format!("unknown variant `{other}`"))),
    }
}

/// Tri-diagonal matrix with complex `b1`, real `b_2..b_n` and real `a_k`.
#[pyclass(name = "JacobiMatrix", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyJacobi {
    inner: FiniteJacobi,
}

impl From<FiniteJacobi> for PyJacobi {
    fn from(inner: FiniteJacobi) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyJacobi {
    #[new]
    fn new(b1: C64, b: Vec<f64>, a: Vec<f64>) -> PyResult<Self> {
        Ok(FiniteJacobi::any(b1, b, a).map_err(err)?.into())
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn b1(&self) -> C64 {
        self.inner.b1()
    }

    /// `b_2, ..., b_n`.
    #[getter]
    fn b(&self) -> Vec<f64> {
        self.inner.b_rest().to_vec()
    }

    #[getter]
    fn a(&self) -> Vec<f64> {
        self.inner.a_all().to_vec()
    }

    /// `"dissipative"`, `"extended"` or `"self_adjoint"`.
    #[getter]
    fn kind(&self) -> &'static str {
        match self.inner.class() {
            JacobiClass::Dissipative => "dissipative",
            JacobiClass::Extended => "extended",
            JacobiClass::SelfAdjoint => "self_adjoint",
        }
    }

    /// Eigenvalues with algebraic multiplicities.
    #[pyo3(signature = (tol = None))]
    fn spectrum(&self, tol: Option<&Bound<'_, PyDict>>) -> PyResult<Vec<(C64, usize)>> {
        Ok(spectrum_to(&jacobi::spectrum(&self.inner, &tolerances(tol)?).map_err(err)?))
    }

    /// `((J - z)^{-1} e_1, e_1)`.
    #[pyo3(signature = (z, tol = None))]
    fn weyl(&self, z: C64, tol: Option<&Bound<'_, PyDict>>) -> PyResult<C64> {
        mfunc::weyl_m(&self.inner, z, &tolerances(tol)?).map_err(err)
    }

    /// Coefficients of `det(zI - J)`, constant term first.
    fn charpoly(&self) -> Vec<C64> {
        charpoly(&self.inner).coeffs().to_vec()
    }

    fn real_part(&self) -> Self {
        self.inner.real_part().into()
    }

    fn dense(&self) -> Vec<Vec<C64>> {
        let d = self.inner.dense();
        (0..d.rows()).map(|i| (0..d.cols()).map(|j| d[(i, j)]).collect()).collect()
    }

    fn to_json(&self) -> String {
        to_json(&self.inner)
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(from_json::<FiniteJacobi>(s).map_err(err)?.into())
    }

    fn __repr__(&self) -> String {
        format!("JacobiMatrix(b1={}, b={:?}, a={:?})", self.inner.b1(), self.inner.b_rest(), self.inner.a_all())
    }
}

/// The dissipative matrix with the given eigenvalues; `method` is `"peel"`
/// or `"livsic"`.
#[pyfunction]
#[pyo3(signature = (eigs, method = "peel", tol = None))]
fn reconstruct(eigs: Vec<(C64, usize)>, method: &str, tol: Option<&Bound<'_, PyDict>>) -> PyResult<PyJacobi> {
    let t = tolerances(tol)?;
    let s = spectrum_from(eigs, &t)?;
    let j = match method {
        "peel" => inverse::reconstruct_from_spectrum(&s, &t),
        "livsic" => model_from_spectrum(&s).and_then(|m| triangular_to_jacobi(&m, &t)).map(|c| c.jacobi),
        other => return Err(ParseError::new_err(format!("unknown method `{other}`"))),
    };
    Ok(j.map_err(err)?.into())
}

/// Livsic conversion: the Jacobi matrix and the unitary `U` with `UJ = AU`.
#[pyfunction]
#[pyo3(signature = (eigs, tol = None))]
fn livsic(eigs: Vec<(C64, usize)>, tol: Option<&Bound<'_, PyDict>>) -> PyResult<(PyJacobi, Vec<Vec<C64>>)> {
    let t = tolerances(tol)?;
    let s = spectrum_from(eigs, &t)?;
    let c = model_from_spectrum(&s).and_then(|m| triangular_to_jacobi(&m, &t)).map_err(err)?;
    let u = (0..c.u.rows()).map(|i| (0..c.u.cols()).map(|j| c.u[(i, j)]).collect()).collect();
    Ok((c.jacobi.into(), u))
}

/// Tail of an `n x n` matrix from its leading block and part of its spectrum.
#[pyfunction]
#[pyo3(signature = (prefix, eigs, n, tol = None))]
fn mixed_recover(
    prefix: &PyJacobi,
    eigs: Vec<(C64, usize)>,
    n: usize,
    tol: Option<&Bound<'_, PyDict>>,
) -> PyResult<PyJacobi> {
    let t = tolerances(tol)?;
    let d = MixedData { n, prefix: prefix.inner.clone(), spectrum: spectrum_from(eigs, &t)? };
    Ok(inverse::mixed_recover(&d, &t).map_err(err)?.into())
}

/// Matrix with `a_p = 0` from the non-real spectrum of the upper block, real
/// eigenvalues of the lower one and the known end of the lower block.
#[pyfunction]
#[pyo3(signature = (n, p, nonreal, real_eigs, known_tail, tol = None))]
fn block_recover(
    n: usize,
    p: usize,
    nonreal: Vec<(C64, usize)>,
    real_eigs: Vec<f64>,
    known_tail: Vec<f64>,
    tol: Option<&Bound<'_, PyDict>>,
) -> PyResult<PyJacobi> {
    let t = tolerances(tol)?;
    let d = BlockData { n, p, nonreal_spectrum: spectrum_from(nonreal, &t)?, real_eigs, known_tail };
    Ok(inverse::block_recover(&d, &t).map_err(err)?.into())
}

/// Largest deviation in the Green identity at an eigenvalue of multiplicity `mult`.
#[pyfunction]
#[pyo3(signature = (j, z0, mult, tol = None))]
fn green_residual(j: &PyJacobi, z0: C64, mult: usize, tol: Option<&Bound<'_, PyDict>>) -> PyResult<f64> {
    mfunc::green_residual(&j.inner, z0, mult, &tolerances(tol)?).map_err(err)
}

/// `N x N` truncation of the Volterra matrix.
#[pyfunction]
fn volterra(l: f64, n: usize) -> PyResult<PyJacobi> {
    Ok(semiinf::volterra_jacobi(VolterraParams::new(l, n).map_err(err)?).into())
}

/// `2l / ((2k+1) pi)`.
#[pyfunction]
fn volterra_real_eig(l: f64, k: i64) -> f64 {
    semiinf::volterra_real_eig(l, k)
}

/// `(H^k e_1, e_1)` for `k = 0..=order`, `H` the real part.
#[pyfunction]
fn moments(j: &PyJacobi, order: usize) -> PyResult<Vec<f64>> {
    Ok(semiinf::moments(&j.inner, order).map_err(err)?.gammas)
}

/// Moments of the Volterra real part from the tan series.
#[pyfunction]
fn tan_moments(l: f64, order: usize) -> Vec<f64> {
    semiinf::tan_moments(l, order)
}

#[pyfunction]
fn chebyshev_matrix(variant_name: &str, l: f64, n: usize) -> PyResult<PyJacobi> {
    Ok(semiinf::chebyshev_matrix(variant(variant_name)?, l, n).map_err(err)?.into())
}

/// The non-real eigenvalue of the semi-infinite matrix, or `None`.
#[pyfunction]
#[pyo3(signature = (variant_name, l, tol = None))]
fn chebyshev_eig(variant_name: &str, l: f64, tol: Option<&Bound<'_, PyDict>>) -> PyResult<Option<C64>> {
    Ok(semiinf::chebyshev_eig(variant(variant_name)?, l, &tolerances(tol)?))
}

/// Runs an invariant suite; returns `(check, worst, bound, passed)` rows.
#[pyfunction]
#[pyo3(signature = (suite, n = 8, trials = 50, seed = 0, tol = None))]
fn run_suite(
    suite: &str,
    n: usize,
    trials: usize,
    seed: u64,
    tol: Option<&Bound<'_, PyDict>>,
) -> PyResult<Vec<(String, f64, f64, bool)>> {
    let s: Suite = suite.parse().map_err(err)?;
    let rep = verify::run(s, SuiteParams { n, trials, seed }, &tolerances(tol)?).map_err(err)?;
    Ok(rep.rows.into_iter().map(|r| (r.check, r.worst, r.bound, r.pass)).collect())
}

#[pymodule]
#[pyo3(name = "dissjacobi")]
fn dissjacobi_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("DissJacobiError", py.get_type::<DissJacobiError>())?;
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add("DomainError", py.get_type::<DomainError>())?;
    m.add("NumericalError", py.get_type::<NumericalError>())?;
    m.add_class::<PyJacobi>()?;
    m.add_function(wrap_pyfunction!(reconstruct, m)?)?;
    m.add_function(wrap_pyfunction!(livsic, m)?)?;
    m.add_function(wrap_pyfunction!(mixed_recover, m)?)?;
    m.add_function(wrap_pyfunction!(block_recover, m)?)?;
    m.add_function(wrap_pyfunction!(green_residual, m)?)?;
    m.add_function(wrap_pyfunction!(volterra, m)?)?;
    m.add_function(wrap_pyfunction!(volterra_real_eig, m)?)?;
    m.add_function(wrap_pyfunction!(moments, m)?)?;
    m.add_function(wrap_pyfunction!(tan_moments, m)?)?;
    m.add_function(wrap_pyfunction!(chebyshev_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(chebyshev_eig, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
