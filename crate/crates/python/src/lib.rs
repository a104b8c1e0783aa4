//! Python bindings for `peterson_core`.
//!
//! Subsets are passed as strings in the CLI syntax (`"1,2,4-5"`, `""` for
//! the empty set) together with the rank `n`, or as `Subset` objects.

use std::path::PathBuf;

use num_bigint::BigUint;
use peterson_core as core;
use peterson_core::bikelock::IdentityParams;
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: core::Error) -> PyErr {
    match e {
        core::Error::Cache(msg) => PyIOError::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// A subset of `{1, ..., n-1}`.
#[pyclass(
    name = "Subset",
    module = "peterson",
    frozen,
    eq,
    ord,
    hash,
    from_py_object
)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PySubset(core::SubsetMask);

#[pymethods]
impl PySubset {
    #[new]
    fn new(n: u32, members: &str) -> PyResult<Self> {
        core::SubsetMask::parse(n, members)
            .map(Self)
            .map_err(py_err)
    }

    #[staticmethod]
    fn from_list(n: u32, members: Vec<u32>) -> PyResult<Self> {
        core::SubsetMask::new(n, members).map(Self).map_err(py_err)
    }

    /// Every subset of `{1, ..., n-1}`, ordered by size, then value.
    #[staticmethod]
    fn all(n: u32) -> PyResult<Vec<Self>> {
        Ok(core::SubsetMask::all(n)
            .map_err(py_err)?
            .into_iter()
            .map(Self)
            .collect())
    }

    #[getter]
    fn n(&self) -> u32 {
        self.0.rank()
    }

    fn to_list(&self) -> Vec<u32> {
        self.0.to_vec()
    }

    /// Maximal consecutive runs as `(tail, head)` pairs.
    fn blocks(&self) -> Vec<(u32, u32)> {
        self.0
            .decompose()
            .iter()
            .map(|b| (b.tail(), b.head()))
            .collect()
    }

    fn is_consecutive(&self) -> bool {
        self.0.is_consecutive()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __contains__(&self, index: u32) -> bool {
        self.0.contains(index)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Subset({}, {:?})", self.0.rank(), self.0.to_string())
    }
}

/// `coeff * t^power` with a nonnegative integer coefficient.
#[pyclass(name = "Monomial", module = "peterson", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyMonomial(core::TMonomial);

#[pymethods]
impl PyMonomial {
    #[new]
    #[pyo3(signature = (coeff, power = 0))]
    fn new(coeff: BigUint, power: u32) -> Self {
        Self(core::TMonomial::new(coeff, power))
    }

    #[getter]
    fn coeff(&self) -> BigUint {
        self.0.coeff().clone()
    }

    #[getter]
    fn power(&self) -> u32 {
        self.0.power()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Monomial({}, {})", self.0.coeff(), self.0.power())
    }
}

fn subset(n: u32, text: &str) -> PyResult<core::SubsetMask> {
    core::SubsetMask::parse(n, text).map_err(py_err)
}

fn key(a: &str, b: &str, c: &str, n: u32) -> PyResult<core::StructureConstantKey> {
    core::StructureConstantKey::new(subset(n, a)?, subset(n, b)?, subset(n, c)?).map_err(py_err)
}

fn rows(table: core::ExpansionTable) -> Vec<(PySubset, PyMonomial)> {
    table
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (PySubset(c), PyMonomial(v)))
        .collect()
}

/// `b_{A,B}^C` from the closed forms.
#[pyfunction]
fn constant(a: &str, b: &str, c: &str, n: u32) -> PyResult<PyMonomial> {
    Ok(PyMonomial(core::b_general(&key(a, b, c, n)?)))
}

/// Whether the positivity criterion predicts `b_{A,B}^C != 0`.
#[pyfunction]
fn nonvanishing(a: &str, b: &str, c: &str, n: u32) -> PyResult<bool> {
    Ok(core::nonvanishing(&key(a, b, c, n)?))
}

/// Nonzero rows `(C, b_{A,B}^C)` of `p_A p_B`, ordered by `(|C|, C)`.
#[pyfunction]
#[pyo3(signature = (a, b, n, ordinary = false))]
fn expand(a: &str, b: &str, n: u32, ordinary: bool) -> PyResult<Vec<(PySubset, PyMonomial)>> {
    let (a, b) = (subset(n, a)?, subset(n, b)?);
    let mut table = core::expand_product(&a, &b).map_err(py_err)?;
    if ordinary {
        table.retain(|c, _| c.len() == a.len() + b.len());
    }
    Ok(rows(table))
}

/// The same expansion recovered from the localization oracle.
#[pyfunction]
fn localize_product(a: &str, b: &str, n: u32) -> PyResult<Vec<(PySubset, PyMonomial)>> {
    let table = core::localize_product(&subset(n, a)?, &subset(n, b)?, n).map_err(py_err)?;
    Ok(rows(table))
}

/// `p_A` restricted to the fixed point `w_C`, closed form.
#[pyfunction]
fn restrict(a: &str, c: &str, n: u32) -> PyResult<PyMonomial> {
    Ok(PyMonomial(core::restrict(&subset(n, a)?, &subset(n, c)?)))
}

/// `p_A` restricted to `w_C`, by summing over subwords.
#[pyfunction]
fn subword_restriction(a: &str, c: &str, n: u32) -> PyResult<PyMonomial> {
    Ok(PyMonomial(core::subword_restriction(
        &subset(n, a)?,
        &subset(n, c)?,
    )))
}

/// Certificate for the generalized Vandermonde identity at one point.
#[pyclass(name = "IdentityCertificate", module = "peterson", frozen)]
pub struct PyCertificate(core::IdentityCertificate);

#[pymethods]
impl PyCertificate {
    #[getter]
    fn lhs(&self) -> BigUint {
        self.0.lhs.clone()
    }

    #[getter]
    fn rhs(&self) -> BigUint {
        self.0.rhs.clone()
    }

    #[getter]
    fn s_count(&self) -> u64 {
        self.0.s_count
    }

    #[getter]
    fn v_count(&self) -> u64 {
        self.0.v_count
    }

    #[getter]
    fn vacuous(&self) -> bool {
        self.0.vacuous
    }

    /// `None` unless the bike lock pipeline was run.
    #[getter]
    fn bijection_valid(&self) -> Option<bool> {
        self.0.bijection.as_ref().map(|b| b.valid())
    }

    #[getter]
    fn elapsed_ms(&self) -> f64 {
        self.0.elapsed_ms
    }

    /// `(v, s)` pairs of the bijection, if traced.
    #[getter]
    fn trace(&self) -> Option<Vec<(String, String)>> {
        self.0
            .trace
            .as_ref()
            .map(|pairs| pairs.iter().map(|p| (p.v.clone(), p.s.clone())).collect())
    }

    fn passed(&self) -> bool {
        self.0.passed()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("certificates serialize")
    }
}

#[pyfunction]
#[pyo3(signature = (m, n, w, x, y, z, bijection = false, trace = false))]
#[allow(clippy::too_many_arguments)]
fn identity(
    m: i64,
    n: i64,
    w: i64,
    x: i64,
    y: i64,
    z: i64,
    bijection: bool,
    trace: bool,
) -> PyResult<PyCertificate> {
    let params = IdentityParams::new(m, n, w, x, y, z).map_err(py_err)?;
    core::verify_identity(&params, bijection, trace)
        .map(PyCertificate)
        .map_err(py_err)
}

/// Runs a sweep and returns `(checked, mismatches, counterexamples)`.
#[pyfunction]
#[pyo3(signature = (mode, max_n = 5, min_n = 2))]
fn verify(py: Python<'_>, mode: &str, max_n: u32, min_n: u32) -> PyResult<(u64, u64, Vec<String>)> {
    let report = py
        .detach(|| match mode {
            "formula" => Ok(core::verify::verify_formula(min_n, max_n)),
            "oracle" => Ok(core::verify::verify_restrictions(min_n, max_n)),
            "conversion" => Ok(core::verify::verify_conversion(min_n, max_n)),
            other => Err(other.to_string()),
        })
        .map_err(|m| PyValueError::new_err(format!("unknown mode {m:?}")))?
        .map_err(py_err)?;
    Ok((report.checked, report.mismatches, report.counterexamples))
}

/// Memoizing evaluator with an optional on-disk snapshot.
#[pyclass(name = "Engine", module = "peterson", frozen)]
pub struct PyEngine {
    inner: core::StructureEngine,
}

#[pymethods]
impl PyEngine {
    #[new]
    #[pyo3(signature = (cache = None))]
    fn new(cache: Option<PathBuf>) -> PyResult<Self> {
        let inner = core::StructureEngine::new();
        if let Some(path) = cache {
            core::cache::load_into(&inner, &path).map_err(py_err)?;
        }
        Ok(Self { inner })
    }

    fn constant(&self, a: &str, b: &str, c: &str, n: u32) -> PyResult<PyMonomial> {
        Ok(PyMonomial(self.inner.b_general(&key(a, b, c, n)?)))
    }

    fn expand(&self, a: &str, b: &str, n: u32) -> PyResult<Vec<(PySubset, PyMonomial)>> {
        let table = self
            .inner
            .expand_product(&subset(n, a)?, &subset(n, b)?)
            .map_err(py_err)?;
        Ok(rows(table))
    }

    fn save(&self, path: PathBuf) -> PyResult<usize> {
        core::cache::save(&self.inner, &path).map_err(py_err)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

#[pymodule]
pub fn peterson(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySubset>()?;
    m.add_class::<PyMonomial>()?;
    m.add_class::<PyCertificate>()?;
    m.add_class::<PyEngine>()?;
    m.add_function(wrap_pyfunction!(constant, m)?)?;
    m.add_function(wrap_pyfunction!(nonvanishing, m)?)?;
    m.add_function(wrap_pyfunction!(expand, m)?)?;
    m.add_function(wrap_pyfunction!(localize_product, m)?)?;
    m.add_function(wrap_pyfunction!(restrict, m)?)?;
    m.add_function(wrap_pyfunction!(subword_restriction, m)?)?;
    m.add_function(wrap_pyfunction!(identity, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
