//! Python bindings. Reports cross the boundary as plain dicts and lists.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde::Serialize;

use combman_core::automata::{
    check_conditions, cofibrant_replacement, deter, normalize, verify_replacement, RelAutomaton,
};
use combman_core::blowup::{blowup, brick_colimit_check, verify_blowup};
use combman_core::pcs::{brick, euclidean_check, RelPcs};
use combman_core::regex::{compile, kleene_fuzz, parse_with, ParseOptions};
use combman_core::samples::{automata_sample, pcs_sample, SampleSizes};
use combman_core::toolkit::appendix_identity_suite;
use combman_core::words::BrickIndex;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A relational precubical set, validated on construction.
#[pyclass(name = "Pcs", frozen)]
struct PyPcs(Arc<RelPcs>);

#[pymethods]
impl PyPcs {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let p = RelPcs::from_json_str(text).map_err(err)?;
        p.validate().map_err(|v| err(format!("{v:?}")))?;
        Ok(PyPcs(Arc::new(p)))
    }

    #[staticmethod]
    fn brick(eps: &str) -> PyResult<Self> {
        let eps: BrickIndex = eps.parse().map_err(err)?;
        Ok(PyPcs(brick(&eps).object))
    }

    fn to_json(&self) -> String {
        self.0.to_json_string()
    }

    /// Number of cubes in each dimension.
    fn counts(&self) -> Vec<usize> {
        self.0.counts()
    }

    fn blowup(&self, n: usize) -> PyResult<(PyPcs, Vec<(String, String)>)> {
        let res = blowup(&self.0, n).map_err(err)?;
        let pairs = res.beta.named_pairs();
        Ok((PyPcs(res.blowup.clone()), pairs))
    }

    fn euclid<'py>(&self, py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &euclidean_check(&self.0, n))
    }

    fn verify_blowup<'py>(&self, py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
        let report = verify_blowup(&self.0, n).map_err(err)?;
        let mut value = serde_json::to_value(&report).map_err(err)?;
        value["passes"] = report.passes().into();
        to_py(py, &value)
    }

    fn __repr__(&self) -> String {
        format!("Pcs(counts={:?})", self.0.counts())
    }
}

/// Replacement, projection by cell name, and report.
type Replacement<'py> = (PyAutomaton, Vec<(String, String)>, Bound<'py, PyAny>);

#[pyclass(name = "Automaton", frozen)]
struct PyAutomaton(Arc<RelAutomaton>);

#[pymethods]
impl PyAutomaton {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyAutomaton(Arc::new(
            RelAutomaton::from_json_str(text).map_err(err)?,
        )))
    }

    /// Compile a regular expression; with `ascii`, `0` is ∅ and `()` is ε.
    #[staticmethod]
    #[pyo3(signature = (regex, ascii = false))]
    fn compile(regex: &str, ascii: bool) -> PyResult<Self> {
        let r = parse_with(regex, ParseOptions { ascii }).map_err(err)?;
        Ok(PyAutomaton(Arc::new(compile(&r).map_err(err)?)))
    }

    fn to_json(&self) -> String {
        self.0.to_json_string()
    }

    #[getter]
    fn state_count(&self) -> usize {
        self.0.state_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.0.edge_count()
    }

    fn is_non_relational(&self) -> bool {
        self.0.is_non_relational()
    }

    /// Accepted words of length at most `max_len`, sorted.
    fn language(&self, max_len: usize) -> Vec<String> {
        self.0.language_upto(max_len).into_iter().collect()
    }

    fn accepts(&self, word: &str) -> bool {
        let n = word.chars().count();
        self.0.language_upto(n).contains(word)
    }

    fn deter(&self) -> PyAutomaton {
        PyAutomaton(Arc::new(deter(&self.0)))
    }

    fn normalize(&self) -> PyResult<PyAutomaton> {
        Ok(PyAutomaton(Arc::new(normalize(&self.0).map_err(err)?)))
    }

    /// `None` when the conditions hold, otherwise the witness.
    fn conditions<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        match check_conditions(&self.0) {
            Ok(()) => Ok(None),
            Err(w) => to_py(py, &w).map(Some),
        }
    }

    #[pyo3(signature = (max_len = 6))]
    fn cofibrant_replacement<'py>(
        &self,
        py: Python<'py>,
        max_len: usize,
    ) -> PyResult<Replacement<'py>> {
        let r = cofibrant_replacement(&self.0).map_err(err)?;
        let report = verify_replacement(&self.0, &r, max_len).map_err(err)?;
        let mut value = serde_json::to_value(&report).map_err(err)?;
        value["holds"] = report.holds().into();
        value["certificate"] = serde_json::to_value(&r.certificate).map_err(err)?;
        Ok((
            PyAutomaton(r.object.clone()),
            r.beta.named_pairs(),
            to_py(py, &value)?,
        ))
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

/// Compares `B_ε` minus its minimal cube with the colimit of smaller bricks.
#[pyfunction(name = "brick_colimit_check")]
fn py_brick_colimit_check<'py>(py: Python<'py>, eps: &str) -> PyResult<Bound<'py, PyAny>> {
    let eps: BrickIndex = eps.parse().map_err(err)?;
    to_py(py, &brick_colimit_check(&eps).map_err(err)?)
}

#[pyfunction(name = "kleene_fuzz")]
#[pyo3(signature = (seed, count = 200, depth = 4, max_len = 8, alphabet = "ab"))]
fn py_kleene_fuzz<'py>(
    py: Python<'py>,
    seed: u64,
    count: usize,
    depth: usize,
    max_len: usize,
    alphabet: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let sigma: Vec<char> = alphabet.chars().collect();
    if sigma.is_empty() {
        return Err(err("empty alphabet"));
    }
    to_py(
        py,
        &kleene_fuzz(seed, count, depth, max_len, &sigma).map_err(err)?,
    )
}

/// `(checks, failures)` of the identity suite on both carriers.
#[pyfunction(name = "appendix")]
#[pyo3(signature = (seed = 1))]
fn py_appendix(seed: u64) -> PyResult<(usize, usize)> {
    let pcs = appendix_identity_suite(&pcs_sample(seed, SampleSizes::default()).map_err(err)?);
    let aut = appendix_identity_suite(&automata_sample(seed, SampleSizes::default()).map_err(err)?);
    Ok((
        pcs.checks.len() + aut.checks.len(),
        pcs.failures().count() + aut.failures().count(),
    ))
}

#[pymodule]
fn combman(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPcs>()?;
    m.add_class::<PyAutomaton>()?;
    m.add_function(wrap_pyfunction!(py_brick_colimit_check, m)?)?;
    m.add_function(wrap_pyfunction!(py_kleene_fuzz, m)?)?;
    m.add_function(wrap_pyfunction!(py_appendix, m)?)?;
    Ok(())
}
