//! Python bindings. Every result crosses the boundary as a JSON string in the
//! same format the CLI emits, so `json.loads` is all a caller needs.

pub mod api;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn py(r: api::Result<String>) -> PyResult<String> {
    r.map_err(PyValueError::new_err)
}

/// Builds and verifies a structure on L_2(q) ("psl2") or SL_2(q) ("sl2").
#[pyfunction]
#[pyo3(signature = (family, q, effort = "auto"))]
fn construct(py_: Python<'_>, family: &str, q: u64, effort: &str) -> PyResult<String> {
    py(py_.allow_threads(|| api::construct(family, q, effort)))
}

/// Verifies a structure document; returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (structure, effort = "exhaustive"))]
fn verify_json(py_: Python<'_>, structure: &str, effort: &str) -> PyResult<String> {
    py(py_.allow_threads(|| api::verify_json(structure, effort)))
}

/// One row of the primitive-root table for a prime q = 3 mod 4.
#[pyfunction]
fn table1_row(q: u64) -> PyResult<String> {
    py(api::table1_row(q))
}

/// `{p, e, modulus}` of the default field of order q.
#[pyfunction]
fn field(q: u64) -> PyResult<String> {
    py(api::field(q))
}

#[pymodule]
fn beauville_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(verify_json, m)?)?;
    m.add_function(wrap_pyfunction!(table1_row, m)?)?;
    m.add_function(wrap_pyfunction!(field, m)?)?;
    Ok(())
}
