//! Python bindings: suites, classification, top-level actions and the
//! screening kernel profile. Rationals cross the boundary as `"p/q"` strings.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use nwvoa::error::Error;
use nwvoa::exact::{fmt_q, parse_q, Q};
use nwvoa::nw::H4;
use nwvoa::relaxed::RelaxedModuleSpec;
use nwvoa::report::{all_passed, emit_report, SCHEMA_ID};
use nwvoa::suites::{Params, Suite, SuiteConfig, SUITE_NAMES};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::InvalidParameter(_) | Error::Parse(_) | Error::Incompatible(_) | Error::FrameMismatch(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn rat(s: &str) -> PyResult<Q> {
    parse_q(s).map_err(py_err)
}

fn generator(g: &str) -> PyResult<H4> {
    match g {
        "E" => Ok(H4::E),
        "F" => Ok(H4::F),
        "I" => Ok(H4::I),
        "J" => Ok(H4::J),
        _ => Err(PyValueError::new_err(format!("unknown generator {g:?}"))),
    }
}

#[pyfunction]
fn schema_id() -> &'static str {
    SCHEMA_ID
}

#[pyfunction]
fn suite_names() -> Vec<&'static str> {
    SUITE_NAMES.to_vec()
}

/// Runs a suite; returns `(all checks passed, JSON report)`.
#[pyfunction]
#[pyo3(signature = (suite, max_weight=3, charge_window=2, params=Vec::new()))]
fn run_suite(py: Python<'_>, suite: &str, max_weight: u32, charge_window: i64, params: Vec<String>) -> PyResult<(bool, String)> {
    let mut cfg = SuiteConfig::new(suite.parse::<Suite>().map_err(py_err)?);
    cfg.max_weight = max_weight;
    cfg.charge_window = charge_window;
    let mut p = Params::default();
    for kv in &params {
        p.set(kv).map_err(py_err)?;
    }
    cfg.params = p;
    cfg.validate().map_err(py_err)?;
    let records = py.detach(|| nwvoa::suites::run_suite(&cfg)).map_err(py_err)?;
    Ok((all_passed(&records), emit_report(&records)))
}

/// `(irreducible, case, label, top_class)` for `r = 1`.
#[pyfunction]
fn classify(x: &str, y: &str, lam: &str) -> PyResult<(bool, u8, String, String)> {
    let c = nwvoa::relaxed::classify(&rat(x)?, &rat(y)?, &rat(lam)?);
    Ok((c.irreducible, c.case, c.label, c.top_class))
}

/// `g(0) Z_i = coefficient · Z_target`; returns `(target, coefficient)`.
#[pyfunction]
fn top_action(x: &str, y: &str, lam: &str, r: i64, g: &str, i: i64) -> PyResult<(i64, String)> {
    let spec = RelaxedModuleSpec::new(rat(x)?, rat(y)?, r, rat(lam)?);
    let (t, c) = nwvoa::relaxed::top_action(&spec, generator(g)?, i).map_err(py_err)?;
    Ok((t, fmt_q(&c)))
}

/// `(h, j, dim_source, dim_target, rank, dim_ker)`
type KernelTuple = (i64, i64, usize, usize, usize, usize);

/// Rows of the vacuum screening kernel.
#[pyfunction]
fn kernel_profile(py: Python<'_>, max_h: u32, charge_window: i64) -> PyResult<Vec<KernelTuple>> {
    let rows = py.detach(|| nwvoa::screening::kernel_profile(max_h, charge_window)).map_err(py_err)?;
    Ok(rows.into_iter().map(|r| (r.h, r.j, r.dim_source, r.dim_target, r.rank, r.dim_ker)).collect())
}

#[pymodule]
fn nwvoa_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(schema_id, m)?)?;
    m.add_function(wrap_pyfunction!(suite_names, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(top_action, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_profile, m)?)?;
    Ok(())
}
