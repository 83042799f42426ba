use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use torelli_core::corpus::{verify_corpus, Corpus};
use torelli_core::finite_coh::{h1_bruteforce, sp_invariants_mod_p, FiniteGroupTable, FiniteModule};
use torelli_core::johnson::{johnson_tau, validate_endo, GroupEndo, ValidationMode};
use torelli_core::linalg::{smith_normal_form, IntMatrix};
use torelli_core::magnus::surface_gr;
use torelli_core::report::Report;
use torelli_core::sp_modules::{check_ci_identity, check_decomposition, jacobi_exactness, ModuleKind};

create_exception!(torelli, TorelliError, PyException);

fn err(e: torelli_core::Error) -> PyErr {
    TorelliError::new_err(e.to_string())
}

fn report_dict<'py>(py: Python<'py>, r: &Report) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (r.to_json(),))
}

/// Rank of the degree-`n` graded piece of the genus-`g` surface group.
#[pyfunction]
pub fn grdim(g: usize, n: usize) -> PyResult<usize> {
    Ok(surface_gr(g, n).map_err(err)?.rank())
}

/// Johnson τ of an endo given in text form; strict unless `relaxed` is set.
#[pyfunction]
#[pyo3(signature = (endo, relaxed=None))]
pub fn tau(endo: &str, relaxed: Option<usize>) -> PyResult<Vec<BigInt>> {
    let phi = GroupEndo::parse(endo).map_err(err)?;
    let mode = match relaxed {
        Some(m) => ValidationMode::parse(&format!("relaxed {m}")).map_err(err)?,
        None => ValidationMode::Strict,
    };
    johnson_tau(&validate_endo(&phi, mode).map_err(err)?).map_err(err)
}

/// One of `"jacobi"`, `"ci"`, `"decomp"`, as a report dict.
#[pyfunction]
pub fn check<'py>(py: Python<'py>, name: &str, g: usize) -> PyResult<Bound<'py, PyAny>> {
    let r = match name {
        "jacobi" => jacobi_exactness(g),
        "ci" => check_ci_identity(g),
        "decomp" => check_decomposition(g),
        other => return Err(TorelliError::new_err(format!("unknown check {other:?}"))),
    }
    .map_err(err)?;
    report_dict(py, &r)
}

/// Dimension of the Sp invariants of `"H"`, `"L"` or `"LmodH"` modulo `p`.
#[pyfunction]
pub fn invariants(g: usize, module: &str, p: u64) -> PyResult<usize> {
    let kind = match module {
        "H" => ModuleKind::H,
        "L" => ModuleKind::Lambda3,
        "LmodH" => ModuleKind::LmodH,
        other => return Err(TorelliError::new_err(format!("unknown module {other:?}"))),
    };
    Ok(sp_invariants_mod_p(g, kind, p).map_err(err)?.len())
}

/// Invariant factors of H¹ for a group table and module in their text formats.
#[pyfunction]
pub fn h1(group: &str, module: &str) -> PyResult<Vec<BigInt>> {
    let grp = FiniteGroupTable::parse(group).map_err(err)?;
    let m = FiniteModule::parse(&grp, module).map_err(err)?;
    Ok(h1_bruteforce(&grp, &m).map_err(err)?.divisors())
}

#[pyfunction]
pub fn snf(rows: Vec<Vec<BigInt>>) -> PyResult<Vec<BigInt>> {
    let a = IntMatrix::from_rows(rows).map_err(err)?;
    Ok(smith_normal_form(&a).diag)
}

#[pyfunction]
pub fn corpus_verify<'py>(py: Python<'py>, path: &str) -> PyResult<Bound<'py, PyAny>> {
    let text = std::fs::read_to_string(path).map_err(|e| TorelliError::new_err(format!("{path}: {e}")))?;
    let c = Corpus::parse(&text).map_err(err)?;
    report_dict(py, &verify_corpus(&c).map_err(err)?)
}

#[pymodule]
fn torelli(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("TorelliError", m.py().get_type::<TorelliError>())?;
    m.add_function(wrap_pyfunction!(grdim, m)?)?;
    m.add_function(wrap_pyfunction!(tau, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(invariants, m)?)?;
    m.add_function(wrap_pyfunction!(h1, m)?)?;
    m.add_function(wrap_pyfunction!(snf, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_verify, m)?)?;
    Ok(())
}
