//! Python bindings for the cancelkit decision procedure.
//!
//! Every function takes the same textual inputs as the command-line tool
//! (a field description, generator polynomials, optional search limits) and
//! returns the canonical JSON report as a string, so Python callers see
//! byte-identical output to `cancelkit ... --json`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::{Map, Value};

use cancelkit::conics::{conic_point_search, conic_rational_point};
use cancelkit::conjugacy::classify;
use cancelkit::decider::{decide as run_decide, GeneratorSet, RunConfig};
use cancelkit::parse::{parse_conic, parse_field, parse_generator, parse_polynomial};
use cancelkit::polyring::cheb_expand;
use cancelkit::report;
use cancelkit::witness::collision_oracle;
use cancelkit::Error;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Run the full decision procedure and return the canonical JSON report.
#[pyfunction]
#[pyo3(signature = (field, generators, depth, degree_cap = 10_000, word_cap = 100_000,
                    height_bound = 20, pairs = 1, iterate_j = 0, no_prover = false))]
#[allow(clippy::too_many_arguments)]
fn decide(
    field: &str,
    generators: Vec<String>,
    depth: usize,
    degree_cap: usize,
    word_cap: usize,
    height_bound: u32,
    pairs: usize,
    iterate_j: u32,
    no_prover: bool,
) -> PyResult<String> {
    let k = parse_field(field).map_err(err)?;
    let gens = generators
        .iter()
        .map(|g| parse_generator(g, &k))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let gen_texts: Vec<String> = gens.iter().map(|g| g.to_text()).collect();
    let cfg = RunConfig {
        degree_cap,
        word_cap,
        height_bound,
        pairs,
        iterate_j,
        no_prover,
    };
    let s = GeneratorSet::new(&k, gens).map_err(err)?;
    let rep = run_decide(&s, depth, &cfg).map_err(err)?;
    let config = report::config_json(field, &gen_texts, depth, &cfg);
    Ok(report::to_canonical_string(&report::decision_json(
        &rep, config,
    )))
}

/// Classify one generator against the theorem's normal forms.
#[pyfunction]
fn normal_form(field: &str, poly: &str) -> PyResult<String> {
    let k = parse_field(field).map_err(err)?;
    let p = parse_generator(poly, &k).map_err(err)?;
    let r = classify(&p).map_err(err)?;
    Ok(report::to_canonical_string(&report::normal_form_json(&r)))
}

/// Decide whether a conic in X and Y has a point over the field.
#[pyfunction]
#[pyo3(signature = (field, equation, height_bound = 20))]
fn conic_point(field: &str, equation: &str, height_bound: u32) -> PyResult<String> {
    let k = parse_field(field).map_err(err)?;
    let conic = parse_conic(equation, &k).map_err(err)?;
    let verdict = if k.degree() == 1 {
        conic_rational_point(&conic)
    } else {
        conic_point_search(&conic, height_bound)
    };
    let mut m = Map::new();
    m.insert("conic".into(), Value::String(conic.to_text()));
    m.insert(
        "verdict".into(),
        report::conic_verdict_json(Some(&conic), &verdict),
    );
    Ok(report::to_canonical_string(&Value::Object(m)))
}

/// Coefficients of a polynomial in the monic Chebyshev basis, degree -> text.
#[pyfunction]
fn cheb_coefficients(field: &str, poly: &str) -> PyResult<String> {
    let k = parse_field(field).map_err(err)?;
    let p = parse_polynomial(poly, &k).map_err(err)?;
    let e = cheb_expand(&p);
    let mut coeffs = Map::new();
    coeffs.insert("0".into(), Value::String(format!("{}", e.a0)));
    for (deg, c) in &e.a {
        coeffs.insert(deg.to_string(), Value::String(format!("{}", c)));
    }
    Ok(report::to_canonical_string(&Value::Object(coeffs)))
}

/// Brute-force search for a composition word equalizing the orbits of two
/// constants; returns (word, first_meet_depth) or None.
#[pyfunction]
fn oracle(
    field: &str,
    generators: Vec<String>,
    a: &str,
    b: &str,
    depth: usize,
) -> PyResult<Option<(Vec<usize>, usize)>> {
    let k = parse_field(field).map_err(err)?;
    let gens = generators
        .iter()
        .map(|g| parse_generator(g, &k))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let pa = constant(a, &k)?;
    let pb = constant(b, &k)?;
    if pa == pb {
        return Err(PyValueError::new_err("oracle inputs must differ"));
    }
    Ok(collision_oracle(&gens, &pa, &pb, depth))
}

fn constant(
    text: &str,
    k: &std::sync::Arc<cancelkit::numberfield::NumberField>,
) -> PyResult<cancelkit::numberfield::FieldElement> {
    let p = parse_polynomial(text, k).map_err(err)?;
    if p.degree().unwrap_or(0) > 0 {
        return Err(PyValueError::new_err("expected a constant expression"));
    }
    Ok(p.coeff(0))
}

#[pymodule]
fn cancelkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(conic_point, m)?)?;
    m.add_function(wrap_pyfunction!(cheb_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
