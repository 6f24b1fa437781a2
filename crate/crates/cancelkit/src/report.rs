//! Canonical JSON serialization of decision reports and the smaller command
//! outputs. Keys are emitted sorted (serde_json's default map is ordered),
//! every number is rendered as an exact "p/q" string, and reports embed the
//! run configuration and library version so they are reproducible.

use serde_json::{json, Map, Value};

use crate::conics::{Conic, ConicStatus, ConicVerdict};
use crate::conjugacy::{Kind, LinearConjugator, NormalFormReport};
use crate::decider::{
    AbsenceProof, DecisionReport, ObstructionWitness, RunConfig, Stats, Word,
};
use crate::numberfield::FieldElement;
use crate::witness::PairSample;

pub fn version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

fn el(e: &FieldElement) -> Value {
    Value::String(format!("{}", e))
}

fn word_json(w: &Word) -> Value {
    json!({
        "indices": w.indices,
        "poly": w.poly.to_text(),
    })
}

fn conjugator_json(c: &LinearConjugator) -> Value {
    let mut m = Map::new();
    m.insert("v".into(), el(&c.v));
    if let Some(w) = &c.u_squared {
        m.insert("u_squared".into(), el(w));
    }
    if let Some(u) = &c.u_in_k {
        m.insert("u".into(), el(u));
    }
    Value::Object(m)
}

pub fn conic_status_str(s: ConicStatus) -> &'static str {
    match s {
        ConicStatus::PointFound => "POINT_FOUND",
        ConicStatus::NoPoint => "NO_POINT",
        ConicStatus::Unknown => "UNKNOWN",
    }
}

pub fn conic_verdict_json(conic: Option<&Conic>, v: &ConicVerdict) -> Value {
    let mut m = Map::new();
    if let Some(c) = conic {
        m.insert("equation".into(), Value::String(c.to_text()));
    }
    m.insert(
        "status".into(),
        Value::String(conic_status_str(v.status).into()),
    );
    if let Some((x, y)) = &v.point {
        m.insert("point".into(), json!([el(x), el(y)]));
    }
    m.insert("certificate".into(), Value::String(v.certificate.clone()));
    Value::Object(m)
}

fn pair_json(p: &PairSample) -> Value {
    json!({
        "a": el(&p.a),
        "b": el(&p.b),
        "j": p.j,
        "orbit_a": el(&p.orbit_a),
        "orbit_b": el(&p.orbit_b),
        "image": el(&p.image),
    })
}

pub fn witness_json(w: &ObstructionWitness) -> Value {
    let mut m = Map::new();
    m.insert("case".into(), Value::String(w.case.as_str().into()));
    m.insert("h1".into(), word_json(&w.h1));
    m.insert("h2".into(), word_json(&w.h2));
    m.insert("d".into(), json!(w.d));
    m.insert("r".into(), json!(w.r));
    m.insert("conjugator".into(), conjugator_json(&w.conjugator));
    m.insert("cyclotomic".into(), el(&w.cyclotomic));
    m.insert("outer".into(), Value::String(w.outer_text.clone()));
    if let Some(q) = &w.inner_q {
        m.insert("inner_q".into(), Value::String(q.to_text()));
    }
    if let Some((c, v)) = &w.conic {
        m.insert("conic".into(), conic_verdict_json(Some(c), v));
    }
    m.insert("curve".into(), Value::String(w.curve.equation.to_text()));
    m.insert(
        "pairs".into(),
        Value::Array(w.pairs.iter().map(pair_json).collect()),
    );
    m.insert("status".into(), Value::String(w.status.as_str().into()));
    Value::Object(m)
}

fn absence_json(a: &AbsenceProof) -> Value {
    json!({
        "candidate_d_set": a.candidate_d_set.iter().map(|c| json!({
            "d": c.d,
            "justification": c.justification,
            "passes_degree_rule": c.passes_degree_rule,
        })).collect::<Vec<_>>(),
        "degree_prime_set": a.degree_prime_set,
        "rule_trace": a.rule_trace,
    })
}

fn stats_json(s: &Stats) -> Value {
    json!({
        "words": s.words,
        "pairs_checked": s.pairs_checked,
        "case_checks": s.case_checks,
        "witnesses_found": s.witnesses_found,
        "truncated": s.truncated,
    })
}

/// The embedded run configuration; callers add the command-specific fields.
pub fn config_json(
    field_text: &str,
    generators: &[String],
    depth: usize,
    cfg: &RunConfig,
) -> Value {
    json!({
        "field": field_text,
        "generators": generators,
        "depth": depth,
        "degree_cap": cfg.degree_cap,
        "word_cap": cfg.word_cap,
        "height_bound": cfg.height_bound,
        "pairs": cfg.pairs,
        "iterate_j": cfg.iterate_j,
        "no_prover": cfg.no_prover,
    })
}

pub fn decision_json(report: &DecisionReport, config: Value) -> Value {
    let mut m = Map::new();
    m.insert("command".into(), Value::String("decide".into()));
    m.insert("config".into(), config);
    m.insert("version".into(), Value::String(version().into()));
    m.insert("verdict".into(), Value::String(report.verdict.as_str().into()));
    m.insert("depth".into(), json!(report.depth));
    m.insert(
        "witnesses".into(),
        Value::Array(report.witnesses.iter().map(witness_json).collect()),
    );
    if let Some(p) = &report.absence_proof {
        m.insert("absence_proof".into(), absence_json(p));
    }
    m.insert("stats".into(), stats_json(&report.stats));
    Value::Object(m)
}

pub fn normal_form_json(r: &NormalFormReport) -> Value {
    let kinds: Vec<&str> = r
        .kinds
        .iter()
        .map(|k| match k {
            Kind::Power => "POWER",
            Kind::Chebyshev => "CHEBYSHEV",
            Kind::Xqxd => "XQXD",
            Kind::Generic => "GENERIC",
        })
        .collect();
    let mut m = Map::new();
    m.insert("kinds".into(), json!(kinds));
    m.insert("r".into(), json!(r.r));
    m.insert("conjugator".into(), conjugator_json(&r.conjugator));
    if let Some(g) = r.xqxd_gcd {
        m.insert("xqxd_gcd".into(), json!(g));
    }
    if let Some(s) = r.sign_resolved {
        m.insert("sign".into(), json!(s));
    }
    Value::Object(m)
}

/// Render with sorted keys and a trailing newline; the canonical byte form.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
