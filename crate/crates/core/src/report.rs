//! JSON reports. Every number is written as an exact `"p/q"` string.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::algebra::{rat_pq, Rat, RationalFunction};
use crate::classifier::{QClass, QParams};
use crate::equation::{MobiusMap, SchwarzEquation};
use crate::local::{AuxExpression, FeasibilityReport};
use crate::reducer::{CandidateReport, Certificate, ReductionVerdict};
use crate::series::LaurentSeries;

fn n(k: impl Into<BigInt>) -> Value {
    Value::String(rat_pq(&Rat::from_integer(k.into())))
}

fn q(r: &Rat) -> Value {
    Value::String(rat_pq(r))
}

fn rf(r: &RationalFunction) -> Value {
    Value::String(r.render("z"))
}

fn params(p: &QParams) -> Value {
    let mut out = Map::new();
    let fields = [("c", &p.c), ("b", &p.b), ("b1", &p.b1), ("b2", &p.b2), ("a0", &p.a0), ("a1", &p.a1)];
    for (k, v) in fields {
        if let Some(v) = v {
            out.insert(k.into(), rf(v));
        }
    }
    for (i, t) in p.tau.iter().enumerate() {
        out.insert(format!("tau{}", i + 1), q(t));
    }
    for (k, v) in [("n", p.n), ("n1", p.n1), ("n2", p.n2)] {
        if let Some(v) = v {
            out.insert(k.into(), n(v));
        }
    }
    Value::Object(out)
}

pub fn mobius_json(m: &MobiusMap) -> Value {
    json!({"a": q(&m.a), "b": q(&m.b), "c": q(&m.c), "d": q(&m.d), "text": m.render("f")})
}

pub fn qclass_json(c: &QClass) -> Value {
    let mut v = json!({
        "tag": c.tag.name(),
        "params": params(&c.params),
        "alternates": c.alternates.iter().map(|t| t.name()).collect::<Vec<_>>(),
    });
    if let Some(note) = &c.note {
        v["note"] = Value::String(note.clone());
    }
    v
}

pub fn series_json(s: &LaurentSeries) -> Value {
    json!({
        "base": q(s.base()),
        "min_order": n(s.min_order()),
        "trunc": n(s.trunc()),
        "coeffs": s.coeffs().iter().map(q).collect::<Vec<_>>(),
        "text": s.render(),
    })
}

fn aux_json(a: &AuxExpression) -> Value {
    let mut p = Map::new();
    for (k, v) in a.entries() {
        p.insert(k, Value::String(v));
    }
    json!({
        "kind": "auxiliary",
        "name": a.kind.name(),
        "formula": a.kind.formula(),
        "mobius": mobius_json(&a.mobius),
        "params": p,
    })
}

pub fn feasibility_json(r: &FeasibilityReport) -> Value {
    let per_n = |xs: &[(Option<u32>, Rat)]| -> Vec<Value> {
        xs.iter().map(|(k, v)| json!({"n": k.map(n), "value": q(v)})).collect()
    };
    json!({
        "kind": "feasibility",
        "tag": r.tag.name(),
        "m": n(r.m),
        "s": n(r.s),
        "admissible_m": r.admissible_m,
        "required_sums": per_n(&r.required_sums),
        "ramification": per_n(&r.ramification),
        "admissible_n": r.admissible_n.iter().map(|k| k.map(n)).collect::<Vec<_>>(),
        "feasible": r.feasible,
        "forced_n": r.forced_n.map(n),
        "k1_multiples": r.k1_multiples.iter().map(|&c| n(c)).collect::<Vec<_>>(),
        "note": r.note,
    })
}

fn certificate_json(c: &Certificate) -> Value {
    match c {
        Certificate::Auxiliary(a) => aux_json(a),
        Certificate::Feasibility(r) => feasibility_json(r),
        Certificate::Branch { outcome, kept, reason } => {
            json!({"kind": "branch", "outcome": outcome.name(), "kept": kept, "reason": reason})
        }
    }
}

fn header(input: &str, eq: &SchwarzEquation) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("input".into(), Value::String(input.to_string()));
    m.insert("equation".into(), Value::String(eq.render()));
    m.insert("m".into(), n(eq.m()));
    m.insert("degP".into(), n(eq.deg_p() as u64));
    m.insert("degQ".into(), n(eq.deg_q() as u64));
    m.insert("coprime".into(), Value::Bool(eq.is_coprime()));
    m
}

pub fn classify_report(input: &str, eq: &SchwarzEquation, class: &QClass) -> Value {
    let mut m = header(input, eq);
    m.insert("qclass".into(), qclass_json(class));
    let diags: Vec<Value> = class.note.iter().cloned().map(Value::String).collect();
    m.insert("diagnostics".into(), Value::Array(diags));
    Value::Object(m)
}

pub fn reduce_report(input: &str, eq: &SchwarzEquation, v: &ReductionVerdict) -> Value {
    let mut m = header(input, eq);
    m.insert("qclass".into(), qclass_json(&v.class));
    let mut verdict = json!({
        "outcome": v.outcome_name(),
        "template": v.template(),
        "mobius": mobius_json(&v.mobius),
    });
    if v.is_disjunctive() {
        verdict["branches"] = Value::Array(v.outcomes.iter().map(|o| Value::String(o.name())).collect());
    }
    m.insert("verdict".into(), verdict);
    m.insert("certificates".into(), Value::Array(v.certificates.iter().map(certificate_json).collect()));
    m.insert("diagnostics".into(), Value::Array(v.diagnostics.iter().cloned().map(Value::String).collect()));
    Value::Object(m)
}

pub fn verify_report(input: &str, eq: &SchwarzEquation, r: &CandidateReport) -> Value {
    let mut m = header(input, eq);
    m.insert("candidate".into(), Value::String(r.candidate.clone()));
    m.insert("z0".into(), q(&r.z0));
    m.insert("trunc".into(), n(r.trunc as u64));
    m.insert("residual".into(), series_json(&r.residual));
    m.insert("verified".into(), Value::Bool(r.verified));
    m.insert("transcendental".into(), r.transcendental.map_or(Value::Null, Value::Bool));
    Value::Object(m)
}

pub fn schwarzian_report(input: &str, s: &RationalFunction) -> Value {
    let coeffs = |p: &crate::algebra::Poly| p.coeffs().iter().map(q).collect::<Vec<_>>();
    json!({
        "input": input,
        "schwarzian": s.render("z"),
        "numerator": coeffs(s.num()),
        "denominator": coeffs(s.den()),
    })
}

pub fn error_report(input: &str, err: &str) -> Value {
    json!({"input": input, "error": err})
}
