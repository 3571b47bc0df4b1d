//! The embedded golden corpus: one instance per tag at its smallest legal
//! `m`, and near misses that must not land on the tag they imitate.

use crate::classifier::{classify_q, QTag};
use crate::error::Result;
use crate::parse::parse_equation;
use crate::reducer::{reduce, Outcome};

/// A constructed instance with its expected tag and verdict.
#[derive(Clone, Debug)]
pub struct GoldenEntry {
    pub tag: QTag,
    pub m: u32,
    pub text: &'static str,
    pub expected: &'static [Outcome],
}

/// A denominator one step away from `avoid`.
#[derive(Clone, Debug)]
pub struct NearMiss {
    pub avoid: QTag,
    pub text: &'static str,
    pub why: &'static str,
}

const RICCATI: &[Outcome] = &[Outcome::Riccati];
const E7: &[Outcome] = &[Outcome::FirstOrder(7)];
const NONE: &[Outcome] = &[Outcome::NoTranscendentalSolution];

pub fn golden() -> Vec<GoldenEntry> {
    let e = |tag, m, text, expected| GoldenEntry { tag, m, text, expected };
    vec![
        e(QTag::QE1, 1, "S(f) = (f^4 + 1)/((f + z)^2*(f + z^2)^2)", RICCATI),
        e(QTag::QE2, 1, "S(f) = (f^4 + 1)/(f^2 + z)^2", RICCATI),
        e(QTag::QE3, 1, "S(f) = (f^2 + 1)/(f + z)^2", RICCATI),
        e(QTag::QE4, 1, "S(f) = (f^4 + 1)/((f + z)^2*(f - 1)*(f - 2))", E7),
        e(QTag::QE5, 1, "S(f) = (f^3 + 2)/((f + z)^2*(f - 1))", NONE),
        e(QTag::QE6, 1, "S(f) = (f^4 + 1)/((f - 1)*(f - 2)*(f - 3)*(f - 4))", E7),
        e(QTag::QE7, 1, "S(f) = (f^3 + 1)/((f - 1)*(f - 2)*(f - 3))", E7),
        e(QTag::QE8, 3, "S(f)^3 = (f^7 + 1)/((f - 1)^3*(f - 2)^2*(f - 3)^2)", NONE),
        e(QTag::QE9, 6, "S(f)^6 = (f^13 + 1)/((f - 1)^6*(f - 2)^4*(f - 3)^3)", NONE),
        e(QTag::QE10, 15, "S(f)^15 = (f^31 + 1)/((f - 1)^15*(f - 2)^10*(f - 3)^6)", NONE),
        e(QTag::QE11, 3, "S(f)^3 = (f^6 + 1)/((f - 1)^3*(f - 2)^2*(f - 3))", &[Outcome::FirstOrder(6)]),
        e(QTag::QE12, 3, "S(f)^3 = (f^6 + 1)/((f - 1)^2*(f - 2)^2*(f - 3)^2)", &[Outcome::FirstOrder(4)]),
        e(QTag::QE13, 2, "S(f)^2 = (f^4 + 1)/((f - 1)^2*(f - 2)*(f - 3))", &[Outcome::FirstOrder(5)]),
        e(QTag::QE14, 1, "S(f) = (f^2 + 1)/((f - 1)*(f - 2))", E7),
        e(QTag::QE15, 1, "S(f) = (f + 1)/(f - 1)", &[Outcome::Riccati, Outcome::FirstOrder(7)]),
        e(QTag::QE16, 1, "S(f) = z^2 + 1", &[Outcome::SchwarzForm(14)]),
    ]
}

pub fn near_misses() -> Vec<NearMiss> {
    let e = |avoid, text, why| NearMiss { avoid, text, why };
    vec![
        e(QTag::QE1, "S(f) = (f^3 + 1)/((f + z)^2*(f + z^2))", "second moving factor is simple"),
        e(QTag::QE2, "S(f) = (f^4 + 3)/(f^2 + 1)^2", "quadratic has constant coefficients"),
        e(QTag::QE3, "S(f) = (f^2 + 1)/(f - 3)^2", "b is constant"),
        e(QTag::QE4, "S(f) = (f^5 + 1)/((f + z)^2*(f - 1)^2*(f - 2))", "tau1 has exponent 2m"),
        e(QTag::QE5, "S(f) = (f^4 + 2)/((f + z)^2*(f - 1)^2)", "2m/n = 2 forces n = 1"),
        e(QTag::QE6, "S(f) = (f^5 + 1)/((f - 1)*(f - 2)*(f - 3)*(f - 4)*(f - 5))", "five simple constants"),
        e(QTag::QE8, "S(f)^3 = (f^9 + 1)/((f - 1)^3*(f - 2)^2*(f - 3)^4)", "third exponent is 4, not 2m/3"),
        e(QTag::QE12, "S(f)^2 = (f^9 + 1)/((f - 1)^3*(f - 2)^3*(f - 3)^3)", "2m/3 is not an integer for m = 2"),
        e(QTag::QE14, "S(f)^2 = (f^4 + 1)/((f - 1)^3*(f - 2))", "3 does not divide 2m = 4"),
        e(QTag::QE15, "S(f) = (f^3 + 2)/(f - 1)^3", "exponent 3 exceeds 2m"),
    ]
}

/// One line of the self-test.
#[derive(Clone, Debug)]
pub struct SelfTestLine {
    pub text: String,
    pub passed: bool,
    pub detail: String,
}

fn check_golden(e: &GoldenEntry) -> Result<SelfTestLine> {
    let eq = parse_equation(e.text)?;
    let class = classify_q(&eq);
    let verdict = reduce(&eq);
    let tag_ok = class.tag == e.tag && eq.m() == e.m;
    let verdict_ok = verdict.outcomes == e.expected;
    let detail = format!("{} -> {} ({})", e.tag, class.tag, verdict.outcome_name());
    Ok(SelfTestLine { text: e.text.to_string(), passed: tag_ok && verdict_ok, detail })
}

fn check_near_miss(e: &NearMiss) -> Result<SelfTestLine> {
    let eq = parse_equation(e.text)?;
    let class = classify_q(&eq);
    let detail = format!("not {} ({}) -> {}", e.avoid, e.why, class.tag);
    Ok(SelfTestLine { text: e.text.to_string(), passed: class.tag != e.avoid, detail })
}

/// Runs the golden entries and the near misses.
pub fn selftest() -> Vec<SelfTestLine> {
    let fail = |text: &str, err: crate::error::Error| SelfTestLine {
        text: text.to_string(),
        passed: false,
        detail: err.to_string(),
    };
    let mut out: Vec<SelfTestLine> =
        golden().iter().map(|e| check_golden(e).unwrap_or_else(|err| fail(e.text, err))).collect();
    out.extend(near_misses().iter().map(|e| check_near_miss(e).unwrap_or_else(|err| fail(e.text, err))));
    out
}

/// The golden corpus in the batch file format.
pub fn golden_file() -> String {
    let mut s = String::from("# golden corpus: one instance per tag at its smallest legal m\n");
    for e in golden() {
        s.push_str(&format!("# {} m = {}\n{}\n", e.tag, e.m, e.text));
    }
    s
}
