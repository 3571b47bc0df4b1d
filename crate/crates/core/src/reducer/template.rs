use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::{rat_short, Rat, RationalFunction};
use crate::classifier::QParams;
use crate::fpoly::FPoly;

use super::{Outcome, ReductionVerdict};

/// The target equation with nothing substituted.
pub fn skeleton(outcome: Outcome) -> &'static str {
    match outcome {
        Outcome::Riccati => "f' = a(z) + b(z)f + c(z)f²",
        Outcome::FirstOrder(2) => "(f')² = a(z)(f - b(z))²(f - τ₁)(f - τ₂)",
        Outcome::FirstOrder(3) => "(f')² = a(z)(f - τ₁)(f - τ₂)(f - τ₃)(f - τ₄)",
        Outcome::FirstOrder(4) => "(f')³ = a(z)(f - τ₁)²(f - τ₂)²(f - τ₃)²",
        Outcome::FirstOrder(5) => "(f')⁴ = a(z)(f - τ₁)²(f - τ₂)³(f - τ₃)³",
        Outcome::FirstOrder(6) => "(f')⁶ = a(z)(f - τ₁)³(f - τ₂)⁴(f - τ₃)⁵",
        Outcome::FirstOrder(_) => "(f')² + B(z,f)f' + A(z,f) = 0",
        Outcome::SchwarzForm(8) => "S(u,z)² = c(z)(u - α₁)/(u - τ₁)",
        Outcome::SchwarzForm(9) => "S(u,z)² = c(z)(u - α₁)(u - α₂)/(u - τ₁)²",
        Outcome::SchwarzForm(10) => "S(u,z)³ = c(z)(u - α₁)²/(u - τ₁)²",
        Outcome::SchwarzForm(11) => "S(u,z)² = c(z)(u - α₁)²/((u - τ₁)(u - τ₂))",
        Outcome::SchwarzForm(12) => "S(u,z)² = c(z)(u - α₁)(u - α₂)(u - α₃)²/((u - τ₁)²(u - τ₂)²)",
        Outcome::SchwarzForm(13) => "S(u,z)³ = c(z)(u - α₁)(u - α₂)³/((u - τ₁)²(u - τ₂)²)",
        Outcome::SchwarzForm(_) => "S(u,z) = c(z)",
        Outcome::NoTranscendentalSolution => "no transcendental meromorphic solution",
        Outcome::Unclassified => "unclassified",
    }
}

fn sup(k: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    if k == 1 {
        return String::new();
    }
    k.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

/// `(v - t)` with the sign folded in.
fn fixed(v: &str, t: &Rat) -> String {
    if t.is_zero() {
        v.to_string()
    } else if t.is_negative() {
        format!("({v} + {})", rat_short(&-t.clone()))
    } else {
        format!("({v} - {})", rat_short(t))
    }
}

/// `(v + b)`.
fn moving(v: &str, b: &RationalFunction) -> String {
    format!("({})", FPoly::linear(&-b).render(v))
}

fn taus(p: &QParams, v: &str, exps: &[u32]) -> String {
    p.tau.iter().zip(exps).map(|(t, &k)| format!("{}{}", fixed(v, t), sup(k))).collect()
}

/// `m`-th root of a rational number, when it is rational.
fn rat_root(r: &Rat, m: u32) -> Option<Rat> {
    if r.is_negative() && m.is_multiple_of(2) {
        return None;
    }
    let root = |n: &BigInt| {
        let s = n.abs().nth_root(m);
        (s.pow(m) == n.abs()).then(|| if n.is_negative() { -s } else { s })
    };
    Some(Rat::new(root(r.numer())?, root(r.denom())?))
}

fn e14(verdict: &ReductionVerdict) -> String {
    let eq = &verdict.equation;
    let m = eq.m();
    let r = eq.p().coeff(0).checked_div(&eq.q().coeff(0)).ok().filter(|_| eq.deg_p() == 0 && eq.deg_q() == 0);
    let Some(r) = r else { return skeleton(Outcome::SchwarzForm(14)).to_string() };
    if m == 1 {
        return format!("S(u,z) = {}", r.render("z"));
    }
    match r.as_constant().and_then(|c| rat_root(&c, m)) {
        Some(c) if m.is_multiple_of(2) && !c.is_zero() => format!("S(u,z) = ±{}", rat_short(&c)),
        Some(c) => format!("S(u,z) = {}", rat_short(&c)),
        None => format!("S(u,z) = c(z) with c(z){} = {}", sup(m), r.render("z")),
    }
}

fn one(outcome: Outcome, verdict: &ReductionVerdict) -> String {
    let p = &verdict.class.params;
    let v = if verdict.mobius.is_identity() { "f" } else { "u" };
    let d = format!("({v}')");
    match outcome {
        Outcome::Riccati => format!("{v}' = a(z) + b(z){v} + c(z){v}²"),
        Outcome::FirstOrder(7) => format!("{d}² + B(z,{v}){v}' + A(z,{v}) = 0"),
        Outcome::FirstOrder(2) if p.b.is_some() && p.tau.len() == 2 => {
            format!("{d}² = a(z){}²{}", moving(v, p.b.as_ref().unwrap()), taus(p, v, &[1, 1]))
        }
        Outcome::FirstOrder(3) if p.tau.len() == 4 => format!("{d}² = a(z){}", taus(p, v, &[1, 1, 1, 1])),
        Outcome::FirstOrder(4) if p.tau.len() == 3 => format!("{d}³ = a(z){}", taus(p, v, &[2, 2, 2])),
        Outcome::FirstOrder(5) if p.tau.len() == 3 => format!("{d}⁴ = a(z){}", taus(p, v, &[2, 3, 3])),
        Outcome::FirstOrder(6) if p.tau.len() == 3 => format!("{d}⁶ = a(z){}", taus(p, v, &[3, 4, 5])),
        Outcome::SchwarzForm(8) if p.tau.len() == 1 => format!("S(u,z)² = c(z)(u - α₁)/{}", taus(p, "u", &[1])),
        Outcome::SchwarzForm(9) if p.tau.len() == 1 => {
            format!("S(u,z)² = c(z)(u - α₁)(u - α₂)/{}", taus(p, "u", &[2]))
        }
        Outcome::SchwarzForm(10) if p.tau.len() == 1 => format!("S(u,z)³ = c(z)(u - α₁)²/{}", taus(p, "u", &[2])),
        Outcome::SchwarzForm(11) if p.tau.len() == 2 => {
            format!("S(u,z)² = c(z)(u - α₁)²/({})", taus(p, "u", &[1, 1]))
        }
        Outcome::SchwarzForm(12) if p.tau.len() == 2 => {
            format!("S(u,z)² = c(z)(u - α₁)(u - α₂)(u - α₃)²/({})", taus(p, "u", &[2, 2]))
        }
        Outcome::SchwarzForm(13) if p.tau.len() == 2 => {
            format!("S(u,z)³ = c(z)(u - α₁)(u - α₂)³/({})", taus(p, "u", &[2, 2]))
        }
        Outcome::SchwarzForm(14) => e14(verdict),
        o => skeleton(o).to_string(),
    }
}

/// The target equation with the known parameters substituted; `a(z)`,
/// `c(z)` and the `alpha_i` stay symbolic. Disjunctions are joined with
/// ` | `.
pub fn render_template(verdict: &ReductionVerdict) -> String {
    verdict.outcomes.iter().map(|&o| one(o, verdict)).collect::<Vec<_>>().join(" | ")
}
