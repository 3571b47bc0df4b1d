//! From a classified denominator to the target equation a transcendental
//! solution must satisfy.

mod template;
mod verify;

pub use template::{render_template, skeleton};
pub use verify::{verify_candidate, Candidate, CandidateReport};

use std::fmt;

use crate::classifier::{classify_q, QClass, QTag};
use crate::equation::{normalize_degrees, MobiusMap, SchwarzEquation};
use crate::error::Error;
use crate::local::{build_aux_all, degree_feasibility, AuxExpression, FeasibilityReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Riccati,
    /// `E2` through `E7`.
    FirstOrder(u8),
    /// `E8` through `E14`.
    SchwarzForm(u8),
    NoTranscendentalSolution,
    Unclassified,
}

impl Outcome {
    pub fn name(&self) -> String {
        match self {
            Outcome::Riccati => "Riccati".into(),
            Outcome::FirstOrder(k) => format!("FirstOrder(E{k})"),
            Outcome::SchwarzForm(k) => format!("SchwarzForm(E{k})"),
            Outcome::NoTranscendentalSolution => "NoTranscendentalSolution".into(),
            Outcome::Unclassified => "Unclassified".into(),
        }
    }

    pub fn parse(s: &str) -> Option<Outcome> {
        let s = s.trim();
        let inner = |p: &str| s.strip_prefix(p)?.strip_suffix(")")?.strip_prefix('E')?.parse::<u8>().ok();
        match s {
            "Riccati" => Some(Outcome::Riccati),
            "NoTranscendentalSolution" => Some(Outcome::NoTranscendentalSolution),
            "Unclassified" => Some(Outcome::Unclassified),
            _ => {
                if let Some(k) = inner("FirstOrder(").filter(|k| (2..=7).contains(k)) {
                    Some(Outcome::FirstOrder(k))
                } else {
                    inner("SchwarzForm(").filter(|k| (8..=14).contains(k)).map(Outcome::SchwarzForm)
                }
            }
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// An auxiliary function the lemma for the tag builds.
    Auxiliary(Box<AuxExpression>),
    Feasibility(FeasibilityReport),
    /// Why a branch of a disjunction was kept or dropped.
    Branch {
        outcome: Outcome,
        kept: bool,
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionVerdict {
    /// The equation after degree normalization, in `u = mobius(f)`.
    pub equation: SchwarzEquation,
    pub class: QClass,
    /// One entry for a definite verdict, several for a disjunction.
    pub outcomes: Vec<Outcome>,
    pub mobius: MobiusMap,
    pub certificates: Vec<Certificate>,
    pub alternates: Vec<QTag>,
    pub diagnostics: Vec<String>,
}

impl ReductionVerdict {
    /// Outcomes joined with ` | `.
    pub fn outcome_name(&self) -> String {
        self.outcomes.iter().map(Outcome::name).collect::<Vec<_>>().join(" | ")
    }

    pub fn is_disjunctive(&self) -> bool {
        self.outcomes.len() > 1
    }

    pub fn template(&self) -> String {
        render_template(self)
    }
}

impl fmt::Display for ReductionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.outcome_name(), self.template())
    }
}

/// Normalizes degrees, classifies `Q` and applies the verdict table.
pub fn reduce(eq: &SchwarzEquation) -> ReductionVerdict {
    let (norm, mobius) = normalize_degrees(eq);
    let class = classify_q(&norm);
    let m = norm.m();
    let mut certificates = Vec::new();
    let mut diagnostics = Vec::new();
    if !mobius.is_identity() {
        diagnostics.push(format!("deg P != deg Q; classified in u = {}", mobius.render("f")));
    }
    if let Some(note) = &class.note {
        diagnostics.push(note.clone());
    }
    if !class.alternates.is_empty() {
        let alt: Vec<&str> = class.alternates.iter().map(|t| t.name()).collect();
        diagnostics.push(format!("Q also fits {}", alt.join(", ")));
    }
    match build_aux_all(&class, &norm) {
        Ok(aux) => certificates.extend(aux.into_iter().map(|a| Certificate::Auxiliary(Box::new(a)))),
        Err(Error::NoAuxiliary(_)) => {}
        Err(e) => diagnostics.push(format!("auxiliary unavailable: {e}")),
    }

    let outcomes = verdict_table(&class, m, &mut certificates, &mut diagnostics);
    ReductionVerdict {
        equation: norm,
        alternates: class.alternates.clone(),
        class,
        outcomes,
        mobius,
        certificates,
        diagnostics,
    }
}

fn collapse(k: u8, m: u32, diagnostics: &mut Vec<String>) -> Outcome {
    if m == 1 {
        diagnostics.push(format!("E{k} with m = 1 is the case B = 0 of E7"));
        Outcome::FirstOrder(7)
    } else {
        Outcome::FirstOrder(k)
    }
}

fn verdict_table(class: &QClass, m: u32, certs: &mut Vec<Certificate>, diags: &mut Vec<String>) -> Vec<Outcome> {
    use Outcome::*;
    let p = &class.params;
    match class.tag {
        QTag::QE1 | QTag::QE2 | QTag::QE3 => vec![Riccati],
        QTag::QE4 => vec![collapse(2, m, diags)],
        QTag::QE6 => vec![collapse(3, m, diags)],
        QTag::QE12 => vec![collapse(4, m, diags)],
        QTag::QE13 => vec![collapse(5, m, diags)],
        QTag::QE11 => vec![collapse(6, m, diags)],
        QTag::QE5 => {
            diags.push("u = 1/(f - tau1) would solve a Riccati equation with poles of order n >= 2".into());
            vec![NoTranscendentalSolution]
        }
        QTag::QE7 | QTag::QE8 | QTag::QE9 | QTag::QE10 => {
            let reports = [degree_feasibility(class.tag, m, 0), degree_feasibility(class.tag, m, 1)];
            let n_ok = |r: &FeasibilityReport| match (class.tag, p.n) {
                (QTag::QE7, Some(n)) => r.admissible_n.contains(&Some(n)),
                _ => r.feasible,
            };
            let ok = reports.iter().any(n_ok);
            for r in reports {
                diags.push(format!("s = {}: {}", r.s, r.note));
                certs.push(Certificate::Feasibility(r));
            }
            if ok {
                vec![FirstOrder(7)]
            } else {
                vec![NoTranscendentalSolution]
            }
        }
        QTag::QE15 => {
            let n = p.n.expect("QE15 has n");
            let e = 2 * m / n;
            let branches = [
                (Riccati, m == 1, format!("needs m = 1; have m = {m}")),
                (FirstOrder(7), m == 1, format!("needs m = 1; have m = {m}")),
                (SchwarzForm(8), m == 2 && e == 1, format!("needs m = 2 and exponent 1; have m = {m}, exponent {e}")),
                (SchwarzForm(9), m == 2 && e == 2, format!("needs m = 2 and exponent 2; have m = {m}, exponent {e}")),
                (SchwarzForm(10), m == 3 && e == 2, format!("needs m = 3 and exponent 2; have m = {m}, exponent {e}")),
            ];
            narrow(&branches, certs)
        }
        QTag::QE14 => {
            let (n1, n2) = (p.n1.expect("QE14 has n1"), p.n2.expect("QE14 has n2"));
            if n1 != n2 {
                diags.push(format!("n1 = {n1} and n2 = {n2} differ; the lemma forces n1 = n2"));
                return vec![NoTranscendentalSolution];
            }
            let e = 2 * m / n1;
            let branches = [
                (FirstOrder(7), m == 1, format!("needs m = 1; have m = {m}")),
                (SchwarzForm(11), m == 2 && e == 1, format!("needs m = 2, exponents (1, 1); have m = {m}, ({e}, {e})")),
                (SchwarzForm(12), m == 2 && e == 2, format!("needs m = 2, exponents (2, 2); have m = {m}, ({e}, {e})")),
                (SchwarzForm(13), m == 3 && e == 2, format!("needs m = 3, exponents (2, 2); have m = {m}, ({e}, {e})")),
            ];
            narrow(&branches, certs)
        }
        QTag::QE16 => vec![SchwarzForm(14)],
        QTag::Unmatched => vec![Unclassified],
    }
}

fn narrow(branches: &[(Outcome, bool, String)], certs: &mut Vec<Certificate>) -> Vec<Outcome> {
    let mut kept = Vec::new();
    for (o, ok, why) in branches {
        certs.push(Certificate::Branch { outcome: *o, kept: *ok, reason: why.clone() });
        if *ok {
            kept.push(*o);
        }
    }
    if kept.is_empty() {
        kept.push(Outcome::NoTranscendentalSolution);
    }
    kept
}
