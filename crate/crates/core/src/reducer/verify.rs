use std::fmt;

use num_traits::Zero;

use crate::algebra::{rat_short, Rat, RationalFunction};
use crate::equation::{MobiusMap, SchwarzEquation};
use crate::error::{Error, Result};
use crate::series::{schwarzian_series, LaurentSeries};

/// A closed-form solution guess. `exp` and `tan` are anchored at the base
/// point, so `Exp(k)` at `z0` means `exp(k (z - z0))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Candidate {
    Exp(Rat),
    Tan(Rat),
    MobiusExp(Rat, MobiusMap),
    MobiusTan(Rat, MobiusMap),
    /// A germ given directly; its base point must match.
    Series(LaurentSeries),
    Rational(RationalFunction),
}

impl Candidate {
    fn describe(&self) -> String {
        let anchored = |f: &str, k: &Rat| format!("{f}({}(z - z0))", rat_short(k));
        match self {
            Candidate::Exp(k) => anchored("exp", k),
            Candidate::Tan(k) => anchored("tan", k),
            Candidate::MobiusExp(k, m) => m.render(&anchored("exp", k)),
            Candidate::MobiusTan(k, m) => m.render(&anchored("tan", k)),
            Candidate::Series(s) => s.render(),
            Candidate::Rational(r) => r.render("z"),
        }
    }

    /// `None` when a germ alone cannot tell.
    pub fn is_transcendental(&self) -> Option<bool> {
        match self {
            Candidate::Exp(_) | Candidate::Tan(_) | Candidate::MobiusExp(..) | Candidate::MobiusTan(..) => Some(true),
            Candidate::Series(_) => None,
            Candidate::Rational(_) => Some(false),
        }
    }

    /// `k = 0` degenerates every family to a constant.
    pub fn check(&self) -> Result<()> {
        match self {
            Candidate::Exp(k) | Candidate::Tan(k) | Candidate::MobiusExp(k, _) | Candidate::MobiusTan(k, _)
                if k.is_zero() =>
            {
                Err(Error::UnsupportedCandidate("k = 0 gives a constant".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn series(&self, z0: &Rat, terms: usize) -> Result<LaurentSeries> {
        self.check()?;
        match self {
            Candidate::Exp(k) => Ok(LaurentSeries::exp(k, z0, terms)),
            Candidate::Tan(k) => Ok(LaurentSeries::tan(k, z0, terms)),
            Candidate::MobiusExp(k, m) => m.apply_series(&LaurentSeries::exp(k, z0, terms)),
            Candidate::MobiusTan(k, m) => m.apply_series(&LaurentSeries::tan(k, z0, terms)),
            Candidate::Series(s) => {
                if s.base() != z0 {
                    return Err(Error::BasePointMismatch { left: rat_short(s.base()), right: rat_short(z0) });
                }
                Ok(s.clone())
            }
            Candidate::Rational(r) => {
                if r.is_constant() {
                    return Err(Error::UnsupportedCandidate(format!("constant {}", r.render("z"))));
                }
                Ok(LaurentSeries::from_rational(r, z0, terms))
            }
        }
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateReport {
    pub candidate: String,
    pub z0: Rat,
    pub trunc: usize,
    /// `S(u)^m - R(z, u)` at `z0`.
    pub residual: LaurentSeries,
    /// The residual vanishes on at least one trusted power.
    pub verified: bool,
    pub transcendental: Option<bool>,
}

impl CandidateReport {
    pub fn render(&self) -> String {
        let verdict = if self.verified { "verified" } else { "not verified" };
        let kind = match self.transcendental {
            Some(true) => "transcendental",
            Some(false) => "not transcendental",
            None => "local germ",
        };
        format!("{} at z0 = {}: residual {} ({verdict}, {kind})", self.candidate, rat_short(&self.z0), self.residual)
    }
}

/// Expands the candidate with `trunc` terms at `z0` and substitutes it
/// into both sides of the equation.
pub fn verify_candidate(
    eq: &SchwarzEquation,
    candidate: &Candidate,
    z0: &Rat,
    trunc: usize,
) -> Result<CandidateReport> {
    let u = candidate.series(z0, trunc)?;
    let here = rat_short(z0);
    let s = match schwarzian_series(&u) {
        Err(Error::DivisionByZeroSeries) => {
            return Err(Error::SingularPoint(format!("{here} (u' vanishes to all orders)")))
        }
        r => r?,
    };
    let lhs = s.pow(eq.m())?;
    let q = u.eval_fpoly(eq.q())?;
    if q.is_zero() {
        return Err(Error::SingularPoint(format!("{here} (Q(z, u) vanishes to all trusted orders)")));
    }
    let rhs = u.eval_fpoly(eq.p())?.div(&q)?;
    let residual = lhs.sub(&rhs)?;
    let verified = residual.is_zero() && residual.trunc() > 0;
    Ok(CandidateReport {
        candidate: candidate.describe(),
        z0: z0.clone(),
        trunc,
        residual,
        verified,
        transcendental: candidate.is_transcendental(),
    })
}
