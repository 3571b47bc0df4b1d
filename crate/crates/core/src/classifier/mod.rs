//! Matching the factored denominator `Q` against the sixteen canonical
//! forms QE1..QE16.

use std::fmt;

use num_traits::Zero;

use crate::algebra::{rat_short, Rat, RationalFunction};
use crate::equation::SchwarzEquation;
use crate::fpoly::{FPoly, FactoredFPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QTag {
    QE1,
    QE2,
    QE3,
    QE4,
    QE5,
    QE6,
    QE7,
    QE8,
    QE9,
    QE10,
    QE11,
    QE12,
    QE13,
    QE14,
    QE15,
    QE16,
    Unmatched,
}

impl QTag {
    pub const FORMS: [QTag; 16] = [
        QTag::QE1,
        QTag::QE2,
        QTag::QE3,
        QTag::QE4,
        QTag::QE5,
        QTag::QE6,
        QTag::QE7,
        QTag::QE8,
        QTag::QE9,
        QTag::QE10,
        QTag::QE11,
        QTag::QE12,
        QTag::QE13,
        QTag::QE14,
        QTag::QE15,
        QTag::QE16,
    ];

    /// Most constrained first.
    pub const PRIORITY: [QTag; 16] = [
        QTag::QE1,
        QTag::QE2,
        QTag::QE4,
        QTag::QE5,
        QTag::QE3,
        QTag::QE6,
        QTag::QE7,
        QTag::QE9,
        QTag::QE10,
        QTag::QE11,
        QTag::QE13,
        QTag::QE8,
        QTag::QE12,
        QTag::QE14,
        QTag::QE15,
        QTag::QE16,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QTag::QE1 => "QE1",
            QTag::QE2 => "QE2",
            QTag::QE3 => "QE3",
            QTag::QE4 => "QE4",
            QTag::QE5 => "QE5",
            QTag::QE6 => "QE6",
            QTag::QE7 => "QE7",
            QTag::QE8 => "QE8",
            QTag::QE9 => "QE9",
            QTag::QE10 => "QE10",
            QTag::QE11 => "QE11",
            QTag::QE12 => "QE12",
            QTag::QE13 => "QE13",
            QTag::QE14 => "QE14",
            QTag::QE15 => "QE15",
            QTag::QE16 => "QE16",
            QTag::Unmatched => "Unmatched",
        }
    }

    pub fn parse(s: &str) -> Option<QTag> {
        QTag::FORMS.iter().copied().chain([QTag::Unmatched]).find(|t| t.name().eq_ignore_ascii_case(s.trim()))
    }
}

impl fmt::Display for QTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters extracted for a tag. `b`, `b1`, `b2` follow the sign of the
/// forms, so the factor is `f + b`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QParams {
    pub c: Option<RationalFunction>,
    pub b: Option<RationalFunction>,
    pub b1: Option<RationalFunction>,
    pub b2: Option<RationalFunction>,
    pub a0: Option<RationalFunction>,
    pub a1: Option<RationalFunction>,
    pub tau: Vec<Rat>,
    pub n: Option<u32>,
    pub n1: Option<u32>,
    pub n2: Option<u32>,
}

impl QParams {
    /// Name/value pairs in a fixed order, values in the input grammar.
    pub fn entries(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        let rf =
            [("c", &self.c), ("b", &self.b), ("b1", &self.b1), ("b2", &self.b2), ("a0", &self.a0), ("a1", &self.a1)];
        for (k, v) in rf {
            if let Some(v) = v {
                out.push((k.to_string(), v.render("z")));
            }
        }
        for (i, t) in self.tau.iter().enumerate() {
            out.push((format!("tau{}", i + 1), rat_short(t)));
        }
        for (k, v) in [("n", self.n), ("n1", self.n1), ("n2", self.n2)] {
            if let Some(v) = v {
                out.push((k.to_string(), v.to_string()));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QClass {
    pub tag: QTag,
    pub params: QParams,
    /// Other tags the same `Q` also fits, in priority order.
    pub alternates: Vec<QTag>,
    pub note: Option<String>,
}

impl QClass {
    fn unmatched(note: impl Into<String>) -> Self {
        QClass { tag: QTag::Unmatched, params: QParams::default(), alternates: Vec::new(), note: Some(note.into()) }
    }

    pub fn render(&self) -> String {
        let params: Vec<String> = self.params.entries().into_iter().map(|(k, v)| format!("{k} = {v}")).collect();
        let mut s = self.tag.to_string();
        if !params.is_empty() {
            s.push_str(&format!(" [{}]", params.join(", ")));
        }
        if !self.alternates.is_empty() {
            let alt: Vec<&str> = self.alternates.iter().map(|t| t.name()).collect();
            s.push_str(&format!(" (also {})", alt.join(", ")));
        }
        s
    }
}

impl fmt::Display for QClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Factors of `Q` sorted into the shapes the forms distinguish.
struct Shape {
    /// `(b, mult)` for factors `f + b` with `b` nonconstant.
    moving: Vec<(RationalFunction, u32)>,
    /// `(tau, mult)` for factors `f - tau`, ascending in `tau`.
    fixed: Vec<(Rat, u32)>,
    /// Irreducible monic quadratics `f^2 + a1 f + a0`.
    quadratic: Vec<(RationalFunction, RationalFunction, u32)>,
}

impl Shape {
    fn of(fac: &FactoredFPoly) -> Shape {
        let mut shape = Shape { moving: Vec::new(), fixed: Vec::new(), quadratic: Vec::new() };
        for (p, k) in &fac.factors {
            let k = *k as u32;
            match p.linear_root() {
                Some(r) => match r.as_constant() {
                    Some(t) => shape.fixed.push((t, k)),
                    None => shape.moving.push((-&r, k)),
                },
                None => shape.quadratic.push((p.coeff(0), p.coeff(1), k)),
            }
        }
        shape.fixed.sort_by(|a, b| a.0.cmp(&b.0));
        shape.moving.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        shape
    }

    fn counts(&self) -> (usize, usize, usize) {
        (self.moving.len(), self.fixed.len(), self.quadratic.len())
    }
}

/// Exponent slot of a constant factor.
#[derive(Clone, Copy)]
enum Slot {
    Fixed(u32),
    /// `2m/n` with `n >= 2`, `n | 2m`.
    Div,
}

/// `n` with `2m/n = e`, if `e` is a legal `2m/n`.
fn divisor_for(m: u32, e: u32) -> Option<u32> {
    (e > 0 && (2 * m).is_multiple_of(e) && 2 * m / e >= 2).then(|| 2 * m / e)
}

/// `num * m / den` when it is a positive integer.
fn frac(m: u32, num: u32, den: u32) -> Option<u32> {
    (num * m).is_multiple_of(den).then(|| num * m / den)
}

fn slots(tag: QTag, m: u32) -> Option<Vec<Slot>> {
    use Slot::*;
    let f = |num, den| frac(m, num, den).map(Fixed);
    Some(match tag {
        QTag::QE6 => vec![Fixed(m); 4],
        QTag::QE7 => vec![Fixed(m), Fixed(m), Div],
        QTag::QE8 => vec![Fixed(m), f(2, 3)?, f(2, 3)?],
        QTag::QE9 => {
            if !m.is_multiple_of(6) {
                return None;
            }
            vec![Fixed(m), f(2, 3)?, f(1, 2)?]
        }
        QTag::QE10 => vec![Fixed(m), f(2, 3)?, f(2, 5)?],
        QTag::QE11 => vec![Fixed(m), f(2, 3)?, f(1, 3)?],
        QTag::QE12 => vec![f(2, 3)?; 3],
        QTag::QE13 => vec![Fixed(m), f(1, 2)?, f(1, 2)?],
        QTag::QE14 => vec![Div, Div],
        QTag::QE15 => vec![Div],
        _ => return None,
    })
}

/// First assignment of the ascending `fixed` list to `slots`, trying
/// permutations in lexicographic order. Returns the permuted list and the
/// divisors of the `Div` slots.
fn assign(fixed: &[(Rat, u32)], slots: &[Slot], m: u32) -> Option<(Vec<Rat>, Vec<u32>)> {
    if fixed.len() != slots.len() {
        return None;
    }
    let mut idx: Vec<usize> = (0..fixed.len()).collect();
    loop {
        let mut ns = Vec::new();
        let ok = idx.iter().zip(slots).all(|(&i, s)| match s {
            Slot::Fixed(e) => fixed[i].1 == *e,
            Slot::Div => divisor_for(m, fixed[i].1).map(|n| ns.push(n)).is_some(),
        });
        if ok {
            return Some((idx.iter().map(|&i| fixed[i].0.clone()).collect(), ns));
        }
        if !next_permutation(&mut idx) {
            return None;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn try_tag(tag: QTag, m: u32, shape: &Shape, unit: &RationalFunction) -> Option<QParams> {
    let mut p = QParams { c: Some(unit.clone()), ..QParams::default() };
    let (nm, nf, nq) = shape.counts();
    match tag {
        QTag::QE1 => {
            if (nm, nf, nq) != (2, 0, 0) || shape.moving.iter().any(|x| x.1 != 2 * m) {
                return None;
            }
            p.b1 = Some(shape.moving[0].0.clone());
            p.b2 = Some(shape.moving[1].0.clone());
        }
        QTag::QE2 => {
            if (nm, nf, nq) != (0, 0, 1) {
                return None;
            }
            let (a0, a1, k) = &shape.quadratic[0];
            if *k != 2 * m || (a0.is_constant() && a1.is_constant()) {
                return None;
            }
            p.a0 = Some(a0.clone());
            p.a1 = Some(a1.clone());
        }
        QTag::QE3 | QTag::QE4 | QTag::QE5 => {
            let want_fixed = match tag {
                QTag::QE3 => 0,
                QTag::QE4 => 2,
                _ => 1,
            };
            if (nm, nf, nq) != (1, want_fixed, 0) || shape.moving[0].1 != 2 * m {
                return None;
            }
            p.b = Some(shape.moving[0].0.clone());
            match tag {
                QTag::QE4 => {
                    if shape.fixed.iter().any(|x| x.1 != m) {
                        return None;
                    }
                    p.tau = shape.fixed.iter().map(|x| x.0.clone()).collect();
                }
                QTag::QE5 => {
                    p.n = Some(divisor_for(m, shape.fixed[0].1)?);
                    p.tau = vec![shape.fixed[0].0.clone()];
                }
                _ => {}
            }
        }
        QTag::QE16 => {
            if (nm, nf, nq) != (0, 0, 0) {
                return None;
            }
        }
        _ => {
            if nm != 0 || nq != 0 {
                return None;
            }
            let sl = slots(tag, m)?;
            let (tau, ns) = assign(&shape.fixed, &sl, m)?;
            p.tau = tau;
            match (tag, ns.as_slice()) {
                (QTag::QE14, [a, b]) => {
                    p.n1 = Some(*a);
                    p.n2 = Some(*b);
                }
                (_, [n]) => p.n = Some(*n),
                _ => {}
            }
        }
    }
    Some(p)
}

/// Classifies the denominator of `eq` as given (no normalization).
pub fn classify_q(eq: &SchwarzEquation) -> QClass {
    match eq.factored_q() {
        Ok(fac) => classify_factored(eq.m(), fac),
        Err(e) => QClass::unmatched(e.to_string()),
    }
}

/// Classifies `Q` directly; the unit is read off the factorization.
pub fn classify_denominator(m: u32, q: &FPoly) -> QClass {
    match crate::fpoly::squarefree_factor(q) {
        Ok(fac) => classify_factored(m, &fac),
        Err(e) => QClass::unmatched(e.to_string()),
    }
}

fn classify_factored(m: u32, fac: &FactoredFPoly) -> QClass {
    let shape = Shape::of(fac);
    let mut hits = QTag::PRIORITY.iter().filter_map(|&t| try_tag(t, m, &shape, &fac.unit).map(|p| (t, p)));
    match hits.next() {
        Some((tag, params)) => QClass { tag, params, alternates: hits.map(|h| h.0).collect(), note: None },
        None => {
            let why = if shape.quadratic.iter().any(|q| q.0.is_constant() && q.1.is_constant()) {
                "Q has a quadratic factor with constant irrational roots"
            } else {
                "Q fits none of the sixteen forms"
            };
            QClass::unmatched(why)
        }
    }
}

/// A legal multiplicity vector for a tag: exponents in the order the form
/// lists its factors, and the divisors `n` (or `n1`, `n2`) that produce
/// them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentPattern {
    pub exponents: Vec<u32>,
    pub divisors: Vec<u32>,
}

/// `n` with `n >= 2` and `n | 2m`, ascending.
pub fn legal_divisors(m: u32) -> Vec<u32> {
    (2..=2 * m).filter(|n| (2 * m).is_multiple_of(*n)).collect()
}

/// All exponent patterns the tag admits for `m`; empty when the
/// divisibility conditions fail.
pub fn enumerate_candidates(m: u32, tag: QTag) -> Vec<ExponentPattern> {
    let pat = |exponents: Vec<u32>, divisors: Vec<u32>| ExponentPattern { exponents, divisors };
    let two = 2 * m;
    match tag {
        QTag::Unmatched => Vec::new(),
        QTag::QE1 => vec![pat(vec![two, two], vec![])],
        QTag::QE2 | QTag::QE3 => vec![pat(vec![two], vec![])],
        QTag::QE4 => vec![pat(vec![two, m, m], vec![])],
        QTag::QE5 => legal_divisors(m).into_iter().map(|n| pat(vec![two, two / n], vec![n])).collect(),
        QTag::QE16 => vec![pat(vec![], vec![])],
        QTag::QE7 => legal_divisors(m).into_iter().map(|n| pat(vec![m, m, two / n], vec![n])).collect(),
        QTag::QE14 => {
            let ds = legal_divisors(m);
            let mut out = Vec::new();
            for (i, &a) in ds.iter().enumerate() {
                for &b in &ds[i..] {
                    out.push(pat(vec![two / a, two / b], vec![a, b]));
                }
            }
            out
        }
        QTag::QE15 => legal_divisors(m).into_iter().map(|n| pat(vec![two / n], vec![n])).collect(),
        _ => match slots(tag, m) {
            Some(sl) => vec![pat(
                sl.iter()
                    .map(|s| match s {
                        Slot::Fixed(e) => *e,
                        Slot::Div => unreachable!(),
                    })
                    .collect(),
                vec![],
            )],
            None => Vec::new(),
        },
    }
}

/// Smallest `m` for which the tag has a legal pattern.
pub fn smallest_legal_m(tag: QTag) -> Option<u32> {
    (1..=60).find(|&m| !enumerate_candidates(m, tag).is_empty())
}

/// The `c(z)` of a classification, defaulting to one.
pub fn unit_of(class: &QClass) -> RationalFunction {
    class.params.c.clone().unwrap_or_else(RationalFunction::one)
}

/// Whether every `tau` in a classification is distinct (always true for
/// factorizations, kept as a checked invariant).
pub fn taus_distinct(class: &QClass) -> bool {
    let t = &class.params.tau;
    (0..t.len()).all(|i| (i + 1..t.len()).all(|j| !(&t[i] - &t[j]).is_zero()))
}
