//! The equation `S(f, z)^m = P(z, f) / Q(z, f)` and the symbolic
//! Schwarzian of rational functions.

mod mobius;

pub use mobius::{apply_mobius, normalize_degrees, MobiusMap};

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{denom_lcm, numer_gcd, rat, Poly, Rat, RationalFunction};
use crate::error::{Error, Result};
use crate::fpoly::{fp_gcd, squarefree_factor, FPoly, FactoredFPoly};

/// `S(f, z)^m = P / Q` with `P`, `Q` coprime in `f`.
///
/// Stored in a canonical form: coefficients lie in `Z[z]`, the joint
/// content over `Q[z]` is one, the integer content is one, and the leading
/// coefficient of `Q` is positive. Two equations with the same solutions
/// and the same `m` therefore compare equal.
#[derive(Clone)]
pub struct SchwarzEquation {
    m: u32,
    p: FPoly,
    q: FPoly,
    factored_q: OnceLock<Result<FactoredFPoly>>,
}

impl SchwarzEquation {
    pub fn new(m: u32, p: FPoly, q: FPoly) -> Result<Self> {
        if m == 0 {
            return Err(Error::NonPositiveExponent("0".into()));
        }
        if q.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let g = fp_gcd(&p, &q);
        let (p, q) = if g.deg() >= 1 { (p.exact_div(&g), q.exact_div(&g)) } else { (p, q) };
        let (p, q) = canonical_pair(p, q);
        Ok(Self { m, p, q, factored_q: OnceLock::new() })
    }

    /// Builds from a rational right-hand side `r(z)`, constant in `f`.
    pub fn from_rational(m: u32, r: &RationalFunction) -> Result<Self> {
        Self::new(
            m,
            FPoly::constant(RationalFunction::from_poly(r.num().clone())),
            FPoly::constant(RationalFunction::from_poly(r.den().clone())),
        )
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn p(&self) -> &FPoly {
        &self.p
    }

    pub fn q(&self) -> &FPoly {
        &self.q
    }

    pub fn deg_p(&self) -> usize {
        self.p.deg()
    }

    pub fn deg_q(&self) -> usize {
        self.q.deg()
    }

    /// Whether `P` and `Q` are coprime in `f` (always true once built).
    pub fn is_coprime(&self) -> bool {
        fp_gcd(&self.p, &self.q).deg() == 0
    }

    /// Factored `Q`, computed once.
    pub fn factored_q(&self) -> &Result<FactoredFPoly> {
        self.factored_q.get_or_init(|| squarefree_factor(&self.q))
    }

    /// `R(z, f)` at a rational-function value of `f`.
    pub fn rhs_at(&self, f: &RationalFunction) -> Result<RationalFunction> {
        self.p.eval(f).checked_div(&self.q.eval(f))
    }

    /// Renders in the input grammar.
    pub fn render(&self) -> String {
        let lhs = if self.m == 1 { "S(f)".to_string() } else { format!("S(f)^{}", self.m) };
        let p = self.p.render("f");
        if self.q.is_one() {
            return format!("{lhs} = {p}");
        }
        let q = self.q.render("f");
        let p = if p.contains(' ') { format!("({p})") } else { p };
        // The denominator must be a single atom or power to survive `/`.
        let q = if q.contains([' ', '*', '/']) || q.starts_with('-') { format!("({q})") } else { q };
        format!("{lhs} = {p}/{q}")
    }
}

impl PartialEq for SchwarzEquation {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.p == other.p && self.q == other.q
    }
}

impl Eq for SchwarzEquation {}

impl fmt::Display for SchwarzEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for SchwarzEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SchwarzEquation({self})")
    }
}

/// Scales `p` and `q` by a common unit into the canonical form described
/// on [`SchwarzEquation`].
fn canonical_pair(p: FPoly, q: FPoly) -> (FPoly, FPoly) {
    let all: Vec<&RationalFunction> = p.coeffs().iter().chain(q.coeffs()).collect();
    let mut lcm = Poly::one();
    for c in &all {
        let g = lcm.gcd(c.den());
        lcm = (&lcm * c.den()).exact_div(&g);
    }
    let mut g = Poly::zero();
    for c in &all {
        if c.is_zero() {
            continue;
        }
        let n = &c.num().clone() * &lcm.exact_div(c.den());
        g = if g.is_zero() { n.monic() } else { g.gcd(&n) };
    }
    // unit = lcm / g, then the rational scalar making integer coefficients
    // with unit content.
    let unit = RationalFunction::new(lcm, g).expect("nonzero content");
    let scaled: Vec<RationalFunction> = all.iter().map(|c| *c * &unit).collect();
    let rats: Vec<&Rat> = scaled.iter().flat_map(|c| c.num().coeffs()).collect();
    let l = denom_lcm(rats.iter().copied());
    let ints: Vec<Rat> = rats.iter().map(|r| *r * Rat::from_integer(l.clone())).collect();
    let content = numer_gcd(ints.iter());
    let mut scalar = Rat::new(l, if content.is_zero() { BigInt::one() } else { content });
    let q_lead = (q.leading().unwrap() * &unit).num().leading().cloned().unwrap_or_else(Rat::one);
    if q_lead.is_negative() {
        scalar = -scalar;
    }
    let unit = unit.scale(&scalar);
    (p.scale(&unit), q.scale(&unit))
}

/// `S(f, z) = f'''/f' - 3/2 (f''/f')^2` for a rational function of `z`.
pub fn schwarzian_rational(f: &RationalFunction) -> Result<RationalFunction> {
    let d1 = f.derivative();
    if d1.is_zero() {
        return Err(Error::ConstantInput);
    }
    let d2 = d1.derivative();
    let d3 = d2.derivative();
    let l = d2.checked_div(&d1)?;
    Ok(&d3.checked_div(&d1)? - &(&l * &l).scale(&rat(3, 2)))
}
