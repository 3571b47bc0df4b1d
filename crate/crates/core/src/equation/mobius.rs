use std::fmt;

use num_traits::{One, Zero};

use super::SchwarzEquation;
use crate::algebra::{int, rat_short, Rat, RationalFunction};
use crate::error::{Error, Result};
use crate::fpoly::FPoly;
use crate::series::LaurentSeries;

/// `u = (a f + b) / (c f + d)` with constant entries and `ad - bc != 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MobiusMap {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl MobiusMap {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<Self> {
        let m = Self { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::DegenerateMap);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Self { a: Rat::one(), b: Rat::zero(), c: Rat::zero(), d: Rat::one() }
    }

    pub fn det(&self) -> Rat {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.d.clone(), b: -self.b.clone(), c: -self.c.clone(), d: self.a.clone() }
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &Self) -> Self {
        Self {
            a: &self.a * &inner.a + &self.b * &inner.c,
            b: &self.a * &inner.b + &self.b * &inner.d,
            c: &self.c * &inner.a + &self.d * &inner.c,
            d: &self.c * &inner.b + &self.d * &inner.d,
        }
    }

    pub fn apply_rf(&self, f: &RationalFunction) -> Result<RationalFunction> {
        let num = &f.scale(&self.a) + &RationalFunction::constant(self.b.clone());
        let den = &f.scale(&self.c) + &RationalFunction::constant(self.d.clone());
        num.checked_div(&den)
    }

    pub fn apply_series(&self, f: &LaurentSeries) -> Result<LaurentSeries> {
        let base = f.base().clone();
        let big = f.trunc().max(0) + f.precision().max(1) + 64;
        let num = f.scale(&self.a).add(&LaurentSeries::constant(self.b.clone(), base.clone(), big))?;
        let den = f.scale(&self.c).add(&LaurentSeries::constant(self.d.clone(), base, big))?;
        num.div(&den)
    }

    pub fn render(&self, var: &str) -> String {
        let lin = |x: &Rat, y: &Rat| -> String {
            match (x.is_zero(), y.is_zero()) {
                (true, _) => rat_short(y),
                (false, true) => coef_var(x, var),
                (false, false) => {
                    let s = coef_var(x, var);
                    if y < &Rat::zero() {
                        format!("{s} - {}", rat_short(&-y.clone()))
                    } else {
                        format!("{s} + {}", rat_short(y))
                    }
                }
            }
        };
        let n = lin(&self.a, &self.b);
        let d = lin(&self.c, &self.d);
        if self.c.is_zero() && self.d.is_one() {
            return n;
        }
        let n = if n.contains(' ') { format!("({n})") } else { n };
        let d = if d.contains(' ') || d.contains('/') { format!("({d})") } else { d };
        format!("{n}/{d}")
    }
}

fn coef_var(x: &Rat, var: &str) -> String {
    if x.is_one() {
        var.to_string()
    } else if x == &-Rat::one() {
        format!("-{var}")
    } else {
        format!("{}*{var}", rat_short(x))
    }
}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u = {}", self.render("f"))
    }
}

impl fmt::Debug for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mobius({self})")
    }
}

/// The equation satisfied by `u = M(f)` when `f` solves `eq`.
///
/// Substitutes `f = (d u - b)/(a - c u)` and multiplies `P` and `Q` by
/// `(a - c u)^N`, `N = max(deg P, deg Q)`; `m` is unchanged since the
/// Schwarzian is Möbius invariant.
pub fn apply_mobius(eq: &SchwarzEquation, m: &MobiusMap) -> Result<SchwarzEquation> {
    if m.det().is_zero() {
        return Err(Error::DegenerateMap);
    }
    if m.is_identity() {
        return Ok(eq.clone());
    }
    let num = FPoly::from_rats(&[-m.b.clone(), m.d.clone()]);
    let den = FPoly::from_rats(&[m.a.clone(), -m.c.clone()]);
    let n = eq.deg_p().max(eq.deg_q());
    let p = eq.p().homogenize(&num, &den, n);
    let q = eq.q().homogenize(&num, &den, n);
    SchwarzEquation::new(eq.m(), p, q)
}

/// Balances `deg P` and `deg Q` with `u = f/(f - t)` for the least
/// integer `t >= 1` at which neither `P` nor `Q` vanishes identically.
/// Returns the identity when the degrees already agree.
pub fn normalize_degrees(eq: &SchwarzEquation) -> (SchwarzEquation, MobiusMap) {
    if eq.deg_p() == eq.deg_q() {
        return (eq.clone(), MobiusMap::identity());
    }
    let mut t = 1i64;
    loop {
        let tf = RationalFunction::constant(int(t));
        if !eq.p().eval(&tf).is_zero() && !eq.q().eval(&tf).is_zero() {
            let map = MobiusMap::new(Rat::one(), Rat::zero(), Rat::one(), -int(t)).expect("t != 0");
            let out = apply_mobius(eq, &map).expect("invertible map");
            debug_assert_eq!(out.deg_p(), out.deg_q());
            return (out, map);
        }
        t += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;

    fn rf(c: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(Poly::new(c.iter().map(|&x| int(x)).collect()))
    }

    fn f_pow(k: u32) -> FPoly {
        FPoly::var().pow(k)
    }

    #[test]
    fn reciprocal_map() {
        let eq = SchwarzEquation::new(1, FPoly::one(), f_pow(2)).unwrap();
        let m = MobiusMap::new(int(0), int(1), int(1), int(0)).unwrap();
        let out = apply_mobius(&eq, &m).unwrap();
        assert_eq!(out, SchwarzEquation::new(1, f_pow(2), FPoly::one()).unwrap());
    }

    #[test]
    fn identity_and_inverse() {
        let p = &FPoly::linear(&rf(&[0, 1])) * &FPoly::linear_const(&int(3));
        let q = &FPoly::linear_const(&int(1)).pow(2) * &FPoly::linear_const(&int(2));
        let eq = SchwarzEquation::new(2, p, q).unwrap();
        assert_eq!(apply_mobius(&eq, &MobiusMap::identity()).unwrap(), eq);
        let m = MobiusMap::new(int(2), int(1), int(1), int(3)).unwrap();
        let there = apply_mobius(&eq, &m).unwrap();
        assert_eq!(apply_mobius(&there, &m.inverse()).unwrap(), eq);
    }

    #[test]
    fn normalize_square() {
        let eq = SchwarzEquation::new(1, f_pow(2), FPoly::one()).unwrap();
        let (out, map) = normalize_degrees(&eq);
        assert_eq!(map, MobiusMap::new(int(1), int(0), int(1), int(-1)).unwrap());
        let want = SchwarzEquation::new(1, f_pow(2), FPoly::linear_const(&int(1)).pow(2)).unwrap();
        assert_eq!(out, want);
    }

    #[test]
    fn normalize_reciprocal_square() {
        let eq = SchwarzEquation::new(1, FPoly::one(), f_pow(2)).unwrap();
        let (out, _) = normalize_degrees(&eq);
        assert_eq!(out.deg_p(), 2);
        assert_eq!(out.deg_q(), 2);
        let want = SchwarzEquation::new(1, FPoly::linear_const(&int(1)).pow(2), f_pow(2)).unwrap();
        assert_eq!(out, want);
    }

    #[test]
    fn degenerate_map_rejected() {
        assert!(matches!(MobiusMap::new(int(1), int(2), int(2), int(4)), Err(Error::DegenerateMap)));
    }
}
