//! Truncated Laurent series at a rational base point, with the precision
//! of every result tracked explicitly.

mod schwarzian;

pub use schwarzian::{schwarzian_series, schwarzian_series_both};

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{int, rat_short, ArithOp, Poly, Rat, RationalFunction};
use crate::error::{Error, Result};
use crate::fpoly::FPoly;

/// Default number of retained coefficients.
pub const DEFAULT_TRUNC: usize = 16;

/// Truncation order standing in for "exact" on finite expressions.
const EXACT: i64 = 1 << 40;

/// Cap on quotient length when both operands are exact.
const MAX_DIV_TERMS: i64 = 4096;

/// `sum_{k = min_order}^{trunc - 1} c_k (z - base)^k + O((z - base)^trunc)`.
///
/// The coefficient at `min_order` is nonzero unless the series is zero up
/// to truncation, in which case `coeffs` is empty and
/// `min_order = trunc - 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    base: Rat,
    min_order: i64,
    coeffs: Vec<Rat>,
    trunc: i64,
}

impl LaurentSeries {
    /// Builds a series from coefficients starting at `min_order`, keeping
    /// only powers below `trunc`. Leading zeros are stripped.
    pub fn new(base: Rat, min_order: i64, coeffs: Vec<Rat>, trunc: i64) -> Self {
        let mut min_order = min_order;
        let keep = (trunc - min_order).max(0) as usize;
        let mut coeffs: Vec<Rat> = coeffs.into_iter().take(keep).collect();
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => Self::zero(base, trunc),
            Some(k) => {
                coeffs.drain(..k);
                min_order += k as i64;
                while coeffs.last().is_some_and(|c| c.is_zero()) {
                    coeffs.pop();
                }
                Self { base, min_order, coeffs, trunc }
            }
        }
    }

    /// `O((z - base)^trunc)`.
    pub fn zero(base: Rat, trunc: i64) -> Self {
        Self { base, min_order: trunc - 1, coeffs: Vec::new(), trunc }
    }

    pub fn constant(c: Rat, base: Rat, trunc: i64) -> Self {
        Self::new(base, 0, vec![c], trunc)
    }

    pub fn one(base: Rat, trunc: i64) -> Self {
        Self::constant(Rat::one(), base, trunc)
    }

    /// The series of `z` itself, `base + (z - base)`.
    pub fn var(base: Rat, trunc: i64) -> Self {
        Self::new(base.clone(), 0, vec![base, Rat::one()], trunc)
    }

    /// `c (z - base)^k`, exact below `trunc`.
    pub fn monomial(c: Rat, k: i64, base: Rat, trunc: i64) -> Self {
        Self::new(base, k, vec![c], trunc)
    }

    /// Laurent expansion of a rational function with `terms` coefficients
    /// counted from its order at `base`.
    pub fn from_rational(f: &RationalFunction, base: &Rat, terms: usize) -> Self {
        if f.is_zero() {
            return Self::zero(base.clone(), terms as i64);
        }
        let num = f.num().shift(base);
        let den = f.den().shift(base);
        let vn = num.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0);
        let vd = den.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0);
        let min = vn as i64 - vd as i64;
        let n: Vec<Rat> = num.coeffs()[vn..].to_vec();
        let d: Vec<Rat> = den.coeffs()[vd..].to_vec();
        let coeffs = power_series_div(&n, &d, terms);
        Self::new(base.clone(), min, coeffs, min + terms as i64)
    }

    /// Expansion of a rational function accurate below the absolute power
    /// `trunc`.
    pub fn from_rational_to(f: &RationalFunction, base: &Rat, trunc: i64) -> Self {
        if f.is_zero() {
            return Self::zero(base.clone(), trunc);
        }
        let v = f.order_at(base).expect("nonzero");
        let terms = (trunc - v).max(0) as usize;
        let s = Self::from_rational(f, base, terms);
        if terms == 0 {
            Self::zero(base.clone(), trunc)
        } else {
            s
        }
    }

    pub fn from_poly(p: &Poly, base: &Rat, trunc: i64) -> Self {
        Self::new(base.clone(), 0, p.shift(base).coeffs().to_vec(), trunc)
    }

    /// `exp(k (z - base))`.
    pub fn exp(k: &Rat, base: &Rat, terms: usize) -> Self {
        let mut coeffs = Vec::with_capacity(terms);
        let mut c = Rat::one();
        for j in 0..terms {
            coeffs.push(c.clone());
            c = c * k / int(j as i64 + 1);
        }
        Self::new(base.clone(), 0, coeffs, terms as i64)
    }

    /// `tan(k (z - base))`, from `T' = k (1 + T^2)`, `T(base) = 0`.
    pub fn tan(k: &Rat, base: &Rat, terms: usize) -> Self {
        let mut t = vec![Rat::zero(); terms];
        for j in 0..terms.saturating_sub(1) {
            let mut sq = Rat::zero();
            for i in 0..=j {
                sq += &t[i] * &t[j - i];
            }
            if j == 0 {
                sq += Rat::one();
            }
            t[j + 1] = k * sq / int(j as i64 + 1);
        }
        Self::new(base.clone(), 0, t, terms as i64)
    }

    pub fn base(&self) -> &Rat {
        &self.base
    }

    /// Lowest power carried; for the zero series, `trunc - 1`.
    pub fn min_order(&self) -> i64 {
        self.min_order
    }

    /// First untrusted power.
    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order of the leading nonzero term, `None` when zero to truncation.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.min_order)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.first()
    }

    /// Coefficient of `(z - base)^k`; `None` at or beyond truncation.
    pub fn coeff(&self, k: i64) -> Option<Rat> {
        if k >= self.trunc {
            return None;
        }
        if k < self.min_order {
            return Some(Rat::zero());
        }
        Some(self.coeffs.get((k - self.min_order) as usize).cloned().unwrap_or_else(Rat::zero))
    }

    /// Number of trusted powers from the leading one.
    pub fn precision(&self) -> i64 {
        self.trunc - self.min_order
    }

    /// One past the highest stored power.
    fn data_end(&self) -> i64 {
        if self.is_zero() {
            i64::MIN / 4
        } else {
            self.min_order + self.coeffs.len() as i64
        }
    }

    /// Drops terms at or beyond `trunc` (never extends precision).
    pub fn truncate(&self, trunc: i64) -> Self {
        if trunc >= self.trunc {
            return self.clone();
        }
        Self::new(self.base.clone(), self.min_order, self.coeffs.clone(), trunc)
    }

    /// Equality on every power below both truncation orders.
    pub fn agrees_with(&self, other: &Self) -> bool {
        if self.base != other.base {
            return false;
        }
        let lo = self.min_order.min(other.min_order);
        let t = self.trunc.min(other.trunc).min(self.data_end().max(other.data_end()).max(lo));
        (lo..t).all(|k| self.coeff(k) == other.coeff(k))
    }

    /// Whether the series is holomorphic at the base point, as far as the
    /// trusted terms show.
    pub fn is_analytic(&self) -> bool {
        self.is_zero() || self.min_order >= 0
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.base.clone(), self.trunc);
        }
        Self {
            base: self.base.clone(),
            min_order: self.min_order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            trunc: self.trunc,
        }
    }

    /// Multiplies by `(z - base)^k`.
    pub fn shift_order(&self, k: i64) -> Self {
        Self {
            base: self.base.clone(),
            min_order: self.min_order + k,
            coeffs: self.coeffs.clone(),
            trunc: self.trunc + k,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    fn check_base(&self, other: &Self) -> Result<()> {
        if self.base == other.base {
            Ok(())
        } else {
            Err(Error::BasePointMismatch { left: rat_short(&self.base), right: rat_short(&other.base) })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        let trunc = self.trunc.min(other.trunc);
        let lo = self.min_order.min(other.min_order);
        let hi = trunc.min(self.data_end().max(other.data_end())).max(lo);
        let coeffs = (lo..hi).map(|k| self.coeff(k).unwrap() + other.coeff(k).unwrap()).collect();
        Ok(Self::new(self.base.clone(), lo, coeffs, trunc))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        let trunc = (self.trunc + other.min_order).min(other.trunc + self.min_order);
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.base.clone(), trunc));
        }
        let min = self.min_order + other.min_order;
        let n = ((trunc - min).max(0) as usize).min(self.coeffs.len() + other.coeffs.len() - 1);
        let mut out = vec![Rat::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        Ok(Self::new(self.base.clone(), min, out, trunc))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZeroSeries);
        }
        let min = self.min_order - other.min_order;
        if self.is_zero() {
            return Ok(Self::zero(self.base.clone(), self.trunc - other.min_order));
        }
        let terms = self.precision().min(other.precision()).clamp(0, MAX_DIV_TERMS) as usize;
        let coeffs = power_series_div(&self.coeffs, &other.coeffs, terms);
        Ok(Self::new(self.base.clone(), min, coeffs, min + terms as i64))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one(self.base.clone(), self.precision()).div(self)
    }

    /// Positive integer power.
    pub fn pow(&self, m: u32) -> Result<Self> {
        assert!(m >= 1, "series power must be positive");
        let mut acc = self.clone();
        for _ in 1..m {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Termwise derivative; truncation order drops by one.
    pub fn derivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero(self.base.clone(), self.trunc - 1);
        }
        let coeffs = self.coeffs.iter().enumerate().map(|(i, c)| c * int(self.min_order + i as i64)).collect();
        Self::new(self.base.clone(), self.min_order - 1, coeffs, self.trunc - 1)
    }

    /// `self(inner)` for a series `self` at `w0` and an `inner` series with
    /// `inner(base) = w0` (constant term `w0`, positive valuation for
    /// `inner - w0`).
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let w0 = self.base.clone();
        let base = inner.base.clone();
        let h = inner.sub(&Self::constant(w0.clone(), base.clone(), EXACT))?;
        let v = match h.valuation() {
            Some(v) if v >= 1 => v,
            _ => {
                return Err(Error::InvalidComposition(format!(
                    "inner series must take the value {} with positive order at {}",
                    rat_short(&w0),
                    rat_short(&base)
                )))
            }
        };
        let mut powk = if self.min_order >= 0 {
            let mut p = Self::one(base.clone(), EXACT);
            for _ in 0..self.min_order {
                p = p.mul(&h)?;
            }
            p
        } else {
            h.recip()?.pow((-self.min_order) as u32)?
        };
        let mut acc = Self::zero(base, EXACT);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                powk = if self.min_order + i as i64 == 0 { Self::one(acc.base.clone(), EXACT) } else { powk.mul(&h)? };
            }
            if !c.is_zero() {
                acc = acc.add(&powk.scale(c))?;
            }
        }
        Ok(acc.truncate(v * self.trunc))
    }

    /// Substitutes the series for `f` in a polynomial whose coefficients
    /// are rational in `z`, expanded at the same base point.
    pub fn eval_fpoly(&self, p: &FPoly) -> Result<Self> {
        let terms = self.precision().max(1) as usize;
        let mut acc = Self::zero(self.base.clone(), EXACT);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self)?;
            if !c.is_zero() {
                acc = acc.add(&Self::from_rational(c, &self.base, terms))?;
            }
        }
        Ok(acc)
    }

    /// Expands a rational function at the base point with matching
    /// precision.
    pub fn expand_like(&self, f: &RationalFunction) -> Self {
        Self::from_rational(f, &self.base, self.precision().max(1) as usize)
    }

    /// Renders with the power variable written as `(z - base)`.
    pub fn render(&self) -> String {
        let var = if self.base.is_zero() {
            "z".to_string()
        } else if self.base.is_negative() {
            format!("(z + {})", rat_short(&-self.base.clone()))
        } else {
            format!("(z - {})", rat_short(&self.base))
        };
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.min_order + i as i64;
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => var.clone(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&rat_short(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{mono}", rat_short(&mag)));
            }
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&format!("O({var}^{})", self.trunc));
        out
    }
}

/// Exact arithmetic on two series at the same base point.
pub fn ls_arith(a: &LaurentSeries, b: &LaurentSeries, op: ArithOp) -> Result<LaurentSeries> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b),
    }
}

pub fn ls_derivative(a: &LaurentSeries) -> LaurentSeries {
    a.derivative()
}

pub fn ls_pow(a: &LaurentSeries, m: u32) -> Result<LaurentSeries> {
    a.pow(m)
}

/// First `terms` coefficients of `n / d` for power series with `d[0] != 0`.
fn power_series_div(n: &[Rat], d: &[Rat], terms: usize) -> Vec<Rat> {
    let inv = d[0].recip();
    let mut q: Vec<Rat> = Vec::with_capacity(terms);
    for k in 0..terms {
        let mut acc = n.get(k).cloned().unwrap_or_else(Rat::zero);
        for j in 1..=k.min(d.len().saturating_sub(1)) {
            acc -= &d[j] * &q[k - j];
        }
        q.push(acc * &inv);
    }
    q
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries[{}]", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn z0() -> Rat {
        Rat::zero()
    }

    fn s(min: i64, c: &[i64], trunc: i64) -> LaurentSeries {
        LaurentSeries::new(z0(), min, c.iter().map(|&x| int(x)).collect(), trunc)
    }

    #[test]
    fn division_examples() {
        let one_plus_z = s(0, &[1, 1], 10);
        assert!(one_plus_z.div(&LaurentSeries::one(z0(), 10)).unwrap().agrees_with(&one_plus_z));
        let g = LaurentSeries::one(z0(), 10).div(&one_plus_z).unwrap();
        assert_eq!(g.trunc(), 10);
        for k in 0..10 {
            assert_eq!(g.coeff(k).unwrap(), int(if k % 2 == 0 { 1 } else { -1 }));
        }
        let p = s(-1, &[1], 10).mul(&s(1, &[1], 10)).unwrap();
        assert!(p.agrees_with(&LaurentSeries::one(z0(), 10)));
    }

    #[test]
    fn derivative_examples() {
        let d = s(-1, &[1], 10).derivative();
        assert_eq!(d.min_order(), -2);
        assert_eq!(d.leading(), Some(&int(-1)));
        assert_eq!(d.trunc(), 9);
        let d = s(0, &[3, 0, 1], 10).derivative();
        assert_eq!((d.min_order(), d.coeffs().to_vec()), (1, vec![int(2)]));
        assert!(LaurentSeries::zero(z0(), 5).derivative().is_zero());
    }

    #[test]
    fn powers() {
        assert_eq!(s(-1, &[1], 10).pow(3).unwrap().min_order(), -3);
        let sq = s(0, &[1, 1], 10).pow(2).unwrap();
        assert_eq!(sq.coeffs(), &[int(1), int(2), int(1)]);
        let q = LaurentSeries::new(z0(), -2, vec![rat(-3, 2)], 10).pow(2).unwrap();
        assert_eq!((q.min_order(), q.leading().cloned()), (-4, Some(rat(9, 4))));
    }

    #[test]
    fn rational_expansion_away_from_zero() {
        let f = RationalFunction::new(Poly::one(), Poly::linear_root(&int(1))).unwrap();
        let s = LaurentSeries::from_rational(&f, &int(1), 5);
        assert_eq!((s.min_order(), s.trunc()), (-1, 4));
        let s2 = LaurentSeries::from_rational(&f, &int(3), 5);
        assert_eq!(s2.coeff(0), Some(rat(1, 2)));
        assert_eq!(s2.coeff(1), Some(rat(-1, 4)));
    }

    #[test]
    fn tan_recursion() {
        let t = LaurentSeries::tan(&int(1), &z0(), 8);
        assert_eq!(t.coeff(1), Some(int(1)));
        assert_eq!(t.coeff(3), Some(rat(1, 3)));
        assert_eq!(t.coeff(5), Some(rat(2, 15)));
        assert_eq!(t.coeff(7), Some(rat(17, 315)));
    }

    #[test]
    fn composition_of_exp_with_shift() {
        // exp(w) at w0 = 0 composed with g = 2z at z0 = 0 is exp(2z)
        let e = LaurentSeries::exp(&int(1), &z0(), 10);
        let g = s(1, &[2], 10);
        let c = e.compose(&g).unwrap();
        assert!(c.agrees_with(&LaurentSeries::exp(&int(2), &z0(), 10)));
        assert!(c.trunc() >= 10);
    }

    #[test]
    fn mismatched_bases_fail() {
        let a = LaurentSeries::one(int(0), 4);
        let b = LaurentSeries::one(int(1), 4);
        assert!(matches!(a.add(&b), Err(Error::BasePointMismatch { .. })));
        assert!(matches!(a.div(&LaurentSeries::zero(int(0), 4)), Err(Error::DivisionByZeroSeries)));
    }
}
