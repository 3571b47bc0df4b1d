use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Poly, Rat};
use crate::error::{Error, Result};

/// Quotient of polynomials in `z` kept in canonical form: numerator and
/// denominator coprime, denominator monic. Canonical form makes equality
/// structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact arithmetic on two rational functions.
pub fn rf_arith(a: &RationalFunction, b: &RationalFunction, op: ArithOp) -> Result<RationalFunction> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g), den.exact_div(&g))
            }
        };
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            Self { num, den }
        } else {
            let inv = lc.recip();
            Self { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        Self { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self { num: Poly::constant(c), den: Poly::one() }
    }

    /// The function `z`.
    pub fn var() -> Self {
        Self::from_poly(Poly::var())
    }

    pub fn from_poly(p: Poly) -> Self {
        Self { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &rhs.recip_unchecked())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.recip_unchecked())
    }

    fn recip_unchecked(&self) -> Self {
        // already coprime, only the monic normalization changes
        Self::normalized(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Signed integer power. Panics when raising zero to a negative power.
    pub fn pow(&self, exp: i64) -> Self {
        let base = if exp < 0 { self.recip().expect("zero raised to a negative power") } else { self.clone() };
        let e = exp.unsigned_abs() as u32;
        Self { num: base.num.pow(e), den: base.den.pow(e) }
    }

    /// Quotient-rule derivative.
    pub fn derivative(&self) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative());
        }
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::normalized(num, &self.den * &self.den)
    }

    /// Value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Multiplicity of a zero (positive) or pole (negative) at `z0`.
    pub fn order_at(&self, z0: &Rat) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let lin = Poly::linear_root(z0);
        let mult = |p: &Poly| {
            let mut p = p.clone();
            let mut k = 0i64;
            loop {
                let (q, r) = p.div_rem(&lin);
                if !r.is_zero() {
                    return k;
                }
                p = q;
                k += 1;
            }
        };
        Ok(mult(&self.num) - mult(&self.den))
    }

    /// Whether `z0` is neither a zero nor a pole.
    pub fn is_regular_nonzero_at(&self, z0: &Rat) -> bool {
        matches!(self.order_at(z0), Ok(0))
    }

    /// `self(inner(z))` for a rational `inner`.
    pub fn compose(&self, inner: &RationalFunction) -> Result<Self> {
        let eval = |p: &Poly| -> Self {
            p.coeffs().iter().rev().fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
        };
        eval(&self.num).checked_div(&eval(&self.den))
    }

    /// Square root in the field, if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        let n = self.num.sqrt()?;
        let d = self.den.sqrt()?;
        Some(Self::normalized(n, d))
    }

    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.num.canonical_cmp(&other.num).then_with(|| self.den.canonical_cmp(&other.den))
    }

    /// Renders in the input grammar, e.g. `(z^2 + 1)/(z - 3)`.
    pub fn render(&self, var: &str) -> String {
        let n = self.num.render(var);
        if self.den.is_one() {
            return n;
        }
        let n = if self.num.term_count() > 1 { format!("({n})") } else { n };
        let d = self.den.render(var);
        let d = if self.den.term_count() > 1 || self.den.degree() == Some(0) || d.contains('^') {
            format!("({d})")
        } else {
            d
        };
        format!("{n}/{d}")
    }

    /// Rendering safe to use as a factor in a product.
    pub fn render_factor(&self, var: &str) -> String {
        let s = self.render(var);
        if self.den.is_one() && self.num.term_count() <= 1 && !s.contains('/') {
            s
        } else {
            format!("({s})")
        }
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rat> for RationalFunction {
    fn from(c: Rat) -> Self {
        Self::constant(c)
    }
}

impl From<Poly> for RationalFunction {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("z"))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RF({self})")
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::normalized(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel before multiplying
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1);
        let d2 = rhs.den.exact_div(&g1);
        let n2 = rhs.num.exact_div(&g2);
        let d1 = self.den.exact_div(&g2);
        RationalFunction::normalized(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}
