//! Polynomials in the dependent variable `f` whose coefficients are
//! rational functions of `z`.

mod factor;
mod roots;

pub use factor::{fp_gcd, is_square, squarefree_factor, FactoredFPoly};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra::{Poly, Rat, RationalFunction};

/// Dense polynomial in `f` over `Q(z)`, lowest power first, trailing zeros
/// trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FPoly {
    coeffs: Vec<RationalFunction>,
}

impl FPoly {
    pub fn new(mut coeffs: Vec<RationalFunction>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(RationalFunction::one())
    }

    pub fn constant(c: RationalFunction) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `f`.
    pub fn var() -> Self {
        Self::new(vec![RationalFunction::zero(), RationalFunction::one()])
    }

    /// `f - root`.
    pub fn linear(root: &RationalFunction) -> Self {
        Self::new(vec![-root, RationalFunction::one()])
    }

    /// `f - t` for a rational constant `t`.
    pub fn linear_const(root: &Rat) -> Self {
        Self::linear(&RationalFunction::constant(root.clone()))
    }

    pub fn from_rats(c: &[Rat]) -> Self {
        Self::new(c.iter().cloned().map(RationalFunction::constant).collect())
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RationalFunction {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Constant in `f` (possibly depending on `z`).
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree in `f`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree in `f`, with the zero polynomial counted as degree 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&RationalFunction> {
        self.coeffs.last()
    }

    /// Whether every coefficient is constant in `z`.
    pub fn has_constant_coeffs(&self) -> bool {
        self.coeffs.iter().all(RationalFunction::is_constant)
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    /// Derivative with respect to `f`.
    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.scale(&Rat::from_integer(i.into()))).collect())
    }

    /// Coefficient-wise derivative with respect to `z`.
    pub fn z_derivative(&self) -> Self {
        Self::new(self.coeffs.iter().map(RationalFunction::derivative).collect())
    }

    /// Substitutes a rational function for `f`.
    pub fn eval(&self, x: &RationalFunction) -> RationalFunction {
        self.coeffs.iter().rev().fold(RationalFunction::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Specializes `z = z0`; `None` if some coefficient has a pole there.
    pub fn specialize(&self, z0: &Rat) -> Option<Poly> {
        self.coeffs.iter().map(|c| c.eval(z0)).collect::<Option<Vec<_>>>().map(Poly::new)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// `sum_i c_i * num^i * den^(n - i)`: the numerator of `self(num/den)`
    /// after multiplying through by `den^n`. Requires `n >= deg self`.
    pub fn homogenize(&self, num: &FPoly, den: &FPoly, n: usize) -> FPoly {
        assert!(n >= self.deg(), "homogenization degree below polynomial degree");
        let mut num_pows = vec![FPoly::one()];
        let mut den_pows = vec![FPoly::one()];
        for _ in 0..n {
            num_pows.push(num_pows.last().unwrap() * num);
            den_pows.push(den_pows.last().unwrap() * den);
        }
        let mut out = FPoly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = &out + &(&num_pows[i] * &den_pows[n - i]).scale(c);
        }
        out
    }

    /// Euclidean division in `f`. Panics when `divisor` is zero.
    pub fn div_rem(&self, divisor: &FPoly) -> (FPoly, FPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.coeffs[dd].recip().expect("nonzero leading coefficient");
        let Some(sd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if sd < dd {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![RationalFunction::zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&c * d);
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn exact_div(&self, divisor: &FPoly) -> FPoly {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact division in f");
        q
    }

    pub fn divides(&self, other: &FPoly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Renders in the input grammar with `var` as the dependent variable.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let simple = c.is_polynomial() && c.num().term_count() == 1;
            let (neg, c) = if simple && c.num().leading().is_some_and(|l| l < &Rat::zero()) {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&c.render_factor("z"));
            } else if c.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{mono}", c.render_factor("z")));
            }
        }
        out
    }
}

impl fmt::Display for FPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("f"))
    }
}

impl fmt::Debug for FPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FPoly({self})")
    }
}

impl Add for &FPoly {
    type Output = FPoly;
    fn add(self, rhs: &FPoly) -> FPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        FPoly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &FPoly {
    type Output = FPoly;
    fn sub(self, rhs: &FPoly) -> FPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        FPoly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul for &FPoly {
    type Output = FPoly;
    fn mul(self, rhs: &FPoly) -> FPoly {
        if self.is_zero() || rhs.is_zero() {
            return FPoly::zero();
        }
        let mut out = vec![RationalFunction::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        FPoly::new(out)
    }
}

impl Neg for &FPoly {
    type Output = FPoly;
    fn neg(self) -> FPoly {
        FPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for FPoly {
            type Output = FPoly;
            fn $m(self, rhs: FPoly) -> FPoly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Zero for FPoly {
    fn zero() -> Self {
        FPoly::zero()
    }
    fn is_zero(&self) -> bool {
        FPoly::is_zero(self)
    }
}

impl One for FPoly {
    fn one() -> Self {
        FPoly::one()
    }
}
