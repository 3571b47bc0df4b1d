//! Exact arithmetic over the rationals: scalars, polynomials in `z`, and
//! rational functions in `z`. Everything else in the crate is built on
//! these three types.

mod modgcd;
mod poly;
mod ratfunc;

pub use poly::Poly;
pub use ratfunc::{rf_arith, ArithOp, RationalFunction};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Renders as `p/q`, always with an explicit denominator.
pub fn rat_pq(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Renders as `p` for integers and `p/q` otherwise.
pub fn rat_short(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p`, or `p/q`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

/// Exact rational power with a signed exponent. Panics on `0^negative`.
pub fn rat_pow(base: &Rat, exp: i64) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Square root in the rationals, if one exists.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// Least common multiple of the denominators of `values`.
pub(crate) fn denom_lcm<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    use num_integer::Integer;
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Greatest common divisor of the numerators of `values` (all assumed
/// integral after scaling); zero when every value is zero.
pub(crate) fn numer_gcd<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    use num_integer::Integer;
    values.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(v.numer()))
}
