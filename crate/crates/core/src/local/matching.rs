use num_traits::{One, Zero};

use crate::algebra::{int, rat, rat_pow, rat_short, Rat, RationalFunction};
use crate::classifier::{classify_q, QTag};
use crate::equation::{MobiusMap, SchwarzEquation};
use crate::error::{Error, Result};
use crate::fpoly::FPoly;
use crate::series::{schwarzian_series, LaurentSeries};

use super::aux::lemma_numerator;

/// `((1 - k^2)/2)^m`, the leading coefficient of `S(u)^m` at a point where
/// `u - u(z0)` has a zero of order `k` (or `u` a pole of order `k`).
pub fn leading_schwarzian_coeff(k: u32, m: u32) -> Rat {
    let k = k as i64;
    rat_pow(&rat(1 - k * k, 2), m as i64)
}

fn regular_value(r: &RationalFunction, z0: &Rat, what: &str) -> Result<Rat> {
    r.eval(z0).ok_or_else(|| Error::SingularCoefficient(format!("{what} at {}", rat_short(z0))))
}

/// The value `c_{-n+1} / c_{-n} = -(n / 4m) b0'(z0) / b0(z0)` forced on a
/// pole of order `n`.
pub fn pole_ratio_relation(n: u32, m: u32, b0: &RationalFunction, z0: &Rat) -> Result<Rat> {
    if !b0.is_regular_nonzero_at(z0) {
        return Err(Error::SingularCoefficient(format!("b0 = {} at {}", b0.render("z"), rat_short(z0))));
    }
    let v = regular_value(b0, z0, "b0")?;
    let d = regular_value(&b0.derivative(), z0, "b0'")?;
    Ok(-rat(n as i64, 4 * m as i64) * d / v)
}

/// One side-by-side comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: String,
    pub lhs: Rat,
    pub rhs: Rat,
}

impl RelationCheck {
    fn new(name: &str, lhs: Rat, rhs: Rat) -> Self {
        Self { name: name.to_string(), lhs, rhs }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Coefficients of both sides of the lemma equation at `(z - z0)^{-2m}` and
/// `(z - z0)^{-2m+1}`, read from the series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSides {
    pub lhs: [Rat; 2],
    pub rhs: [Rat; 2],
}

fn two_sided(lhs: &LaurentSeries, rhs: &LaurentSeries, m: u32) -> Result<SeriesSides> {
    let at = |s: &LaurentSeries, k: i64| s.coeff(k).ok_or(Error::TruncationExhausted);
    let k = -2 * m as i64;
    Ok(SeriesSides { lhs: [at(lhs, k)?, at(lhs, k + 1)?], rhs: [at(rhs, k)?, at(rhs, k + 1)?] })
}

/// Outcome of the zero-side matching test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroMatchReport {
    pub z0: Rat,
    pub k: u32,
    pub m: u32,
    /// `c_j = b_j` for `1 <= j <= k - 1`.
    pub prefix_matches: bool,
    /// Leading-order relation.
    pub leading: RelationCheck,
    /// Next-order relation.
    pub subleading: RelationCheck,
    pub series: SeriesSides,
    /// Formula values equal the series coefficients on both sides.
    pub series_agrees: bool,
}

impl ZeroMatchReport {
    pub fn passed(&self) -> bool {
        self.prefix_matches && self.leading.holds() && self.subleading.holds()
    }
}

/// Matching test at a zero `z0` of `u + b` for an equation of class QE3,
/// `S(u)^m = P0(z, u) / (u + b)^{2m}` with `P0 = P / c`. `u` is a Taylor
/// series at `z0`.
pub fn zero_matching_check(eq: &SchwarzEquation, u: &LaurentSeries) -> Result<ZeroMatchReport> {
    let class = classify_q(eq);
    if class.tag != QTag::QE3 {
        return Err(Error::InvalidInput(format!("zero matching needs class QE3, got {}", class.tag)));
    }
    let m = eq.m();
    let z0 = u.base().clone();
    let b = class.params.b.clone().expect("QE3 has b");
    let c = class.params.c.clone().expect("QE3 has c");
    let p0 = eq.p().scale(&c.recip()?);
    let b0 = regular_value(&b, &z0, "b")?;
    let here = rat_short(&z0);
    if u.min_order() < 0 && !u.is_zero() {
        return Err(Error::NotAZero(format!("u has a pole at {here}")));
    }
    let u0 = u.coeff(0).ok_or(Error::TruncationExhausted)?;
    if &u0 + &b0 != Rat::zero() {
        return Err(Error::NotAZero(format!("u + b = {} at {here}", rat_short(&(&u0 + &b0)))));
    }
    let shifted = u.sub(&LaurentSeries::constant(u0, z0.clone(), u.trunc()))?;
    let k = shifted.valuation().ok_or(Error::TruncationExhausted)?;
    if k < 2 {
        return Err(Error::NotAZero(format!("u' does not vanish at {here}, so k = 1")));
    }
    let k = k as u32;
    let ku = k as i64;
    let bs = LaurentSeries::from_rational_to(&b, &z0, ku + 3);
    let uc = |j: i64| u.coeff(j).ok_or(Error::TruncationExhausted);
    let bc = |j: i64| bs.coeff(j).unwrap_or_else(Rat::zero);
    let cj = |j: i64| -> Result<Rat> { Ok(uc(j)? + bc(j)) };
    let prefix_matches = (1..ku).all(|j| cj(j).map(|c| c == bc(j)).unwrap_or(false));
    let (b1, c1, c2) = (bc(1), cj(1)?, cj(2)?);
    if c1.is_zero() {
        return Err(Error::SingularCoefficient(format!("b' vanishes at {here}")));
    }
    let minus_b0 = RationalFunction::constant(-b0.clone());
    let p0v = regular_value(&p0.eval(&minus_b0), &z0, "P0(z0, -b0)")?;
    let p1 = p0.z_derivative();
    let p1v = regular_value(&p1.eval(&minus_b0), &z0, "P1(z0, -b0)")?;
    let lead = leading_schwarzian_coeff(k, m);
    let two_m = int(2 * m as i64);
    let dk = uc(ku)?;
    let dk1 = uc(ku + 1)?;
    let leading = RelationCheck::new("leading", lead.clone(), &p0v / rat_pow(&c1, 2 * m as i64));
    let subleading = RelationCheck::new(
        "subleading",
        &two_m / int(ku) * &lead * &dk1 / &dk,
        (&p1v * &b1 - &two_m * &p0v * &c2) / rat_pow(&c1, 2 * m as i64 + 1),
    );

    let s = schwarzian_series(u)?.pow(m)?;
    let w = u.add(&bs_exact(&b, &z0, u))?;
    let r = u.eval_fpoly(&p0)?.div(&w.pow(2 * m)?)?;
    let series = two_sided(&s, &r, m)?;
    let series_agrees = series.lhs[0] == leading.lhs
        && series.rhs[0] == leading.rhs
        && series.lhs[1] == subleading.lhs
        && series.rhs[1] == subleading.rhs;
    Ok(ZeroMatchReport { z0, k, m, prefix_matches, leading, subleading, series, series_agrees })
}

fn bs_exact(b: &RationalFunction, z0: &Rat, u: &LaurentSeries) -> LaurentSeries {
    LaurentSeries::from_rational_to(b, z0, u.trunc() + 4)
}

/// Outcome of the pole-side matching test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleMatchReport {
    pub z0: Rat,
    pub n: u32,
    pub m: u32,
    pub map: MobiusMap,
    pub b0: RationalFunction,
    pub ratio: Rat,
    pub mandated_ratio: Rat,
    pub leading: RelationCheck,
    pub subleading: RelationCheck,
    pub series: SeriesSides,
    pub series_agrees: bool,
}

impl PoleMatchReport {
    pub fn passed(&self) -> bool {
        self.leading.holds() && self.subleading.holds()
    }
}

/// Matching test at a pole of order `n` of the lemma variable
/// `u = 1/(f - tau1)` for an equation of class QE15, where the equation
/// becomes `S(u)^m = P1(z, u)` with leading coefficient `b0`.
pub fn pole_matching_check(eq: &SchwarzEquation, u: &LaurentSeries) -> Result<PoleMatchReport> {
    let class = classify_q(eq);
    if class.tag != QTag::QE15 {
        return Err(Error::InvalidInput(format!("pole matching needs class QE15, got {}", class.tag)));
    }
    let m = eq.m();
    let n = class.params.n.expect("QE15 has n");
    let map = MobiusMap::new(Rat::zero(), Rat::one(), Rat::one(), -class.params.tau[0].clone())?;
    let p1 = lemma_numerator(eq, &map, 0)?;
    let b0 = p1.leading().cloned().expect("nonzero numerator");
    pole_check(&p1, &b0, n, m, u).map(|(ratio, mandated_ratio, leading, subleading, series, series_agrees)| {
        PoleMatchReport {
            z0: u.base().clone(),
            n,
            m,
            map,
            b0,
            ratio,
            mandated_ratio,
            leading,
            subleading,
            series,
            series_agrees,
        }
    })
}

type PoleParts = (Rat, Rat, RelationCheck, RelationCheck, SeriesSides, bool);

fn pole_check(p1: &FPoly, b0: &RationalFunction, n: u32, m: u32, u: &LaurentSeries) -> Result<PoleParts> {
    let z0 = u.base().clone();
    let ni = n as i64;
    if u.valuation() != Some(-ni) {
        return Err(Error::InvalidInput(format!("u must have a pole of order {n} at {}", rat_short(&z0))));
    }
    let mandated = pole_ratio_relation(n, m, b0, &z0)?;
    let cn = u.coeff(-ni).ok_or(Error::TruncationExhausted)?;
    let cn1 = u.coeff(-ni + 1).ok_or(Error::TruncationExhausted)?;
    let ratio = &cn1 / &cn;
    let e = (2 * m / n) as i64;
    let b0v = regular_value(b0, &z0, "b0")?;
    let b0d = regular_value(&b0.derivative(), &z0, "b0'")?;
    let lead = leading_schwarzian_coeff(n, m);
    let leading = RelationCheck::new("leading", lead.clone(), rat_pow(&cn, e) * &b0v);
    let subleading = RelationCheck::new(
        "subleading",
        -rat(2 * m as i64, ni) * &lead * &ratio,
        rat_pow(&cn, e) * &b0d + int(e) * rat_pow(&cn, e - 1) * &cn1 * &b0v,
    );
    let s = schwarzian_series(u)?.pow(m)?;
    let r = u.eval_fpoly(p1)?;
    let series = two_sided(&s, &r, m)?;
    let agrees = series.lhs[0] == leading.lhs
        && series.rhs[0] == leading.rhs
        && series.lhs[1] == subleading.lhs
        && series.rhs[1] == subleading.rhs;
    Ok((ratio, mandated, leading, subleading, series, agrees))
}

/// The Laurent polynomial `c (z - z0)^{-n} (1 + ratio (z - z0))` plus
/// `tail`, a convenient local solution germ for tests and certificates.
pub fn pole_germ(c: &Rat, n: u32, ratio: &Rat, tail: &[Rat], z0: &Rat, trunc: i64) -> LaurentSeries {
    let mut coeffs = vec![c.clone(), c * ratio];
    coeffs.extend(tail.iter().cloned());
    LaurentSeries::new(z0.clone(), -(n as i64), coeffs, trunc)
}
