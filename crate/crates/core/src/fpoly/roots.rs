//! Roots in `Q(z)` of square-free polynomials in `f`.
//!
//! A root `A/B` in lowest terms satisfies `A | p_0` and `B | p_n` once the
//! coefficients are cleared into `Q[z]`, which bounds its degrees. At a
//! generic rational point `z0` the root specializes to a simple rational
//! root of `p(z0, f)`; lifting that root to a power series in `z - z0` and
//! applying rational reconstruction recovers `A/B`. Every candidate is
//! verified by exact substitution, so spurious specializations are
//! discarded.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::FPoly;
use crate::algebra::{denom_lcm, rat, Poly, Rat, RationalFunction};

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;
const SPECIALIZATION_TRIES: usize = 24;

/// All roots of `p` in `Q(z)`, without multiplicity. `p` should be
/// square-free.
pub(crate) fn rational_function_roots(p: &FPoly) -> Vec<RationalFunction> {
    let mut roots = Vec::new();
    let mut p = p.clone();
    while p.degree().is_some_and(|d| d >= 1) && p.coeff(0).is_zero() {
        if !roots.iter().any(RationalFunction::is_zero) {
            roots.push(RationalFunction::zero());
        }
        p = FPoly::new(p.coeffs()[1..].to_vec());
    }
    let Some(n) = p.degree() else { return roots };
    if n == 0 {
        return roots;
    }
    if n == 1 {
        roots.push(-&(&p.coeff(0) * &p.coeff(1).recip().unwrap()));
        return roots;
    }

    let cleared = clear_denominators(&p);
    let bound_num = cleared[0].degree().unwrap_or(0);
    let bound_den = cleared[n].degree().unwrap_or(0);

    let Some((z0, special)) = choose_point(&cleared) else {
        return roots;
    };
    let shifted: Vec<Poly> = cleared.iter().map(|c| c.shift(&z0)).collect();
    let terms = bound_num + bound_den + 2;
    let back = Poly::new(vec![-z0.clone(), Rat::one()]);

    for rho in rational_roots(&special) {
        let Some(series) = lift_root(&shifted, &rho, terms) else { continue };
        let Some((a, b)) = reconstruct(&series, terms, bound_num, bound_den) else { continue };
        let Ok(cand) = RationalFunction::new(a.compose(&back), b.compose(&back)) else { continue };
        if p.eval(&cand).is_zero() && !roots.contains(&cand) {
            roots.push(cand);
        }
    }
    roots
}

/// Coefficients of `p` scaled into `Q[z]` by a common denominator.
fn clear_denominators(p: &FPoly) -> Vec<Poly> {
    let mut lcm = Poly::one();
    for c in p.coeffs() {
        let g = lcm.gcd(c.den());
        lcm = (&lcm * c.den()).exact_div(&g);
    }
    p.coeffs().iter().map(|c| &c.num().clone() * &lcm.exact_div(c.den())).collect()
}

fn candidate_points() -> impl Iterator<Item = Rat> {
    (0..).flat_map(
        |k: i64| {
            if k == 0 {
                vec![rat(0, 1)]
            } else {
                vec![rat(k, 1), rat(-k, 1), rat(1, k + 1), rat(-1, k + 1)]
            }
        },
    )
}

/// A point where the leading coefficient survives and the specialization
/// stays square-free; among the first few valid points, prefers the one
/// whose rational-root search is cheapest.
fn choose_point(cleared: &[Poly]) -> Option<(Rat, Poly)> {
    let n = cleared.len() - 1;
    let mut best: Option<(Rat, Poly, usize)> = None;
    let mut valid = 0;
    for z0 in candidate_points().take(SPECIALIZATION_TRIES * 4) {
        if cleared[n].eval(&z0).is_zero() {
            continue;
        }
        let special = Poly::new(cleared.iter().map(|c| c.eval(&z0)).collect());
        if special.degree() != Some(n) || !special.gcd(&special.derivative()).is_one() {
            continue;
        }
        let cost = search_cost(&special);
        if best.as_ref().is_none_or(|b| cost < b.2) {
            best = Some((z0, special, cost));
        }
        valid += 1;
        if valid >= 6 {
            break;
        }
    }
    best.map(|(z, s, _)| (z, s))
}

fn integer_coeffs(p: &Poly) -> Vec<BigInt> {
    let l = denom_lcm(p.coeffs());
    let scaled: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    scaled.into_iter().map(|c| c / &g).collect()
}

fn search_cost(p: &Poly) -> usize {
    let c = integer_coeffs(p);
    let lead = c.last().unwrap().magnitude().bits() as usize;
    let tail = c.iter().find(|x| !x.is_zero()).unwrap().magnitude().bits() as usize;
    lead + tail
}

/// Rational roots of a univariate polynomial via the rational root test.
pub(crate) fn rational_roots(p: &Poly) -> Vec<Rat> {
    let mut roots = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return roots;
    }
    let mut c = integer_coeffs(p);
    while c.first().is_some_and(|x| x.is_zero()) {
        c.remove(0);
        if !roots.contains(&Rat::zero()) {
            roots.push(Rat::zero());
        }
    }
    if c.len() <= 1 {
        return roots;
    }
    let nums = divisors(c[0].magnitude());
    let dens = divisors(c.last().unwrap().magnitude());
    let eval = |x: &Rat| c.iter().rev().fold(Rat::zero(), |acc, k| acc * x + Rat::from_integer(k.clone()));
    for a in &nums {
        for b in &dens {
            if !a.gcd(b).is_one() {
                continue;
            }
            let base = Rat::new(BigInt::from(a.clone()), BigInt::from(b.clone()));
            for cand in [base.clone(), -base] {
                if eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

/// Positive divisors by trial division. A cofactor left above the trial
/// limit is treated as prime.
fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut primes: Vec<(BigUint, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_LIMIT {
        let dd = BigUint::from(d);
        if &dd * &dd > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &dd).is_zero() {
            rest /= &dd;
            e += 1;
        }
        if e > 0 {
            primes.push((dd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > BigUint::one() {
        primes.push((rest, 1));
    }
    let mut divs = vec![BigUint::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for dv in &divs {
            let mut acc = dv.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc *= &p;
                next.push(acc.clone());
            }
        }
        divs = next;
    }
    divs
}

/// Power-series root `r(t)` of `sum_i shifted_i(t) r^i = 0` with
/// `r(0) = rho`, to `terms` coefficients. `rho` must be a simple root.
fn lift_root(shifted: &[Poly], rho: &Rat, terms: usize) -> Option<Vec<Rat>> {
    let slope = shifted.iter().enumerate().skip(1).fold(Rat::zero(), |acc, (i, c)| {
        acc + c.coeff(0) * Rat::from_integer(i.into()) * crate::algebra::rat_pow(rho, i as i64 - 1)
    });
    if slope.is_zero() {
        return None;
    }
    let mut r = vec![rho.clone()];
    for j in 1..terms {
        let val = series_eval_coeff(shifted, &r, j);
        r.push(-val / &slope);
    }
    Some(r)
}

/// Coefficient of `t^j` in `sum_i c_i(t) r(t)^i` with `r` truncated.
fn series_eval_coeff(shifted: &[Poly], r: &[Rat], j: usize) -> Rat {
    let mul = |a: &[Rat], b: &[Rat]| -> Vec<Rat> {
        let mut out = vec![Rat::zero(); j + 1];
        for (x, ax) in a.iter().enumerate().take(j + 1) {
            if ax.is_zero() {
                continue;
            }
            for (y, by) in b.iter().enumerate().take(j + 1 - x) {
                out[x + y] += ax * by;
            }
        }
        out
    };
    let mut acc = vec![Rat::zero(); j + 1];
    for c in shifted.iter().rev() {
        acc = mul(&acc, r);
        for (k, slot) in acc.iter_mut().enumerate() {
            *slot += c.coeff(k);
        }
    }
    acc[j].clone()
}

/// Finds `A/B` with `deg A <= bound_num`, `deg B <= bound_den`, `B(0) != 0`
/// and `A = B * series mod t^terms`, by the extended Euclidean algorithm.
fn reconstruct(series: &[Rat], terms: usize, bound_num: usize, bound_den: usize) -> Option<(Poly, Poly)> {
    let mut r0 = Poly::monomial(Rat::one(), terms);
    let mut r1 = Poly::new(series.to_vec());
    let mut s0 = Poly::zero();
    let mut s1 = Poly::one();
    while r1.degree().is_some_and(|d| d > bound_num) {
        let (q, r) = r0.div_rem(&r1);
        let s = &s0 - &(&q * &s1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    let den_deg = s1.degree()?;
    if den_deg > bound_den || s1.coeff(0).is_zero() {
        return None;
    }
    Some((r1, s1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn rf_poly(c: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(Poly::new(c.iter().map(|&x| int(x)).collect()))
    }

    #[test]
    fn finds_constant_and_polynomial_roots() {
        // (f - 1)(f + z)(f - z^2/(z+1))
        let r3 = rf_poly(&[0, 0, 1]).checked_div(&rf_poly(&[1, 1])).unwrap();
        let p = &(&FPoly::linear_const(&int(1)) * &FPoly::linear(&rf_poly(&[0, -1]))) * &FPoly::linear(&r3);
        let mut roots = rational_function_roots(&p);
        roots.sort_by(|a, b| a.canonical_cmp(b));
        assert_eq!(roots.len(), 3);
        assert!(roots.contains(&RationalFunction::constant(int(1))));
        assert!(roots.contains(&rf_poly(&[0, -1])));
        assert!(roots.contains(&r3));
    }

    #[test]
    fn irreducible_cubic_has_no_roots() {
        let p = FPoly::new(vec![
            rf_poly(&[0, 1]),
            RationalFunction::zero(),
            RationalFunction::zero(),
            RationalFunction::one(),
        ]);
        assert!(rational_function_roots(&p).is_empty());
    }

    #[test]
    fn rational_root_test() {
        // 6x^2 - x - 1 = (3x + 1)(2x - 1)
        let p = Poly::new(vec![int(-1), int(-1), int(6)]);
        let mut r = rational_roots(&p);
        r.sort();
        assert_eq!(r, vec![rat(-1, 3), rat(1, 2)]);
    }
}
