//! Modular gcd in `Q[z]`. Euclid over the rationals blows up coefficients
//! on the degree-60 polynomials the classifier meets; working modulo word
//! primes and lifting with the CRT does not.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{Poly, Rat};

/// Primes just below `2^31`, so products fit in `u64`.
fn primes() -> impl Iterator<Item = u64> {
    let is_prime = |n: u64| n % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
    (1u64 << 30..1u64 << 31).rev().filter(move |&n| is_prime(n))
}

/// Clears denominators and divides out the content. Returns `None` for zero.
fn primitive(p: &Poly) -> Option<Vec<BigInt>> {
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return None;
    }
    Some(ints.into_iter().map(|c| c / &content).collect())
}

fn residue(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd of two polynomials over `GF(p)`.
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let db = b.len() - 1;
        let inv = inv_mod(b[db], p);
        while a.len() > db {
            let da = a.len() - 1;
            let c = a[da] * inv % p;
            let shift = da - db;
            for (j, &bj) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + p - c * bj % p) % p;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lc) = a.last() {
        let inv = inv_mod(lc, p);
        a.iter_mut().for_each(|c| *c = *c * inv % p);
    }
    a
}

/// Monic gcd, `gcd(0, 0) = 0`.
pub(super) fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (ia, ib) = match (primitive(a), primitive(b)) {
        (None, None) => return Poly::zero(),
        (Some(_), None) => return a.monic(),
        (None, Some(_)) => return b.monic(),
        (Some(x), Some(y)) => (x, y),
    };
    if ia.len() == 1 || ib.len() == 1 {
        return Poly::one();
    }
    let (la, lb) = (ia.last().unwrap(), ib.last().unwrap());
    let gamma = la.gcd(lb);
    // CRT image of gamma/lc(G) * G, where G is the primitive gcd.
    let mut lifted: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last: Option<Vec<BigInt>> = None;
    let mut best = usize::MAX;
    for p in primes() {
        let g = residue(&gamma, p);
        if residue(la, p) == 0 || residue(lb, p) == 0 || g == 0 {
            continue;
        }
        let ra: Vec<u64> = ia.iter().map(|c| residue(c, p)).collect();
        let rb: Vec<u64> = ib.iter().map(|c| residue(c, p)).collect();
        let image: Vec<u64> = gcd_mod(&ra, &rb, p).into_iter().map(|c| c * g % p).collect();
        let deg = image.len() - 1;
        if deg == 0 {
            return Poly::one();
        }
        if deg > best {
            continue;
        }
        if deg < best {
            best = deg;
            lifted = image.iter().map(|&c| BigInt::from(c)).collect();
            modulus = BigInt::from(p);
            last = None;
        } else {
            let m_inv = BigInt::from(inv_mod(residue(&modulus, p), p));
            for (h, &c) in lifted.iter_mut().zip(&image) {
                let t = ((BigInt::from(c) - &*h) * &m_inv).mod_floor(&BigInt::from(p));
                *h += &modulus * t;
            }
            modulus *= p;
        }
        let half = &modulus >> 1;
        let sym: Vec<BigInt> = lifted.iter().map(|h| if *h > half { h - &modulus } else { h.clone() }).collect();
        if last.as_ref() == Some(&sym) {
            let cand = Poly::new(sym.iter().map(|c| Rat::from_integer(c.clone())).collect());
            if a.div_rem(&cand).1.is_zero() && b.div_rem(&cand).1.is_zero() {
                return cand.monic();
            }
        }
        last = Some(sym);
    }
    unreachable!("ran out of primes")
}

/// Euclid over `Q`, kept as a reference.
pub(super) fn gcd_euclid(a: &Poly, b: &Poly) -> Poly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let r = a.div_rem(&b).1;
        a = b;
        b = r.monic();
    }
    a.monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use num_traits::Signed;

    fn zp(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn agrees_with_euclid() {
        let f = zp(&[-1, 3, 0, 2]);
        let g = zp(&[5, -7, 1]);
        let h = zp(&[2, 1]);
        let a = &(&f * &h) * &h;
        let b = &(&g * &h).scale(&rat(3, 7)) * &zp(&[9, 0, 4]);
        assert_eq!(gcd(&a, &b), gcd_euclid(&a, &b));
        assert_eq!(gcd(&a, &b), h.monic());
        assert!(gcd(&f, &g).is_one());
        assert_eq!(gcd(&Poly::zero(), &f), f.monic());
    }

    #[test]
    fn large_coefficients() {
        let big = Poly::new(vec![Rat::from_integer(BigInt::from(10).pow(40u32) + 1), int(1)]);
        let a = &big * &zp(&[1, 1]);
        let b = &big * &zp(&[-1, 1]);
        assert_eq!(gcd(&a, &b), big);
    }

    #[test]
    fn negative_coefficient_is_never_a_sign_problem() {
        let a = &zp(&[3, -2]) * &zp(&[1, 0, 1]);
        let b = zp(&[-3, 2]).pow(2);
        assert_eq!(gcd(&a, &b), zp(&[3, -2]).monic());
        assert!(!gcd(&a, &b).leading().unwrap().is_negative());
    }
}
