use std::cmp::Ordering;

use super::roots::rational_function_roots;
use super::FPoly;
use crate::algebra::{int, rat, Rat, RationalFunction};
use crate::error::{Error, Result};

/// `unit * prod factor^mult` with every factor monic and irreducible over
/// `Q(z)`: either linear, or quadratic with a non-square discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredFPoly {
    pub unit: RationalFunction,
    pub factors: Vec<(FPoly, usize)>,
}

impl FactoredFPoly {
    pub fn expand(&self) -> FPoly {
        self.factors.iter().fold(FPoly::constant(self.unit.clone()), |acc, (p, m)| &acc * &p.pow(*m as u32))
    }

    /// Sum of `deg(factor) * mult`.
    pub fn degree(&self) -> usize {
        self.factors.iter().map(|(p, m)| p.deg() * m).sum()
    }
}

impl FPoly {
    /// Order by degree, then linear factors by root, otherwise by
    /// coefficients from the top down.
    pub fn canonical_cmp(&self, other: &FPoly) -> Ordering {
        self.coeffs().len().cmp(&other.coeffs().len()).then_with(|| {
            if let (Some(a), Some(b)) = (self.linear_root(), other.linear_root()) {
                return a.canonical_cmp(&b);
            }
            for (a, b) in self.coeffs().iter().rev().zip(other.coeffs().iter().rev()) {
                let o = a.canonical_cmp(b);
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }

    /// Euclid over `Q(z)`; monic, with `gcd(0, 0) = 0`.
    fn euclid_gcd(&self, other: &FPoly) -> FPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }
}

fn specialization_points() -> impl Iterator<Item = Rat> {
    [rat(3, 7), rat(-5, 11), rat(13, 2), rat(-17, 3), rat(2, 19)].into_iter()
}

/// Monic greatest common divisor in `f` over `Q(z)`.
///
/// A coprime specialization at a point where both leading coefficients
/// survive proves coprimality outright (Gauss's lemma), so the expensive
/// Euclidean sequence runs only when a common factor is plausible.
pub fn fp_gcd(p: &FPoly, q: &FPoly) -> FPoly {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.is_constant() || q.is_constant() {
        return FPoly::one();
    }
    for z0 in specialization_points() {
        let (Some(sp), Some(sq)) = (p.specialize(&z0), q.specialize(&z0)) else { continue };
        if sp.degree() != p.degree() || sq.degree() != q.degree() {
            continue;
        }
        if sp.gcd(&sq).is_constant() {
            return FPoly::one();
        }
    }
    p.euclid_gcd(q)
}

/// Yun decomposition: monic square-free parts, index `i - 1` holding the
/// part of multiplicity `i`.
fn yun(p: &FPoly) -> Vec<FPoly> {
    let mut parts = Vec::new();
    if p.is_constant() {
        return parts;
    }
    let p = p.monic();
    let d = p.derivative();
    let a0 = fp_gcd(&p, &d);
    let mut b = p.exact_div(&a0);
    let mut c = d.exact_div(&a0);
    let mut dd = &c - &b.derivative();
    while !b.is_constant() {
        let a = fp_gcd(&b, &dd);
        let nb = b.exact_div(&a);
        c = dd.exact_div(&a);
        dd = &c - &nb.derivative();
        b = nb;
        parts.push(a);
    }
    parts
}

/// Square root in `Q(z)`, if one exists.
pub fn is_square(a: &RationalFunction) -> Option<RationalFunction> {
    a.sqrt()
}

/// Splits a monic quadratic over `Q(z)` when its discriminant is a square.
fn split_quadratic(q: &FPoly) -> Option<(RationalFunction, RationalFunction)> {
    let b = q.coeff(1);
    let c = q.coeff(0);
    let disc = &(&b * &b) - &c.scale(&int(4));
    let s = is_square(&disc)?;
    let half = rat(1, 2);
    let r1 = (&(-&b) + &s).scale(&half);
    let r2 = (&(-&b) - &s).scale(&half);
    Some((r1, r2))
}

/// Factors each square-free part into linear and irreducible quadratic
/// factors over `Q(z)`. A square-free part of degree three or more that
/// does not split that far is reported as [`Error::Unsplittable`].
pub fn squarefree_factor(p: &FPoly) -> Result<FactoredFPoly> {
    let Some(unit) = p.leading().cloned() else {
        return Err(Error::ZeroFunction);
    };
    let mut factors = Vec::new();
    for (i, part) in yun(p).into_iter().enumerate() {
        let mult = i + 1;
        if part.is_constant() {
            continue;
        }
        for f in split_part(&part, mult)? {
            factors.push((f, mult));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(FactoredFPoly { unit, factors })
}

fn split_part(part: &FPoly, mult: usize) -> Result<Vec<FPoly>> {
    match part.deg() {
        0 => Ok(Vec::new()),
        1 => Ok(vec![part.clone()]),
        2 => Ok(match split_quadratic(part) {
            Some((r1, r2)) => vec![FPoly::linear(&r1), FPoly::linear(&r2)],
            None => vec![part.clone()],
        }),
        _ => {
            let mut rest = part.clone();
            let mut out = Vec::new();
            for r in rational_function_roots(part) {
                let lin = FPoly::linear(&r);
                rest = rest.exact_div(&lin);
                out.push(lin);
            }
            match rest.deg() {
                0 => {}
                1 => out.push(rest.monic()),
                2 => match split_quadratic(&rest) {
                    Some((r1, r2)) => {
                        out.push(FPoly::linear(&r1));
                        out.push(FPoly::linear(&r2));
                    }
                    None => out.push(rest.monic()),
                },
                d => return Err(Error::Unsplittable { part: rest.to_string(), degree: d, multiplicity: mult }),
            }
            Ok(out)
        }
    }
}

impl FPoly {
    /// The root of a monic linear factor.
    pub fn linear_root(&self) -> Option<RationalFunction> {
        (self.deg() == 1 && self.coeff(1).is_one()).then(|| -&self.coeff(0))
    }

    /// Whether `self` is free of the factor `f - root`.
    pub fn vanishes_at(&self, root: &RationalFunction) -> bool {
        self.eval(root).is_zero()
    }
}
