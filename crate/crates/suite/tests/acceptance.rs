//! Acceptance criteria, one PASS/FAIL line each. Every comparison is exact.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use schwarzian_core::algebra::{int, rat, Poly, Rat, RationalFunction};
use schwarzian_core::classifier::{classify_q, QTag};
use schwarzian_core::corpus::{golden, near_misses};
use schwarzian_core::equation::{apply_mobius, schwarzian_rational, MobiusMap, SchwarzEquation};
use schwarzian_core::error::Error;
use schwarzian_core::fpoly::FPoly;
use schwarzian_core::local::{
    degree_feasibility, leading_schwarzian_coeff, pole_germ, pole_matching_check, pole_ratio_relation,
    zero_matching_check,
};
use schwarzian_core::parse::parse_equation;
use schwarzian_core::reducer::{reduce, verify_candidate, Candidate, Outcome};
use schwarzian_core::series::{schwarzian_series, LaurentSeries};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

trait Ctx<T> {
    fn ctx(self, what: &str) -> Result<T, String>;
}

impl<T> Ctx<T> for Result<T, Error> {
    fn ctx(self, what: &str) -> Result<T, String> {
        self.map_err(|e| format!("{what}: {e}"))
    }
}

fn rand_rat(rng: &mut StdRng, lo: i64, hi: i64) -> Rat {
    rat(rng.gen_range(lo..=hi), rng.gen_range(1..=3))
}

fn rand_nonzero(rng: &mut StdRng, lo: i64, hi: i64) -> Rat {
    loop {
        let r = rand_rat(rng, lo, hi);
        if !r.is_zero() {
            return r;
        }
    }
}

fn rand_poly(rng: &mut StdRng, deg: usize) -> Poly {
    let mut c: Vec<Rat> = (0..deg).map(|_| rand_rat(rng, -4, 4)).collect();
    c.push(rand_nonzero(rng, -4, 4));
    Poly::new(c)
}

fn rand_rf(rng: &mut StdRng) -> RationalFunction {
    loop {
        let (dn, dd) = (rng.gen_range(0..=3), rng.gen_range(0..=2));
        let f = RationalFunction::new(rand_poly(rng, dn), rand_poly(rng, dd)).expect("nonzero denominator");
        if !f.is_constant() {
            return f;
        }
    }
}

fn rand_mobius(rng: &mut StdRng) -> MobiusMap {
    loop {
        let e: Vec<Rat> = (0..4).map(|_| rand_rat(rng, -3, 3)).collect();
        if let Ok(m) = MobiusMap::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()) {
            return m;
        }
    }
}

/// `c0 + c1 (z - base) + ...` with `c1 != 0`.
fn rand_taylor(rng: &mut StdRng, base: &Rat, c0: Rat, terms: usize) -> LaurentSeries {
    let mut c = vec![c0, rand_nonzero(rng, -3, 3)];
    c.extend((2..terms).map(|_| rand_rat(rng, -3, 3)));
    LaurentSeries::new(base.clone(), 0, c, terms as i64)
}

/// Coefficients agree on every power both series trust; returns how many.
fn shared_agreement(a: &LaurentSeries, b: &LaurentSeries) -> Result<i64, String> {
    let lo = a.min_order().min(b.min_order());
    let top = a.trunc().min(b.trunc());
    for k in lo..top {
        ensure!(a.coeff(k) == b.coeff(k), "coefficient {k}: {:?} vs {:?}", a.coeff(k), b.coeff(k));
    }
    Ok(top - lo)
}

fn identities(rng: &mut StdRng) -> Check {
    for i in 0..200 {
        let f = rand_rf(rng);
        let m = rand_mobius(rng);
        let mf = m.apply_rf(&f).ctx("M o f")?;
        let s = schwarzian_rational(&f).ctx("S(f)")?;
        let sm = schwarzian_rational(&mf).ctx("S(M o f)")?;
        ensure!(s == sm, "case {i}: f = {}, M = {m}: {} vs {}", f.render("z"), s.render("z"), sm.render("z"));
    }

    let mut fewest = i64::MAX;
    for i in 0..100 {
        let w0 = rand_rat(rng, -2, 2);
        let z0 = rand_rat(rng, -2, 2);
        let f0 = rand_rat(rng, -2, 2);
        let f = rand_taylor(rng, &w0, f0, 14);
        let g = rand_taylor(rng, &z0, w0.clone(), 14);
        let lhs = schwarzian_series(&f.compose(&g).ctx("f o g")?).ctx("S(f o g)")?;
        let g1 = g.derivative();
        let rhs = schwarzian_series(&f)
            .ctx("S(f)")?
            .compose(&g)
            .ctx("S(f) o g")?
            .mul(&g1.mul(&g1).ctx("g'^2")?)
            .ctx("product")?
            .add(&schwarzian_series(&g).ctx("S(g)")?)
            .ctx("sum")?;
        let n = shared_agreement(&lhs, &rhs).map_err(|e| format!("chain rule case {i}: {e}"))?;
        ensure!(n >= 8, "chain rule case {i}: only {n} shared coefficients");
        fewest = fewest.min(n);
    }

    for i in 0..20 {
        let m = rand_mobius(rng);
        let z = RationalFunction::var();
        let f = m.apply_rf(&z).ctx("M(z)")?;
        ensure!(schwarzian_rational(&f).ctx("S")?.is_zero(), "Möbius case {i}: S({}) != 0", f.render("z"));
    }
    let mut nonzero = 0;
    while nonzero < 20 {
        let f = rand_rf(rng);
        let deg = f.num().degree().unwrap_or(0).max(f.den().degree().unwrap_or(0));
        if deg < 2 {
            continue;
        }
        ensure!(!schwarzian_rational(&f).ctx("S")?.is_zero(), "S({}) = 0 at degree {deg}", f.render("z"));
        nonzero += 1;
    }
    Ok(format!("200 Möbius pairs; 100 chain-rule pairs on >= {fewest} shared coefficients; 20 zero, 20 nonzero"))
}

fn leading_coefficients() -> Check {
    for base in [int(0), rat(1, 2)] {
        for k in 2..=7i64 {
            for m in 1..=3u32 {
                let zero = LaurentSeries::new(base.clone(), k, vec![int(1), int(1), int(-2)], k + 12);
                let pole = LaurentSeries::new(base.clone(), -k, vec![int(3), int(1), int(5)], 12);
                for (what, u) in [("zero", zero), ("pole", pole)] {
                    let s = schwarzian_series(&u).ctx("S(u)")?.pow(m).ctx("S(u)^m")?;
                    let c = s.coeff(-2 * m as i64).ok_or(format!("k = {k}, m = {m}: truncated"))?;
                    let want = leading_schwarzian_coeff(k as u32, m);
                    ensure!(c == want, "{what} of order {k}, m = {m}: series {c} vs formula {want}");
                }
            }
        }
    }
    Ok("36 (k, m) pairs at zeros and poles, two base points".into())
}

fn classifier_suite(rng: &mut StdRng) -> Check {
    let entries = golden();
    let mut eqs = Vec::new();
    for e in &entries {
        let eq = parse_equation(e.text).ctx(e.text)?;
        let tag = classify_q(&eq).tag;
        ensure!(tag == e.tag && eq.m() == e.m, "{}: expected {} at m = {}, got {tag}", e.text, e.tag, e.m);
        eqs.push(eq);
    }
    let misses = near_misses();
    for n in &misses {
        let eq = parse_equation(n.text).ctx(n.text)?;
        let tag = classify_q(&eq).tag;
        ensure!(tag != n.avoid, "{} classified as {tag} ({})", n.text, n.why);
    }

    let z = RationalFunction::var();
    let units = [
        RationalFunction::constant(rat(-7, 3)),
        RationalFunction::from_poly(Poly::new(vec![int(1), int(0), int(1)])),
        (&z - &RationalFunction::constant(int(2)))
            .checked_div(&(&z.scale(&int(3)) + &RationalFunction::one()))
            .unwrap(),
    ];
    for eq in &eqs {
        let class = classify_q(eq);
        for u in &units {
            let scaled = SchwarzEquation::new(eq.m(), eq.p().scale(u), eq.q().scale(u)).ctx("scaled")?;
            ensure!(classify_q(&scaled) == class, "{eq} scaled by {} changes class", u.render("z"));
        }
    }

    let mut same_tag = 0;
    let mut total = 0;
    for eq in &eqs {
        let base = reduce(eq);
        for _ in 0..20 {
            let m = rand_mobius(rng);
            let moved = apply_mobius(eq, &m).ctx("apply_mobius")?;
            let v = reduce(&moved);
            ensure!(
                v.outcomes == base.outcomes,
                "{eq} under {m}: {} became {} ({})",
                base.outcome_name(),
                v.outcome_name(),
                moved
            );
            total += 1;
            if v.class.tag == base.class.tag {
                same_tag += 1;
            }
        }
    }
    Ok(format!(
        "{} golden, {} near misses, {} unit scalings; outcome sets kept under {total} Möbius maps ({same_tag} kept the tag)",
        entries.len(),
        misses.len(),
        eqs.len() * units.len()
    ))
}

/// `Q`'s exponents over `m` for each admissible `n`, read off the forms.
fn exponent_patterns(tag: QTag, m: u32) -> Vec<(Option<u32>, [Rat; 3])> {
    let one = int(1);
    match tag {
        QTag::QE7 => (2..=2 * m)
            .filter(|n| (2 * m).is_multiple_of(*n))
            .map(|n| (Some(n), [one.clone(), one.clone(), rat(2, n as i64)]))
            .collect(),
        QTag::QE8 if (2 * m).is_multiple_of(3) => vec![(None, [one, rat(2, 3), rat(2, 3)])],
        QTag::QE9 if m.is_multiple_of(6) => vec![(None, [one, rat(2, 3), rat(1, 2)])],
        QTag::QE10 if (2 * m).is_multiple_of(15) => vec![(None, [one, rat(2, 3), rat(2, 5)])],
        _ => Vec::new(),
    }
}

/// Every attainable `sum beta_i` (and `beta_1/2 + sum_{i>1} beta_i`) over
/// positive integer vectors with `sum beta <= limit`.
fn beta_sums(limit: i64) -> (BTreeSet<Rat>, BTreeSet<Rat>) {
    fn walk(prefix: &mut Vec<i64>, left: i64, s0: &mut BTreeSet<Rat>, s1: &mut BTreeSet<Rat>) {
        if !prefix.is_empty() {
            let total: i64 = prefix.iter().sum();
            s0.insert(int(total));
            s1.insert(rat(prefix[0], 2) + int(total - prefix[0]));
        }
        for b in 1..=left {
            prefix.push(b);
            walk(prefix, left - b, s0, s1);
            prefix.pop();
        }
    }
    let (mut s0, mut s1) = (BTreeSet::new(), BTreeSet::new());
    walk(&mut Vec::new(), limit, &mut s0, &mut s1);
    (s0, s1)
}

fn feasibility() -> Check {
    for m in 1..=60 {
        for tag in [QTag::QE8, QTag::QE9, QTag::QE10] {
            let r = degree_feasibility(tag, m, 0);
            ensure!(!r.feasible, "{tag}, m = {m}, s = 0 reported feasible");
        }
        for s in [0, 1] {
            let r = degree_feasibility(QTag::QE7, m, s);
            ensure!(r.feasible && r.forced_n == Some(2), "QE7, m = {m}, s = {s}: {:?}", r.admissible_n);
        }
    }

    let (s0, s1) = beta_sums(10);
    let mut compared = 0;
    for m in 1..=30 {
        for tag in [QTag::QE7, QTag::QE8, QTag::QE9, QTag::QE10] {
            for s in [0u8, 1] {
                let mut ns = Vec::new();
                for (n, e) in exponent_patterns(tag, m) {
                    let total: Rat = e.iter().sum();
                    // An exponent e m on a constant tau is a value of
                    // ramification index 2/e.
                    let ram: Rat = e.iter().map(|x| x / int(2)).sum::<Rat>() + rat(1, 2);
                    let ok = if s == 0 { s0.contains(&total) } else { ram >= int(2) && s1.contains(&total) };
                    if ok {
                        ns.push(n);
                    }
                }
                let r = degree_feasibility(tag, m, s);
                ensure!(
                    r.admissible_n == ns && r.feasible == !ns.is_empty(),
                    "{tag}, m = {m}, s = {s}: enumeration gives {ns:?}, report {:?}",
                    r.admissible_n
                );
                compared += 1;
            }
        }
    }
    Ok(format!("m <= 60 impossible/forced n = 2; {compared} reports match the beta enumeration"))
}

/// `c0 + c1 (z - z0) + ...` as a polynomial in `z`.
fn poly_at(z0: &Rat, c: &[Rat]) -> Poly {
    Poly::new(c.to_vec()).shift(&-z0.clone())
}

/// `(lhs, rhs)` coefficients at `(z - z0)^{-2m}` and the next power.
fn two_orders(s: &LaurentSeries, r: &LaurentSeries, m: u32) -> Result<([Rat; 2], [Rat; 2]), String> {
    let k = -2 * m as i64;
    let at = |x: &LaurentSeries, j: i64| x.coeff(j).ok_or(format!("truncated at {j}"));
    Ok(([at(s, k)?, at(s, k + 1)?], [at(r, k)?, at(r, k + 1)?]))
}

struct ZeroInstance {
    m: u32,
    k: u32,
    z0: Rat,
    b: Poly,
    a: Rat,
    bb: Rat,
    u: Vec<Rat>,
}

const TRUNC: i64 = 16;

impl ZeroInstance {
    fn germ(&self) -> LaurentSeries {
        LaurentSeries::new(self.z0.clone(), 0, self.u.clone(), TRUNC)
    }

    /// `(f + b)^{2m} + A + B (f + b)` over `(f + b)^{2m}`.
    fn equation(&self, a: &Rat, bb: &Rat) -> Result<SchwarzEquation, String> {
        let fb = FPoly::linear(&-RationalFunction::from_poly(self.b.clone()));
        let q = fb.pow(2 * self.m);
        let p = &(&q + &FPoly::constant(RationalFunction::constant(a.clone())))
            + &fb.scale(&RationalFunction::constant(bb.clone()));
        SchwarzEquation::new(self.m, p, q).ctx("equation")
    }

    fn sides(&self, eq: &SchwarzEquation, u: &LaurentSeries) -> Result<([Rat; 2], [Rat; 2]), String> {
        let s = schwarzian_series(u).ctx("S(u)")?.pow(self.m).ctx("S^m")?;
        let r = u.eval_fpoly(eq.p()).ctx("P(u)")?.div(&u.eval_fpoly(eq.q()).ctx("Q(u)")?).ctx("P/Q")?;
        two_orders(&s, &r, self.m)
    }
}

fn zero_instance(rng: &mut StdRng, i: u32) -> Result<ZeroInstance, String> {
    let m = 1 + i % 3;
    let k = 2 + (i / 3) % 3;
    let z0 = rand_rat(rng, -3, 3);
    let (b0, b1, b2) = (rand_rat(rng, -3, 3), rand_nonzero(rng, -3, 3), rand_rat(rng, -2, 2));
    let b = poly_at(&z0, &[b0.clone(), b1.clone(), b2]);
    let mut u = vec![-b0];
    u.extend((1..k).map(|_| Rat::zero()));
    u.extend([rand_nonzero(rng, -3, 3), rand_nonzero(rng, -3, 3), rand_rat(rng, -3, 3)]);
    let mut inst = ZeroInstance { m, k, z0, b, a: Rat::zero(), bb: Rat::zero(), u };
    // Solve the two orders for A and B straight from the series.
    let u_s = inst.germ();
    let s = schwarzian_series(&u_s).ctx("S(u)")?.pow(m).ctx("S^m")?;
    let w = u_s.add(&LaurentSeries::from_poly(&inst.b, &inst.z0, TRUNC + 4)).ctx("u + b")?;
    let lo = -2 * m as i64;
    let a = s.coeff(lo).ok_or("truncated")? * num_traits::pow(b1.clone(), 2 * m as usize);
    let inv = w.pow(2 * m).ctx("w^2m")?.recip().ctx("1/w^2m")?.scale(&a);
    let gap = s.coeff(lo + 1).ok_or("truncated")? - inv.coeff(lo + 1).ok_or("truncated")?;
    inst.a = a;
    inst.bb = gap * num_traits::pow(b1, 2 * m as usize - 1);
    Ok(inst)
}

fn rejected<T>(r: &Result<T, Error>, passed: impl Fn(&T) -> bool) -> bool {
    match r {
        Err(_) => true,
        Ok(x) => !passed(x),
    }
}

fn zero_matching(rng: &mut StdRng) -> Result<usize, String> {
    let mut perturbations = 0;
    for i in 0..25 {
        let inst = zero_instance(rng, i)?;
        let eq = inst.equation(&inst.a, &inst.bb)?;
        let tag = classify_q(&eq).tag;
        ensure!(tag == QTag::QE3, "zero instance {i}: class {tag}");
        let u = inst.germ();
        let rep = zero_matching_check(&eq, &u).ctx("zero_matching_check")?;
        let (lhs, rhs) = inst.sides(&eq, &u)?;
        ensure!(lhs == rhs, "zero instance {i}: constructed sides differ");
        ensure!(rep.k == inst.k && rep.passed() && rep.series_agrees, "zero instance {i}: {rep:?}");
        ensure!(rep.series.lhs == lhs && rep.series.rhs == rhs, "zero instance {i}: report sides differ");

        let k = inst.k as usize;
        let mut germs = Vec::new();
        for j in [0, 1, k, k + 1] {
            let mut c = inst.u.clone();
            c[j] += int(1);
            germs.push((format!("u_{j}"), c));
        }
        for (what, c) in germs {
            let bad = LaurentSeries::new(inst.z0.clone(), 0, c, TRUNC);
            let r = zero_matching_check(&eq, &bad);
            ensure!(rejected(&r, |x| x.passed()), "zero instance {i}: perturbed {what} accepted");
            if r.is_ok() {
                let (l, r) = inst.sides(&eq, &bad)?;
                ensure!(l != r, "zero instance {i}: perturbed {what} still balances the series");
            }
            perturbations += 1;
        }
        for (what, a, bb) in [("A", &inst.a + int(1), inst.bb.clone()), ("B", inst.a.clone(), &inst.bb + int(1))] {
            let bad = inst.equation(&a, &bb)?;
            let r = zero_matching_check(&bad, &u);
            ensure!(rejected(&r, |x| x.passed()), "zero instance {i}: perturbed {what} accepted");
            let (l, r) = inst.sides(&bad, &u)?;
            ensure!(l != r, "zero instance {i}: perturbed {what} still balances the series");
            perturbations += 1;
        }
    }
    Ok(perturbations)
}

/// `S(u)^m - P1(z, u)` at order `-2m + 1` for the germ with the given ratio.
fn pole_gap(
    m: u32,
    n: u32,
    c: &Rat,
    ratio: &Rat,
    tail: &[Rat],
    z0: &Rat,
    b0: &Poly,
) -> Result<([Rat; 2], [Rat; 2]), String> {
    let u = pole_germ(c, n, ratio, tail, z0, 8);
    let s = schwarzian_series(&u).ctx("S(u)")?.pow(m).ctx("S^m")?;
    let e = 2 * m / n;
    let p1 = LaurentSeries::from_poly(b0, z0, 40)
        .mul(&u.pow(e).ctx("u^e")?)
        .ctx("b0 u^e")?
        .add(&LaurentSeries::one(z0.clone(), 40))
        .ctx("+1")?;
    two_orders(&s, &p1, m)
}

fn pole_matching(rng: &mut StdRng) -> Result<usize, String> {
    let pairs = [(1, 2), (2, 2), (2, 4), (3, 2), (3, 3), (3, 6)];
    let mut perturbations = 0;
    for i in 0..25 {
        let (m, n) = pairs[i % pairs.len()];
        let e = 2 * m / n;
        let z0 = rand_rat(rng, -3, 3);
        let tau = rand_rat(rng, -3, 3);
        let c = rand_nonzero(rng, -3, 3);
        let gamma = rand_nonzero(rng, -3, 3);
        let tail = [rand_rat(rng, -3, 3), rand_rat(rng, -3, 3)];
        let beta = leading_schwarzian_coeff(n, m) / num_traits::pow(c.clone(), e as usize);
        let b0 = poly_at(&z0, &[beta.clone(), gamma.clone()]);
        let b0_rf = RationalFunction::from_poly(b0.clone());
        let ratio = pole_ratio_relation(n, m, &b0_rf, &z0).ctx("pole_ratio_relation")?;

        // The subleading balance is affine in the ratio; solve it from two
        // series evaluations.
        let gap = |r: &Rat| -> Result<Rat, String> {
            let (l, rr) = pole_gap(m, n, &c, r, &tail, &z0, &b0)?;
            ensure!(l[0] == rr[0], "pole instance {i}: leading orders differ");
            Ok(&l[1] - &rr[1])
        };
        let (g0, g1) = (gap(&int(0))?, gap(&int(1))?);
        ensure!(g1 != g0, "pole instance {i}: subleading balance does not depend on the ratio");
        let solved = -&g0 / (&g1 - &g0);
        ensure!(solved == ratio, "pole instance {i}: series ratio {solved}, relation {ratio}");

        let fm = FPoly::linear_const(&tau);
        let q = fm.pow(e);
        let p = &FPoly::constant(b0_rf.clone()) + &q;
        let eq = SchwarzEquation::new(m, p, q).ctx("equation")?;
        let class = classify_q(&eq);
        ensure!(class.tag == QTag::QE15 && class.params.n == Some(n), "pole instance {i}: {class}");
        let u = pole_germ(&c, n, &ratio, &tail, &z0, 8);
        let rep = pole_matching_check(&eq, &u).ctx("pole_matching_check")?;
        let (l, r) = pole_gap(m, n, &c, &ratio, &tail, &z0, &b0)?;
        ensure!(l == r && rep.passed() && rep.series_agrees, "pole instance {i}: {rep:?}");
        ensure!(rep.series.lhs == l && rep.series.rhs == r, "pole instance {i}: report sides differ");

        // u -> -u is a symmetry when e is even, so step past -c.
        let moved = (1..)
            .map(|d| &c + int(d))
            .find(|x| !x.is_zero() && num_traits::pow(x.clone(), e as usize) != num_traits::pow(c.clone(), e as usize))
            .expect("some step moves c^e");
        for (what, cc, rr) in [("c_-n", moved, ratio.clone()), ("ratio", c.clone(), &ratio + int(1))] {
            let bad = pole_germ(&cc, n, &rr, &tail, &z0, 8);
            let rep = pole_matching_check(&eq, &bad);
            ensure!(rejected(&rep, |x| x.passed()), "pole instance {i}: perturbed {what} accepted");
            let (l, r) = pole_gap(m, n, &cc, &rr, &tail, &z0, &b0)?;
            ensure!(l != r, "pole instance {i}: perturbed {what} still balances the series");
            perturbations += 1;
        }
        let b_bad = poly_at(&z0, &[&beta + int(1), gamma.clone()]);
        let bad_eq =
            SchwarzEquation::new(m, &FPoly::constant(RationalFunction::from_poly(b_bad)) + &fm.pow(e), fm.pow(e))
                .ctx("equation")?;
        let rep = pole_matching_check(&bad_eq, &u);
        ensure!(rejected(&rep, |x| x.passed()), "pole instance {i}: perturbed b0 accepted");
        perturbations += 1;
    }
    Ok(perturbations)
}

fn local_matching(rng: &mut StdRng) -> Check {
    let z = zero_matching(rng)?;
    let p = pole_matching(rng)?;
    Ok(format!("25 zero and 25 pole instances agree with the series; {z} + {p} perturbations rejected"))
}

fn end_to_end() -> Check {
    let cases = [("S(f) = 2", Candidate::Tan(int(1))), ("S(f) = -1/2", Candidate::Exp(int(1)))];
    for (text, cand) in &cases {
        let eq = parse_equation(text).ctx(text)?;
        let v = reduce(&eq);
        ensure!(v.outcomes == [Outcome::SchwarzForm(14)], "{text} reduces to {}", v.outcome_name());
        for z0 in [int(0), rat(1, 3), int(-2)] {
            let r = verify_candidate(&eq, cand, &z0, 20).ctx("verify")?;
            ensure!(r.verified && r.residual.is_zero(), "{text} with {cand} at {z0}: {}", r.render());
            ensure!(r.residual.trunc() >= 15, "{text} at {z0}: residual trusted only to {}", r.residual.trunc());
        }
    }
    for z0 in [int(0), rat(1, 3), int(-2)] {
        let t = LaurentSeries::tan(&int(1), &z0, 20);
        let rhs = LaurentSeries::one(z0.clone(), 20).add(&t.mul(&t).ctx("t^2")?).ctx("1 + t^2")?;
        let n = shared_agreement(&t.derivative(), &rhs).map_err(|e| format!("f' = 1 + f^2 at {z0}: {e}"))?;
        ensure!(n >= 19, "f' = 1 + f^2 at {z0}: only {n} coefficients");
    }
    Ok("tan and exp verified at 3 points each (truncation 20); both SchwarzForm(E14); tan solves f' = 1 + f^2".into())
}

fn m1_verdicts() -> Check {
    let allowed = [Outcome::Riccati, Outcome::FirstOrder(7), Outcome::SchwarzForm(14), Outcome::Unclassified];
    let mut outside = Vec::new();
    let mut count = 0;
    for e in golden().iter().filter(|e| e.m == 1) {
        let v = reduce(&parse_equation(e.text).ctx(e.text)?);
        count += 1;
        if !v.outcomes.iter().all(|o| allowed.contains(o)) {
            outside.push(format!("{} -> {}", e.tag, v.outcome_name()));
        }
    }
    ensure!(
        outside.is_empty(),
        "{} of {count} m = 1 verdicts outside {{Riccati, E7, E14, Unclassified}}: {}; the QE5 lemma rules out \
         transcendental solutions for every m, so the verdict is vacuously consistent with the m = 1 theorem \
         but not with this outcome set",
        outside.len(),
        outside.join(", ")
    );
    Ok(format!("{count} m = 1 verdicts"))
}

type Criterion = Box<dyn FnOnce(&mut StdRng) -> Check>;

fn main() -> ExitCode {
    let mut rng = StdRng::seed_from_u64(0x5c4a_12f1);
    let criteria: Vec<(&str, Criterion)> = vec![
        ("Schwarzian identities", Box::new(identities)),
        ("leading coefficient vs series", Box::new(|_| leading_coefficients())),
        ("classifier golden suite", Box::new(classifier_suite)),
        ("degree-sum arithmetic", Box::new(|_| feasibility())),
        ("local matching", Box::new(local_matching)),
        ("end-to-end solutions", Box::new(|_| end_to_end())),
        ("m = 1 verdict set", Box::new(|_| m1_verdicts())),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = run(&mut rng);
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {} {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion failed");
        ExitCode::FAILURE
    }
}
