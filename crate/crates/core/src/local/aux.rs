use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{int, rat, rat_pow, rat_short, Rat, RationalFunction};
use crate::classifier::{QClass, QTag};
use crate::equation::{apply_mobius, MobiusMap, SchwarzEquation};
use crate::error::{Error, Result};
use crate::fpoly::{squarefree_factor, FPoly};
use crate::series::LaurentSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AuxKind {
    Phi1,
    Phi2,
    Psi1,
    Psi2,
    Xi1,
    Xi2,
    Xi3,
    HL37,
    H1L37,
    H1L34,
    H2L34,
    H1L38,
    H2L38,
}

impl AuxKind {
    pub fn name(self) -> &'static str {
        match self {
            AuxKind::Phi1 => "phi1",
            AuxKind::Phi2 => "phi2",
            AuxKind::Psi1 => "psi1",
            AuxKind::Psi2 => "psi2",
            AuxKind::Xi1 => "xi1",
            AuxKind::Xi2 => "xi2",
            AuxKind::Xi3 => "xi3",
            AuxKind::HL37 => "h_L37",
            AuxKind::H1L37 => "h1_L37",
            AuxKind::H1L34 => "h1_L34",
            AuxKind::H2L34 => "h2_L34",
            AuxKind::H1L38 => "h1_L38",
            AuxKind::H2L38 => "h2_L38",
        }
    }

    /// Formula in the lemma variable `u`.
    pub fn formula(self) -> &'static str {
        match self {
            AuxKind::Phi1 => "u'/((u + b1)(u + b2))",
            AuxKind::Phi2 => "u'/(u^2 + a1 u + a0)",
            AuxKind::Psi1 => "(u')^2/((u + b)^2 (u - tau1)(u - tau2))",
            AuxKind::Psi2 => "(u')^2/((u - tau1)(u - tau2)(u - tau3)(u - tau4))",
            AuxKind::Xi1 => "(u')^6/((u - tau1)^3 (u - tau2)^4 (u - tau3)^5)",
            AuxKind::Xi2 => "(u')^3/((u - tau1)^2 (u - tau2)^2 (u - tau3)^2)",
            AuxKind::Xi3 => "(u')^4/((u - tau1)^2 (u - tau2)^3 (u - tau3)^3)",
            AuxKind::HL37 => "(u''/u' + gamma)^2 - (n + 1)(u''/u' + gamma)'",
            AuxKind::H1L37 => "n u''/u' - (n + 1)(u' - alpha1')/(u - alpha1)",
            AuxKind::H1L34 => {
                "(1/((b')^m (u + b)) + gamma1)^2 + (1/((b')^(2m+1) (u + b)))' + (-3/2)^m u'/(b' P0(z, -b) (u + b)^2)"
            }
            AuxKind::H2L34 => "u''/u' - 2(u' + b')/(u + b) + b'/(u + b)",
            AuxKind::H1L38 => {
                "(u''/u' - (n2 - 1)/n2 u'/u + gamma1)^2 - (n1 + n2)/n2 (u''/u' - (n2 - 1)/n2 u'/u + gamma1)'"
            }
            AuxKind::H2L38 => {
                "(u''/u' - (n1 + 1)/n1 u'/u + gamma2)^2 - (n1 + n2)/n1 (u''/u' - (n1 + 1)/n1 u'/u + gamma2)'"
            }
        }
    }
}

impl fmt::Display for AuxKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything a template may read. Only the fields its kind needs are set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuxParams {
    pub m: u32,
    pub b: Option<RationalFunction>,
    pub b1: Option<RationalFunction>,
    pub b2: Option<RationalFunction>,
    pub a0: Option<RationalFunction>,
    pub a1: Option<RationalFunction>,
    pub tau: Vec<Rat>,
    pub n: Option<u32>,
    pub n1: Option<u32>,
    pub n2: Option<u32>,
    /// Leading coefficient of `P1` in the lemma variable.
    pub b0: Option<RationalFunction>,
    /// Constant coefficient of `P1`.
    pub bk: Option<RationalFunction>,
    pub alpha1: Option<RationalFunction>,
    /// `P0(z, -b(z))` for the zero-side lemma.
    pub p0_at_minus_b: Option<RationalFunction>,
    /// Whether `1/(b')^(2m) - (-3/2)^m / P0(z, -b)` vanishes identically.
    pub d_vanishes: Option<bool>,
}

fn need<'a, T>(x: &'a Option<T>, what: &str) -> Result<&'a T> {
    x.as_ref().ok_or_else(|| Error::InvalidInput(format!("auxiliary parameter {what} is missing")))
}

impl AuxParams {
    fn need_n(x: Option<u32>, what: &str) -> Result<u32> {
        x.ok_or_else(|| Error::InvalidInput(format!("auxiliary parameter {what} is missing")))
    }

    /// `(n - 1) b0' / (4 m b0)`.
    pub fn gamma(&self) -> Result<RationalFunction> {
        let n = Self::need_n(self.n, "n")?;
        let b0 = need(&self.b0, "b0")?;
        let ld = b0.derivative().checked_div(b0)?;
        Ok(ld.scale(&rat(n as i64 - 1, 4 * self.m as i64)))
    }

    /// `(n1 - n2) b0' / (4 m n2 b0)`.
    pub fn gamma1_l38(&self) -> Result<RationalFunction> {
        let (n1, n2) = (Self::need_n(self.n1, "n1")? as i64, Self::need_n(self.n2, "n2")? as i64);
        let b0 = need(&self.b0, "b0")?;
        Ok(b0.derivative().checked_div(b0)?.scale(&rat(n1 - n2, 4 * self.m as i64 * n2)))
    }

    /// `(n2 - n1) bk' / (4 m n1 bk)`.
    pub fn gamma2_l38(&self) -> Result<RationalFunction> {
        let (n1, n2) = (Self::need_n(self.n1, "n1")? as i64, Self::need_n(self.n2, "n2")? as i64);
        let bk = need(&self.bk, "bk")?;
        Ok(bk.derivative().checked_div(bk)?.scale(&rat(n2 - n1, 4 * self.m as i64 * n1)))
    }

    /// `m b'' / (b')^(m+2) + b'' / (2 (b')^(m+2))`.
    pub fn gamma1_l34(&self) -> Result<RationalFunction> {
        let b = need(&self.b, "b")?;
        let d1 = b.derivative();
        let d2 = d1.derivative();
        let den = d1.pow(self.m as i64 + 2);
        Ok(d2.checked_div(&den)?.scale(&(int(self.m as i64) + rat(1, 2))))
    }

    /// Name/value pairs for reports; derived gammas included.
    pub fn entries(&self) -> Vec<(String, String)> {
        let mut out = vec![("m".to_string(), self.m.to_string())];
        let rf = [
            ("b", &self.b),
            ("b1", &self.b1),
            ("b2", &self.b2),
            ("a0", &self.a0),
            ("a1", &self.a1),
            ("b0", &self.b0),
            ("bk", &self.bk),
            ("alpha1", &self.alpha1),
            ("P0(z,-b)", &self.p0_at_minus_b),
        ];
        for (k, v) in rf {
            if let Some(v) = v {
                out.push((k.to_string(), v.render("z")));
            }
        }
        for (i, t) in self.tau.iter().enumerate() {
            out.push((format!("tau{}", i + 1), rat_short(t)));
        }
        for (k, v) in [("n", self.n), ("n1", self.n1), ("n2", self.n2)] {
            if let Some(v) = v {
                out.push((k.to_string(), v.to_string()));
            }
        }
        if let Some(d) = self.d_vanishes {
            out.push(("D_vanishes".to_string(), d.to_string()));
        }
        out
    }
}

/// An auxiliary function of a lemma, in the variable `u = mobius(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxExpression {
    pub kind: AuxKind,
    pub params: AuxParams,
    pub mobius: MobiusMap,
}

impl AuxExpression {
    fn gammas(&self) -> Vec<(String, String)> {
        let g = match self.kind {
            AuxKind::HL37 => self.params.gamma().map(|g| ("gamma", g)),
            AuxKind::H1L34 => self.params.gamma1_l34().map(|g| ("gamma1", g)),
            AuxKind::H1L38 => self.params.gamma1_l38().map(|g| ("gamma1", g)),
            AuxKind::H2L38 => self.params.gamma2_l38().map(|g| ("gamma2", g)),
            _ => return Vec::new(),
        };
        g.map(|(k, v)| vec![(k.to_string(), v.render("z"))]).unwrap_or_default()
    }

    pub fn entries(&self) -> Vec<(String, String)> {
        let mut e = self.params.entries();
        e.extend(self.gammas());
        e
    }

    pub fn render(&self) -> String {
        let params: Vec<String> = self.entries().into_iter().map(|(k, v)| format!("{k} = {v}")).collect();
        format!("{} = {} [{}; {}]", self.kind, self.kind.formula(), self.mobius, params.join(", "))
    }
}

impl fmt::Display for AuxExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn base_params(class: &QClass, m: u32) -> AuxParams {
    let p = &class.params;
    AuxParams {
        m,
        b: p.b.clone(),
        b1: p.b1.clone(),
        b2: p.b2.clone(),
        a0: p.a0.clone(),
        a1: p.a1.clone(),
        tau: p.tau.clone(),
        n: p.n,
        n1: p.n1,
        n2: p.n2,
        ..AuxParams::default()
    }
}

/// The auxiliary the lemma for this class defines first.
pub fn build_aux(class: &QClass, eq: &SchwarzEquation) -> Result<AuxExpression> {
    build_aux_all(class, eq).map(|mut v| v.remove(0))
}

/// Every auxiliary the lemma for this class defines, primary first. For
/// the zero-side lemma the primary is the branch selected by `D`.
pub fn build_aux_all(class: &QClass, eq: &SchwarzEquation) -> Result<Vec<AuxExpression>> {
    let m = eq.m();
    let mut params = base_params(class, m);
    let simple = |kind, params| Ok(vec![AuxExpression { kind, params, mobius: MobiusMap::identity() }]);
    match class.tag {
        QTag::QE1 => simple(AuxKind::Phi1, params),
        QTag::QE2 => simple(AuxKind::Phi2, params),
        QTag::QE4 => simple(AuxKind::Psi1, params),
        QTag::QE6 => simple(AuxKind::Psi2, params),
        QTag::QE11 => simple(AuxKind::Xi1, params),
        QTag::QE12 => simple(AuxKind::Xi2, params),
        QTag::QE13 => simple(AuxKind::Xi3, params),
        QTag::QE3 => {
            let b = need(&class.params.b, "b")?.clone();
            let c = class.params.c.clone().unwrap_or_else(RationalFunction::one);
            let p0 = eq.p().scale(&c.recip()?);
            let p0b = p0.eval(&-&b);
            let bp = b.derivative();
            let d = &bp.pow(2 * m as i64).recip()?
                - &RationalFunction::constant(rat_pow(&rat(-3, 2), m as i64)).checked_div(&p0b)?;
            params.p0_at_minus_b = Some(p0b);
            params.d_vanishes = Some(d.is_zero());
            let id = MobiusMap::identity();
            let h1 = AuxExpression { kind: AuxKind::H1L34, params: params.clone(), mobius: id.clone() };
            let h2 = AuxExpression { kind: AuxKind::H2L34, params, mobius: id };
            Ok(if d.is_zero() { vec![h2, h1] } else { vec![h1, h2] })
        }
        QTag::QE15 => {
            let tau = class.params.tau[0].clone();
            let map = MobiusMap::new(Rat::zero(), Rat::one(), Rat::one(), -tau)?;
            let p1 = lemma_numerator(eq, &map, 0)?;
            params.b0 = p1.leading().cloned();
            let mut out = vec![AuxExpression { kind: AuxKind::HL37, params: params.clone(), mobius: map.clone() }];
            if let Some(alpha) = single_root(&p1) {
                params.alpha1 = Some(alpha);
                out.push(AuxExpression { kind: AuxKind::H1L37, params, mobius: map });
            }
            Ok(out)
        }
        QTag::QE14 => {
            let (t1, t2) = (class.params.tau[0].clone(), class.params.tau[1].clone());
            let map = MobiusMap::new(Rat::one(), -t2, Rat::one(), -t1)?;
            let e2 = 2 * m / need(&class.params.n2, "n2")?;
            let p1 = lemma_numerator(eq, &map, e2 as usize)?;
            params.b0 = p1.leading().cloned();
            params.bk = Some(p1.coeff(0));
            Ok(vec![
                AuxExpression { kind: AuxKind::H1L38, params: params.clone(), mobius: map.clone() },
                AuxExpression { kind: AuxKind::H2L38, params, mobius: map },
            ])
        }
        t => Err(Error::NoAuxiliary(t.to_string())),
    }
}

/// `P1` with `S(u)^m = P1(z, u) / u^e` after the map, the denominator
/// normalized to exactly `u^e`.
pub(crate) fn lemma_numerator(eq: &SchwarzEquation, map: &MobiusMap, e: usize) -> Result<FPoly> {
    if eq.deg_p() != eq.deg_q() {
        return Err(Error::InvalidInput("the lemma needs deg P = deg Q; normalize the equation first".into()));
    }
    let t = apply_mobius(eq, map)?;
    let q = t.q();
    if q.deg() != e || (0..e).any(|i| !q.coeff(i).is_zero()) {
        return Err(Error::InvalidInput(format!(
            "transformed denominator {} is not a monomial of degree {e}",
            q.render("u")
        )));
    }
    Ok(t.p().scale(&q.coeff(e).recip()?))
}

/// `alpha` when `p = lc (u - alpha)^k`.
fn single_root(p: &FPoly) -> Option<RationalFunction> {
    let fac = squarefree_factor(p).ok()?;
    match fac.factors.as_slice() {
        [(f, _)] => f.linear_root(),
        _ => None,
    }
}

/// Series of a coefficient function alongside `u`.
fn coef(r: &RationalFunction, u: &LaurentSeries) -> Result<LaurentSeries> {
    if r.is_zero() {
        return Ok(LaurentSeries::zero(u.base().clone(), u.trunc().max(1) + 8));
    }
    let v = r.order_at(u.base())?;
    let terms = (u.precision().max(1) + 8 + v.unsigned_abs() as i64) as usize;
    Ok(LaurentSeries::from_rational(r, u.base(), terms))
}

fn cst(c: Rat, u: &LaurentSeries) -> LaurentSeries {
    LaurentSeries::constant(c, u.base().clone(), u.trunc().max(1) + u.precision().max(1) + 64)
}

fn minus_tau(u: &LaurentSeries, t: &Rat) -> Result<LaurentSeries> {
    u.sub(&cst(t.clone(), u))
}

fn prod_pow(factors: &[(LaurentSeries, u32)]) -> Result<LaurentSeries> {
    let mut acc: Option<LaurentSeries> = None;
    for (s, k) in factors {
        let p = s.pow(*k)?;
        acc = Some(match acc {
            None => p,
            Some(a) => a.mul(&p)?,
        });
    }
    acc.ok_or_else(|| Error::InvalidInput("empty product".into()))
}

/// `L^2 - k L'`.
fn riccati_square(l: &LaurentSeries, k: Rat) -> Result<LaurentSeries> {
    l.mul(l)?.sub(&l.derivative().scale(&k))
}

/// The auxiliary along a series of the lemma variable `u`.
pub fn eval_aux(aux: &AuxExpression, u: &LaurentSeries) -> Result<LaurentSeries> {
    let d1 = u.derivative();
    if d1.is_zero() {
        return Err(Error::ConstantInput);
    }
    let p = &aux.params;
    let tau = |i: usize| -> Result<LaurentSeries> {
        let t = p.tau.get(i).ok_or_else(|| Error::InvalidInput(format!("tau{} is missing", i + 1)))?;
        minus_tau(u, t)
    };
    let plus = |r: &RationalFunction| -> Result<LaurentSeries> { u.add(&coef(r, u)?) };
    let log_d = || -> Result<LaurentSeries> { d1.derivative().div(&d1) };
    let out = match aux.kind {
        AuxKind::Phi1 => {
            let den = plus(need(&p.b1, "b1")?)?.mul(&plus(need(&p.b2, "b2")?)?)?;
            d1.div(&den)?
        }
        AuxKind::Phi2 => {
            let a1 = coef(need(&p.a1, "a1")?, u)?;
            let a0 = coef(need(&p.a0, "a0")?, u)?;
            let den = u.mul(u)?.add(&a1.mul(u)?)?.add(&a0)?;
            d1.div(&den)?
        }
        AuxKind::Psi1 => {
            let den = prod_pow(&[(plus(need(&p.b, "b")?)?, 2), (tau(0)?, 1), (tau(1)?, 1)])?;
            d1.pow(2)?.div(&den)?
        }
        AuxKind::Psi2 => {
            let den = prod_pow(&[(tau(0)?, 1), (tau(1)?, 1), (tau(2)?, 1), (tau(3)?, 1)])?;
            d1.pow(2)?.div(&den)?
        }
        AuxKind::Xi1 => d1.pow(6)?.div(&prod_pow(&[(tau(0)?, 3), (tau(1)?, 4), (tau(2)?, 5)])?)?,
        AuxKind::Xi2 => d1.pow(3)?.div(&prod_pow(&[(tau(0)?, 2), (tau(1)?, 2), (tau(2)?, 2)])?)?,
        AuxKind::Xi3 => d1.pow(4)?.div(&prod_pow(&[(tau(0)?, 2), (tau(1)?, 3), (tau(2)?, 3)])?)?,
        AuxKind::HL37 => {
            let n = AuxParams::need_n(p.n, "n")?;
            let l = log_d()?.add(&coef(&p.gamma()?, u)?)?;
            riccati_square(&l, int(n as i64 + 1))?
        }
        AuxKind::H1L37 => {
            let n = AuxParams::need_n(p.n, "n")? as i64;
            let alpha = need(&p.alpha1, "alpha1")?;
            let num = d1.sub(&coef(&alpha.derivative(), u)?)?;
            let den = u.sub(&coef(alpha, u)?)?;
            log_d()?.scale(&int(n)).sub(&num.div(&den)?.scale(&int(n + 1)))?
        }
        AuxKind::H1L34 => {
            let m = p.m as i64;
            let b = need(&p.b, "b")?;
            let bp = b.derivative();
            let w = plus(b)?;
            let t1 = coef(&bp.pow(m).recip()?, u)?.div(&w)?.add(&coef(&p.gamma1_l34()?, u)?)?;
            let t2 = coef(&bp.pow(2 * m + 1).recip()?, u)?.div(&w)?.derivative();
            let p0b = need(&p.p0_at_minus_b, "P0(z,-b)")?;
            let k = RationalFunction::constant(rat_pow(&rat(-3, 2), m)).checked_div(&(&bp * p0b))?;
            let t3 = coef(&k, u)?.mul(&d1)?.div(&w.mul(&w)?)?;
            t1.mul(&t1)?.add(&t2)?.add(&t3)?
        }
        AuxKind::H2L34 => {
            let b = need(&p.b, "b")?;
            let bp = coef(&b.derivative(), u)?;
            let w = plus(b)?;
            log_d()?.sub(&d1.add(&bp)?.div(&w)?.scale(&int(2)))?.add(&bp.div(&w)?)?
        }
        AuxKind::H1L38 | AuxKind::H2L38 => {
            let n1 = AuxParams::need_n(p.n1, "n1")? as i64;
            let n2 = AuxParams::need_n(p.n2, "n2")? as i64;
            let (shift, gamma, k) = if aux.kind == AuxKind::H1L38 {
                (rat(n2 - 1, n2), p.gamma1_l38()?, rat(n1 + n2, n2))
            } else {
                (rat(n1 + 1, n1), p.gamma2_l38()?, rat(n1 + n2, n1))
            };
            let l = log_d()?.sub(&d1.div(u)?.scale(&shift))?.add(&coef(&gamma, u)?)?;
            riccati_square(&l, k)?
        }
    };
    if out.is_zero() && out.trunc() <= 0 {
        return Err(Error::TruncationExhausted);
    }
    Ok(out)
}
