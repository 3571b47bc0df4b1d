//! Surface syntax: `S(f)[^m] = EXPR` with `EXPR` rational in `f` and `z`.
//!
//! ```text
//! equation := "S" "(" "f" ")" [ "^" INT ] "=" expr
//! expr     := term { ("+" | "-") term }
//! term     := unary { ("*" | "/") unary }
//! unary    := ("+" | "-") unary | power
//! power    := atom [ "^" [ "-" ] INT ]
//! atom     := NUMBER [ "z" | "f" ] | "z" | "f" | "(" expr ")"
//! ```
//!
//! A number written directly against a variable (`2z`) multiplies it; no
//! other implicit product is accepted.

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{Rat, RationalFunction};
use crate::equation::SchwarzEquation;
use crate::error::{Error, Result};
use crate::fpoly::{fp_gcd, FPoly};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(char),
    Op(char),
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

/// Tokens with their position and whether they touch the previous one.
fn lex(src: &str) -> Result<Vec<(usize, Tok, bool)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut glued = false;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            glued = false;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let mut text: String = chars[start..i].iter().collect();
            let mut den = BigInt::one();
            if i < chars.len() && chars[i] == '.' {
                i += 1;
                let frac_start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i == frac_start {
                    return Err(syntax(i, "digits expected after '.'"));
                }
                text.extend(&chars[frac_start..i]);
                den = BigInt::from(10u32).pow((i - frac_start) as u32);
            }
            let num: BigInt = text.parse().expect("digits");
            out.push((start, Tok::Num(Rat::new(num, den)), glued));
            glued = true;
            continue;
        }
        match c {
            'f' | 'z' | 'S' => out.push((i, Tok::Ident(c), glued)),
            '+' | '-' | '*' | '/' | '^' | '(' | ')' | '=' => out.push((i, Tok::Op(c), glued)),
            '−' => out.push((i, Tok::Op('-'), glued)),
            _ => return Err(syntax(i, format!("unexpected character '{c}'"))),
        }
        glued = true;
        i += 1;
    }
    Ok(out)
}

/// `num / den` with both in `Q(z)[f]`.
#[derive(Clone, Debug)]
struct Frac {
    num: FPoly,
    den: FPoly,
}

impl Frac {
    fn poly(p: FPoly) -> Frac {
        Frac { num: p, den: FPoly::one() }
    }

    fn reduced(num: FPoly, den: FPoly) -> Frac {
        if num.is_zero() {
            return Frac::poly(FPoly::zero());
        }
        let g = fp_gcd(&num, &den);
        let (num, den) = if g.deg() >= 1 { (num.exact_div(&g), den.exact_div(&g)) } else { (num, den) };
        // Keep the denominator monic in f so sizes stay small.
        let lc = den.leading().expect("nonzero").clone();
        let inv = lc.recip().expect("nonzero");
        Frac { num: num.scale(&inv), den: den.scale(&inv) }
    }

    fn add(&self, o: &Frac, sign: bool) -> Frac {
        let a = &self.num * &o.den;
        let b = &o.num * &self.den;
        let num = if sign { &a + &b } else { &a - &b };
        Frac::reduced(num, &self.den * &o.den)
    }

    fn mul(&self, o: &Frac) -> Frac {
        Frac::reduced(&self.num * &o.num, &self.den * &o.den)
    }

    fn div(&self, o: &Frac) -> Option<Frac> {
        (!o.num.is_zero()).then(|| Frac::reduced(&self.num * &o.den, &self.den * &o.num))
    }

    fn pow(&self, k: i64) -> Option<Frac> {
        let e = k.unsigned_abs() as u32;
        let p = Frac { num: self.num.pow(e), den: self.den.pow(e) };
        if k >= 0 {
            Some(p)
        } else {
            Frac::poly(FPoly::one()).div(&p)
        }
    }
}

struct Parser {
    toks: Vec<(usize, Tok, bool)>,
    at: usize,
    end: usize,
    /// Whether `f` may appear.
    allow_f: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<()> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected '{op}'")))
        }
    }

    fn expr(&mut self) -> Result<Frac> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?, true);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?, false);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let rhs = self.unary()?;
                acc = acc.div(&rhs).ok_or(Error::ZeroDenominator)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Frac> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(Frac { num: -&v.num, den: v.den });
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(r)) if r.is_integer() => {
                self.at += 1;
                let v: i64 = r.to_integer().try_into().map_err(|_| syntax(pos, "exponent too large"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(syntax(pos, "integer exponent expected")),
        }
    }

    fn power(&mut self) -> Result<Frac> {
        let base = self.atom()?;
        if self.eat('^') {
            let pos = self.pos();
            let k = self.int()?;
            if k.unsigned_abs() > 4096 {
                return Err(syntax(pos, "exponent too large"));
            }
            return base.pow(k).ok_or(Error::ZeroDenominator);
        }
        Ok(base)
    }

    fn var(&mut self, c: char, pos: usize) -> Result<Frac> {
        match c {
            'z' => Ok(Frac::poly(FPoly::constant(RationalFunction::var()))),
            'f' if self.allow_f => Ok(Frac::poly(FPoly::var())),
            'f' => Err(syntax(pos, "f is not allowed here; use z")),
            _ => Err(syntax(pos, format!("unexpected '{c}'"))),
        }
    }

    fn atom(&mut self) -> Result<Frac> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(r)) => {
                self.at += 1;
                let n = Frac::poly(FPoly::constant(RationalFunction::constant(r)));
                // `2z`: a variable directly after the digits.
                if let Some((p, Tok::Ident(c), true)) = self.toks.get(self.at).cloned() {
                    if c != 'S' {
                        self.at += 1;
                        let v = self.var(c, p)?;
                        let v = if self.eat('^') {
                            let k = self.int()?;
                            v.pow(k).ok_or(Error::ZeroDenominator)?
                        } else {
                            v
                        };
                        return Ok(n.mul(&v));
                    }
                }
                Ok(n)
            }
            Some(Tok::Ident(c)) => {
                self.at += 1;
                self.var(c, pos)
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(Tok::Op(c)) => Err(syntax(pos, format!("unexpected '{c}'"))),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

impl Parser {
    fn new(src: &str, allow_f: bool) -> Result<Parser> {
        Ok(Parser { toks: lex(src)?, at: 0, end: src.chars().count(), allow_f })
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(syntax(self.pos(), "unexpected trailing input")),
        }
    }

    fn ident(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(&Tok::Ident(c)) {
            self.at += 1;
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected '{c}'")))
        }
    }
}

/// Parses `S(f)[^m] = EXPR` into canonical form.
pub fn parse_equation(src: &str) -> Result<SchwarzEquation> {
    let mut p = Parser::new(src, true)?;
    p.ident('S')?;
    p.expect('(')?;
    p.ident('f')?;
    p.expect(')')?;
    let mut m = 1u32;
    if p.eat('^') {
        let pos = p.pos();
        let neg = p.peek() == Some(&Tok::Op('-'));
        let k = p.int()?;
        if k <= 0 {
            let shown = if neg && k == 0 { "-0".to_string() } else { k.to_string() };
            return Err(Error::NonPositiveExponent(shown));
        }
        m = u32::try_from(k).ok().filter(|&m| m <= 64).ok_or_else(|| syntax(pos, "exponent of S(f) too large"))?;
    }
    p.expect('=')?;
    let rhs = p.expr()?;
    p.finish()?;
    SchwarzEquation::new(m, rhs.num, rhs.den)
}

/// Parses a rational function of `z`.
pub fn parse_rational(src: &str) -> Result<RationalFunction> {
    let mut p = Parser::new(src, false)?;
    let v = p.expr()?;
    p.finish()?;
    v.num.coeff(0).checked_div(&v.den.coeff(0)).map_err(|_| Error::ZeroDenominator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, Poly};

    #[test]
    fn equations() {
        let eq = parse_equation("S(f)^2 = (f-1)/(f-2)").unwrap();
        assert_eq!(eq.m(), 2);
        assert_eq!(eq.p(), &FPoly::linear_const(&int(1)));
        assert_eq!(eq.q(), &FPoly::linear_const(&int(2)));
        let eq = parse_equation("S(f) = 2").unwrap();
        assert_eq!((eq.m(), eq.p(), eq.q()), (1, &FPoly::from_rats(&[int(2)]), &FPoly::one()));
        assert_eq!(parse_equation("S(f) = -1/2"), parse_equation("S(f) = -0.5"));
    }

    #[test]
    fn juxtaposition() {
        let r = parse_rational("2z^2 + 3").unwrap();
        assert_eq!(r, RationalFunction::from_poly(Poly::new(vec![int(3), int(0), int(2)])));
        assert!(matches!(parse_rational("2 z"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_rational("z z"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_rational("2(z)"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn errors() {
        assert_eq!(parse_equation("S(f)^0 = f"), Err(Error::NonPositiveExponent("0".into())));
        assert_eq!(parse_equation("S(f)^-2 = f"), Err(Error::NonPositiveExponent("-2".into())));
        assert_eq!(parse_equation("S(f) = 1/(f - f)"), Err(Error::ZeroDenominator));
        assert_eq!(parse_equation("S(f) = f +"), Err(Error::Syntax { pos: 10, msg: "unexpected end of input".into() }));
        assert!(matches!(parse_equation("S(f) = f $"), Err(Error::Syntax { pos: 9, .. })));
        assert!(matches!(parse_rational("f + 1"), Err(Error::Syntax { pos: 0, .. })));
    }

    #[test]
    fn negative_powers() {
        let r = parse_rational("z^-2").unwrap();
        assert_eq!(r.eval(&int(2)), Some(rat(1, 4)));
    }

    #[test]
    fn zero_is_fine() {
        let r = parse_rational("z - z").unwrap();
        assert!(r.is_zero());
    }
}
