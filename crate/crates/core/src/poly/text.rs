//! Canonical text form: `x1^2 - 2*x1*y1 + y1^2`, beta written `b`.
//!
//! Terms are printed in ascending total degree, ties broken by descending
//! lexicographic order with `x1 > x2 > ... > y1 > ... > b`. The parser
//! accepts the same syntax with optional `*`, parentheses and `^`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::poly::abs_coeff;
use super::series::beta_power;
use super::{CoeffRing, Monomial, Poly, PolyError, Var};

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (c, m, beta_exp)) in self.print_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let abs = abs_coeff(&c);
            let factors = render_factors(&m, beta_exp);
            match (abs.is_one(), factors.is_empty()) {
                (_, true) => write!(f, "{abs}")?,
                (true, false) => f.write_str(&factors)?,
                (false, false) => write!(f, "{abs}*{factors}")?,
            }
        }
        Ok(())
    }
}

fn render_factors(m: &Monomial, beta_exp: i32) -> String {
    let mut parts = Vec::new();
    match beta_exp {
        0 => {}
        1 => parts.push("b".to_string()),
        e => parts.push(format!("b^{e}")),
    }
    let mut pairs: Vec<(Var, u32)> = m.pairs().iter().copied().filter(|(v, _)| *v != Var::Beta).collect();
    pairs.sort_by_key(|&(v, _)| (!v.is_coefficient(), v.print_key()));
    for (v, e) in pairs {
        if e == 1 {
            parts.push(v.name());
        } else {
            parts.push(format!("{}^{e}", v.name()));
        }
    }
    parts.join("*")
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, PolyError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Tok::Int(text.parse().unwrap()));
            }
            a if a.is_ascii_alphabetic() => {
                let start = i;
                let indexed = matches!(a, 'x' | 'y' | 'z') && chars.get(i + 1).is_some_and(|c| c.is_ascii_digit());
                if indexed {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                } else {
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(PolyError::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

/// Grade of a named generator: `a{i}_{j}` gets `1 - i - j`, anything else 0.
fn infer_grade(name: &str) -> i32 {
    let parse = || -> Option<i32> {
        let rest = name.strip_prefix('a')?;
        let (i, j) = rest.split_once('_')?;
        Some(1 - i.parse::<i32>().ok()? - j.parse::<i32>().ok()?)
    };
    parse().unwrap_or(0)
}

/// Parses the canonical text format, inferring the coefficient ring from
/// the symbols present.
pub fn parse_poly(s: &str) -> Result<Poly, PolyError> {
    let toks = tokenize(s)?;
    let mut has_beta = false;
    let mut laurent = false;
    let mut named = Vec::new();
    for (k, t) in toks.iter().enumerate() {
        if let Tok::Ident(name) = t {
            match Var::parse(name) {
                Some(Var::Beta) => {
                    has_beta = true;
                    if toks.get(k + 1) == Some(&Tok::Caret) && toks.get(k + 2) == Some(&Tok::Minus) {
                        laurent = true;
                    }
                }
                Some(Var::Named(_)) => named.push((name.clone(), infer_grade(name))),
                Some(_) => {}
                None => return Err(PolyError::Parse(format!("bad identifier {name}"))),
            }
        }
    }
    let ring = match (has_beta, named.is_empty()) {
        (false, true) => CoeffRing::Integers,
        (true, true) if laurent => CoeffRing::IntegersBetaLaurent,
        (true, true) => CoeffRing::IntegersBeta,
        (false, false) => CoeffRing::named(named),
        (true, false) => return Err(PolyError::Parse("beta and named generators cannot be mixed".into())),
    };
    parse_poly_in(s, &ring)
}

/// Parses over a given coefficient ring.
pub fn parse_poly_in(s: &str, ring: &CoeffRing) -> Result<Poly, PolyError> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0, ring };
    let value = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(PolyError::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(value)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ring: &'a CoeffRing,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut acc = Poly::zero(self.ring.clone());
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            let t = self.term()?;
            acc = if negative { acc.try_sub(&t)? } else { acc.try_add(&t)? };
            first = false;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.try_mul(&f)?;
                }
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = acc.try_mul(&f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, PolyError> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let e: u32 = match self.next() {
            Some(Tok::Int(n)) => n.try_into().map_err(|_| PolyError::Parse("exponent too large".into()))?,
            other => return Err(PolyError::Parse(format!("expected exponent, found {other:?}"))),
        };
        if negative {
            let is_beta = base.len() == 1 && base.terms().next().is_some_and(|(m, c)| c.is_one() && *m == Monomial::var(Var::Beta))
                || (base.len() == 1 && base.beta_offset() == 1 && base.terms().next().is_some_and(|(m, c)| c.is_one() && m.is_one()));
            if !is_beta || !self.ring.is_laurent() {
                return Err(PolyError::Parse("negative exponents are only allowed on b in the Laurent ring".into()));
            }
            return Ok(beta_power(-(e as i32)));
        }
        Ok(base.pow(e))
    }

    fn primary(&mut self) -> Result<Poly, PolyError> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(Poly::constant(self.ring.clone(), n)),
            Some(Tok::Ident(name)) => {
                let v = Var::parse(&name).ok_or_else(|| PolyError::Parse(format!("bad identifier {name}")))?;
                Poly::var_in(self.ring.clone(), v)
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(PolyError::Parse("unbalanced parenthesis".into())),
                }
            }
            Some(Tok::Minus) => {
                let f = self.factor()?;
                Ok(-f)
            }
            other => Err(PolyError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_print() {
        let (x1, y1) = (Poly::x(1), Poly::y(1));
        let p = (&x1 - &y1).pow(2);
        assert_eq!(p.to_string(), "x1^2 - 2*x1*y1 + y1^2");
        let q = &x1 + &y1 + Poly::beta() * &x1 * &y1;
        assert_eq!(q.to_string(), "x1 + y1 + b*x1*y1");
        assert_eq!((-&x1).to_string(), "-x1");
        assert_eq!(Poly::int(1).to_string(), "1");
        assert_eq!((Poly::int(1) - Poly::beta().pow(2) * y1.pow(2)).to_string(), "1 - b^2*y1^2");
    }

    #[test]
    fn parse_examples() {
        let p = parse_poly("x1^2 - 2*x1*y1 + y1^2").unwrap();
        assert_eq!(p, (Poly::x(1) - Poly::y(1)).pow(2));
        assert_eq!(parse_poly("2x1y1").unwrap(), Poly::x(1) * Poly::y(1) * Poly::int(2));
        assert_eq!(parse_poly("(x1+x2)*(x1-x2)").unwrap(), Poly::x(1).pow(2) - Poly::x(2).pow(2));
        assert_eq!(parse_poly("0").unwrap(), Poly::int(0));
        assert_eq!(parse_poly("-x1 + b*x1*y1").unwrap().ring(), &CoeffRing::IntegersBeta);
        let named = parse_poly("a1_1*u*v").unwrap();
        assert_eq!(named.ring().grade(Var::named("a1_1")), Some(-1));
        assert!(parse_poly("x1 +").is_err());
        assert!(parse_poly("x1 ^ y1").is_err());
    }

    #[test]
    fn laurent_round_trip() {
        let p = parse_poly("b^-1*x1 + 1").unwrap();
        assert_eq!(p.ring(), &CoeffRing::IntegersBetaLaurent);
        assert_eq!(p.beta_offset(), -1);
        assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }
}
