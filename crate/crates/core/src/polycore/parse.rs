use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{Poly, Rational, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column inside the parsed string.
    pub column: usize,
    pub message: String,
}

/// Parses a polynomial string in `ring`.
///
/// Grammar: `poly := term (('+'|'-') term)*`, `term := coeff ('*' factor)* |
/// factor ('*' factor)*`, `factor := var ('^' int)? | '(' poly ')'`,
/// `coeff := int ('/' int)?`. A leading sign is allowed; implicit
/// multiplication is not.
pub fn parse_poly(s: &str, ring: &Ring) -> Result<Poly, ParseError> {
    parse_poly_with_params(s, ring, &BTreeMap::new())
}

/// Like [`parse_poly`], but integer parameters may appear as exponents
/// (`y^k`) or as constant factors.
pub fn parse_poly_with_params(s: &str, ring: &Ring, params: &BTreeMap<String, i64>) -> Result<Poly, ParseError> {
    let mut p = Parser { chars: s.chars().collect(), pos: 0, ring, params };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.err("empty polynomial"));
    }
    let out = p.poly()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(out),
        Some(c) if c.is_ascii_alphanumeric() || c == '(' => Err(p.err("implicit multiplication is not allowed; use `*`")),
        Some(c) => Err(p.err(&format!("unexpected character `{c}`"))),
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ring: &'a Ring,
    params: &'a BTreeMap<String, i64>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError { column: self.pos + 1, message: msg.to_string() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn poly(&mut self) -> Result<Poly, ParseError> {
        let mut acc = Poly::zero(self.ring.len());
        let mut negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negative { &acc - &t } else { &acc + &t };
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
            return None;
        }
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().collect())
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if !self.eat('^') {
            return Ok(1);
        }
        self.skip_ws();
        let at = self.pos;
        if let Some(n) = self.integer() {
            return u32::try_from(n).map_err(|_| ParseError { column: at + 1, message: "exponent too large".into() });
        }
        if let Some(name) = self.ident() {
            return match self.params.get(&name) {
                Some(&v) if v >= 0 => Ok(v as u32),
                Some(_) => Err(ParseError { column: at + 1, message: format!("parameter `{name}` is negative") }),
                None => Err(ParseError { column: at + 1, message: format!("exponent must be an integer or a parameter, got `{name}`") }),
            };
        }
        Err(self.err("expected exponent after `^`"))
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let n = self.ring.len();
        self.skip_ws();
        let at = self.pos;
        let base = if self.eat('(') {
            let inner = self.poly()?;
            if !self.eat(')') {
                return Err(self.err("expected `)`"));
            }
            inner
        } else if let Some(num) = self.integer() {
            let mut c = Rational::from_integer(num);
            if self.eat('/') {
                let den = self.integer().ok_or_else(|| self.err("expected denominator"))?;
                if den.is_zero() {
                    return Err(ParseError { column: at + 1, message: "zero denominator".into() });
                }
                c /= Rational::from_integer(den);
            }
            Poly::constant(n, c)
        } else if let Some(name) = self.ident() {
            if let Some(i) = self.ring.index_of(&name) {
                Poly::var(n, i)
            } else if let Some(&v) = self.params.get(&name) {
                Poly::from_int(n, v)
            } else {
                return Err(ParseError { column: at + 1, message: format!("unknown variable `{name}`") });
            }
        } else {
            return Err(match self.peek() {
                Some(c) => self.err(&format!("unexpected character `{c}`")),
                None => self.err("unexpected end of input"),
            });
        };
        let e = self.exponent()?;
        Ok(if e == 1 { base } else if e == 0 { Poly::constant(n, Rational::one()) } else { base.pow(e) })
    }
}
