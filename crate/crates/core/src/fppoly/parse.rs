//! Text form of polynomials.
//!
//! ```text
//! poly   ::= term {("+" | "-") term} | "0"
//! term   ::= factor {"*" factor}
//! factor ::= coeff | varname ["^" exp]
//! ```
//!
//! Coefficients are decimal integers reduced mod `p`; whitespace is ignored.
//! Rendering (`Display`) writes terms in canonical graded-lex order.

use std::sync::Arc;

use crate::error::{Error, Result};

use super::modulus::{mul_mod, neg_mod};
use super::monomial::Monomial;
use super::poly::Polynomial;
use super::ring::PolyRing;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn digits(&mut self) -> &'a [u8] {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn ident(&mut self) -> &'a [u8] {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }
}

pub fn parse_poly(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
    let p = ring.p();
    let mut cur = Cursor { src: text.as_bytes(), pos: 0 };
    let mut terms: Vec<(Monomial, u64)> = Vec::new();
    if cur.peek().is_none() {
        return cur.err("empty input");
    }
    let mut negate = false;
    loop {
        let (m, c) = parse_term(ring, &mut cur)?;
        let c = if negate { neg_mod(c, p) } else { c };
        terms.push((m, c as u64));
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                negate = false;
            }
            Some(b'-') => {
                cur.pos += 1;
                negate = true;
            }
            Some(ch) => return cur.err(format!("unexpected character `{}`", ch as char)),
        }
    }
    Polynomial::from_terms(ring, terms)
}

fn parse_term(ring: &Arc<PolyRing>, cur: &mut Cursor<'_>) -> Result<(Monomial, u32)> {
    let p = ring.p();
    let mut m = Monomial::one(ring.nvars());
    let mut coeff = 1u32;
    loop {
        match cur.peek() {
            Some(ch) if ch.is_ascii_digit() => {
                let digits = cur.digits();
                let mut c = 0u64;
                for d in digits {
                    c = (c * 10 + (d - b'0') as u64) % p as u64;
                }
                coeff = mul_mod(coeff, c as u32, p);
            }
            Some(ch) if ch.is_ascii_alphabetic() => {
                let start = cur.pos;
                let name = std::str::from_utf8(cur.ident()).expect("ascii identifier");
                let index = ring
                    .space()
                    .index_of(name)
                    .ok_or_else(|| Error::UnknownVariable { name: name.to_string(), pos: start })?;
                let mut exp = 1u64;
                if cur.eat(b'^') {
                    cur.skip_ws();
                    let digits = cur.digits();
                    if digits.is_empty() {
                        return cur.err("expected exponent after `^`");
                    }
                    exp = std::str::from_utf8(digits)
                        .expect("ascii digits")
                        .parse::<u64>()
                        .map_err(|_| Error::Parse { pos: cur.pos, msg: "exponent too large".into() })?;
                }
                let slot = &mut m.exponents_mut()[index];
                let total = *slot as u64 + exp;
                if total > ring.degree_cap() as u64 {
                    return Err(Error::DegreeOverflow { degree: total, cap: ring.degree_cap() });
                }
                *slot = total as u16;
            }
            Some(ch) => return cur.err(format!("expected coefficient or variable, found `{}`", ch as char)),
            None => return cur.err("unexpected end of input"),
        }
        if !cur.eat(b'*') {
            break;
        }
    }
    Ok((m, coeff))
}

impl Polynomial {
    pub fn parse(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
        parse_poly(ring, text)
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}
