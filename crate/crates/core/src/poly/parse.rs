//! Polynomial text format.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ["+" | "-"] term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*      "/" only by nonzero constants
//! unary  := "-" unary | power
//! power  := atom ("^" integer)?
//! atom   := integer | identifier | "(" expr ")"
//! ```
//!
//! Identifiers are resolved against the ring's variables first and then
//! against the coefficient domain's named constants (`t` = ζ₉).

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::polynomial::Poly;
use super::ring::PolyRing;
use crate::coeff::{Coeff, CoeffDomain};
use crate::error::{Error, Result};

pub fn parse_poly<C: Coeff>(ring: &Arc<PolyRing<C>>, text: &str) -> Result<Poly<C>> {
    let mut p = Parser {
        ring,
        src: text.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses a comma-separated list of polynomials (brackets optional).
pub fn parse_poly_list<C: Coeff>(ring: &Arc<PolyRing<C>>, text: &str) -> Result<Vec<Poly<C>>> {
    let t = text.trim();
    let t = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .unwrap_or(t);
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top_level(t)
        .into_iter()
        .map(|s| parse_poly(ring, s))
        .collect()
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

struct Parser<'a, C: Coeff> {
    ring: &'a Arc<PolyRing<C>>,
    src: &'a [u8],
    pos: usize,
}

impl<C: Coeff> Parser<'_, C> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly<C>> {
        let mut acc = if self.eat(b'-') {
            self.term()?.neg()
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly<C>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                if !d.is_constant() || d.is_zero() {
                    self.pos = at;
                    return Err(self.err("division only by nonzero constants"));
                }
                let inv = d.constant_coeff().inv().ok_or(Error::DivisionByZero)?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly<C>> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly<C>> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let e: u32 = digits
                .parse()
                .map_err(|_| self.err("expected a non-negative integer exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly<C>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: BigInt = digits.parse().expect("digits");
                let q = BigRational::from_integer(n);
                let c = self
                    .ring
                    .domain()
                    .from_rational(&q)
                    .ok_or_else(|| self.err("constant not representable"))?;
                Ok(self.ring.constant(c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if let Some(v) = self.ring.var_named(name) {
                    return Ok(v);
                }
                if let Some(c) = self.ring.domain().symbol(name) {
                    return Ok(self.ring.constant(c));
                }
                self.pos = start;
                Err(self.err(&format!("unknown identifier `{name}`")))
            }
            _ => Err(self.err("expected a number, identifier or `(`")),
        }
    }
}

/// Parses a scalar of the coefficient domain written as a polynomial in its
/// named constants, e.g. `1/2*t^4 - 3` for ℚ(ζ₉).
pub fn parse_scalar<D: CoeffDomain>(domain: &D, text: &str) -> Result<D::Elem> {
    let ring = PolyRing::<D::Elem>::from_owned(
        domain.clone(),
        Vec::new(),
        Vec::new(),
        Default::default(),
    )?;
    let p = parse_poly(&ring, text)?;
    Ok(if p.is_zero() {
        domain.zero()
    } else {
        p.constant_coeff()
    })
}
