//! Parser for polynomial and field-element literals.
//!
//! ```text
//! expr   := term ("+" term)*
//! term   := factor ("*"? factor)*
//! factor := atom ("^" uint)?
//! atom   := uint | "u" | "w" | "x" | "(" expr ")"
//! ```
//!
//! `u` is the generator of F_q over F_p, `w` the generator of F_{q²} over
//! F_q. Integers are reduced mod p. There is no minus sign; negatives are
//! written with their field representatives.

use std::sync::Arc;

use crate::error::{Error, ParseError, Result};
use crate::gf::{FieldTower, Gf, Level};
use crate::poly::Poly;

const MAX_EXPONENT: u64 = 1 << 16;

struct Parser<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
    tower: &'a FieldTower,
    field: Arc<Gf>,
    allow_x: bool,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, position: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse(ParseError {
            input: self.input.to_string(),
            position,
            message: message.into(),
        }))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn uint(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            v = match v.checked_mul(10).and_then(|v| v.checked_add((b - b'0') as u64)) {
                Some(v) => v,
                None => return self.err(start, "integer literal too large"),
            };
            self.pos += 1;
        }
        if self.pos == start {
            return self.err(start, "expected an unsigned integer");
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            acc = acc.add(&self.term()?);
        }
        Ok(acc)
    }

    fn starts_factor(b: u8) -> bool {
        b.is_ascii_digit() || matches!(b, b'u' | b'w' | b'x' | b'(')
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(b) if Self::starts_factor(b) => acc = acc.mul(&self.factor()?),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let atom = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let e = self.uint()?;
            if e > MAX_EXPONENT {
                return self.err(at, "exponent too large");
            }
            if atom.degree() == Some(1) && atom.coeffs() == [0, 1] {
                return Ok(Poly::monomial(&self.field, e as usize));
            }
            let mut acc = Poly::one(&self.field);
            for _ in 0..e {
                acc = acc.mul(&atom);
            }
            return Ok(acc);
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Poly> {
        let at = self.pos;
        match self.peek() {
            None => self.err(at, "unexpected end of input"),
            Some(b) if b.is_ascii_digit() => {
                let v = self.uint()?;
                Ok(Poly::constant(&self.field, self.field.from_int(v)))
            }
            Some(b'u') => {
                self.pos += 1;
                match (self.field.level(), self.tower.u()) {
                    (Level::Prime, _) => Err(Error::CoefficientDomain {
                        symbol: 'u',
                        level: Level::Prime,
                        input: self.input.into(),
                    }),
                    (_, None) => self.err(at, "`u` is undefined: the base field is prime"),
                    (_, Some(u)) => Ok(Poly::constant(&self.field, u)),
                }
            }
            Some(b'w') => {
                self.pos += 1;
                if self.field.level() != Level::Ext {
                    return Err(Error::CoefficientDomain {
                        symbol: 'w',
                        level: self.field.level(),
                        input: self.input.into(),
                    });
                }
                Ok(Poly::constant(&self.field, self.tower.omega()))
            }
            Some(b'x') => {
                if !self.allow_x {
                    return self.err(at, "`x` is not allowed in a field element");
                }
                self.pos += 1;
                Ok(Poly::monomial(&self.field, 1))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    let at = self.pos;
                    return self.err(at, "expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b) => self.err(at, format!("unexpected character `{}`", b as char)),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(b) => {
                let at = self.pos;
                self.err(at, format!("unexpected character `{}`", b as char))
            }
        }
    }
}

fn run(text: &str, tower: &FieldTower, level: Level, allow_x: bool) -> Result<Poly> {
    let mut parser = Parser {
        input: text,
        bytes: text.as_bytes(),
        pos: 0,
        tower,
        field: tower.field(level).clone(),
        allow_x,
    };
    let poly = parser.expr()?;
    parser.finish()?;
    Ok(poly)
}

/// Parses a polynomial in `x` with coefficients in the given tower level.
pub fn parse_poly(text: &str, tower: &FieldTower, level: Level) -> Result<Poly> {
    run(text, tower, level, true)
}

/// Parses a single field element such as `2w+1` or `u^2`.
pub fn parse_elem(text: &str, tower: &FieldTower, level: Level) -> Result<u16> {
    Ok(run(text, tower, level, false)?.coeff(0))
}
