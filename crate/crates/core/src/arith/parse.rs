//! Text grammar for polynomials:
//!
//! ```text
//! poly  := sign? term (('+'|'-') term)*
//! term  := coeff ('*'? mono)? | mono
//! coeff := integer | integer '/' integer
//! mono  := 'x' ('^' uint)? ('*'? 'y' ('^' uint)?)? | 'y' ('^' uint)?
//! ```
//!
//! Whitespace is ignored everywhere.

use num_bigint::BigInt;
use num_traits::One;

use super::field::Field;
use super::poly::{Monomial, Poly};
use crate::error::{Error, Result};

pub fn parse_poly(src: &str, field: Field) -> Result<Poly> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { chars: &chars, pos: 0, src };
    let poly = p.poly(field)?;
    if p.pos != chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    chars: &'a [char],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {} in {:?}", self.pos, self.src))
    }

    fn poly(&mut self, field: Field) -> Result<Poly> {
        if self.chars.is_empty() {
            return Err(self.error("empty polynomial"));
        }
        let mut out = Poly::zero(field);
        let mut negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let (num, den, mono) = self.term()?;
            let mut c = field.from_ratio(&num, &den)?;
            if negative {
                c = c.neg();
            }
            out.add_term(mono, &c);
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(BigInt, BigInt, Monomial)> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.eat('/') { self.integer()? } else { BigInt::one() };
                let star = self.eat('*');
                let mono = match self.peek() {
                    Some('x') | Some('y') => self.mono()?,
                    _ if star => return Err(self.error("expected monomial after '*'")),
                    _ => Monomial::ONE,
                };
                Ok((num, den, mono))
            }
            Some('x') | Some('y') => Ok((BigInt::one(), BigInt::one(), self.mono()?)),
            _ => Err(self.error("expected term")),
        }
    }

    fn mono(&mut self) -> Result<Monomial> {
        let mut m = Monomial::ONE;
        if self.eat('x') {
            m.a = self.exponent()?;
            let save = self.pos;
            let star = self.eat('*');
            if self.eat('y') {
                m.b = self.exponent()?;
            } else if star {
                self.pos = save;
            }
        } else if self.eat('y') {
            m.b = self.exponent()?;
        } else {
            return Err(self.error("expected 'x' or 'y'"));
        }
        Ok(m)
    }

    fn exponent(&mut self) -> Result<u32> {
        if !self.eat('^') {
            return Ok(1);
        }
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("expected exponent"))
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("expected integer"))
    }
}
