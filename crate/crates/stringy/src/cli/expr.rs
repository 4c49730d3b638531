//! Parser for the cyclotomic expression grammar used in input documents.
//!
//! ```text
//! expr  := term (('+'|'-') term)*
//! term  := coeff ('*' root)? | root
//! root  := 'E(' uint ')' ('^' int)?
//! coeff := int | int '/' uint
//! ```
//!
//! Whitespace is insignificant; `E(n)` denotes `e^{2 pi i / n}`. Errors
//! carry the byte position they occurred at.

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{Cyclotomic, Rational};

/// Hard ceilings so arbitrary input cannot allocate unbounded memory.
const MAX_CONDUCTOR: u64 = 10_000;
const MAX_DIGITS: usize = 4_096;
const MAX_TERMS: usize = 100_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("zero conductor in root of unity at byte {pos}")]
    ZeroConductor { pos: usize },
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser { bytes: text.as_bytes(), pos: 0 }
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ExprError> {
        if self.eat(b) {
            Ok(())
        } else {
            self.error(format!("expected {:?}", b as char))
        }
    }

    fn digits(&mut self) -> Result<&'a str, ExprError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.error("expected digits");
        }
        if self.pos - start > MAX_DIGITS {
            return self.error("number has too many digits");
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits"))
    }

    fn parse_uint(&mut self) -> Result<u64, ExprError> {
        let text = self.digits()?;
        text.parse::<u64>().or_else(|_| self.error("unsigned integer too large"))
    }

    fn parse_int_big(&mut self) -> Result<BigInt, ExprError> {
        let negative = self.eat(b'-');
        let text = self.digits()?;
        let mut value: BigInt = text.parse().expect("digits parse as BigInt");
        if negative {
            value = -value;
        }
        Ok(value)
    }

    fn parse_int_i64(&mut self) -> Result<i64, ExprError> {
        let negative = self.eat(b'-');
        let text = self.digits()?;
        let value: i64 = text.parse().or_else(|_| self.error("exponent too large"))?;
        Ok(if negative { -value } else { value })
    }

    fn parse_root(&mut self) -> Result<Cyclotomic, ExprError> {
        let at = self.pos;
        self.expect(b'E')?;
        self.expect(b'(')?;
        self.skip_ws();
        let n = self.parse_uint()?;
        self.skip_ws();
        self.expect(b')')?;
        if n == 0 {
            return Err(ExprError::ZeroConductor { pos: at });
        }
        if n > MAX_CONDUCTOR {
            return self.error(format!("conductor {n} exceeds the cap {MAX_CONDUCTOR}"));
        }
        self.skip_ws();
        let exponent = if self.eat(b'^') {
            self.skip_ws();
            self.parse_int_i64()?
        } else {
            1
        };
        Ok(Cyclotomic::root_of_unity(n, exponent))
    }

    fn parse_coeff(&mut self) -> Result<Rational, ExprError> {
        let numer = self.parse_int_big()?;
        if self.eat(b'/') {
            let denom_pos = self.pos;
            let denom = self.parse_uint()?;
            if denom == 0 {
                return Err(ExprError::Parse { pos: denom_pos, msg: "zero denominator".into() });
            }
            Ok(Rational::new(numer, BigInt::from(denom)))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    fn parse_term(&mut self) -> Result<Cyclotomic, ExprError> {
        self.skip_ws();
        match self.peek() {
            Some(b'E') => self.parse_root(),
            Some(b) if b == b'-' || b.is_ascii_digit() => {
                let coeff = self.parse_coeff()?;
                self.skip_ws();
                if self.eat(b'*') {
                    self.skip_ws();
                    let root = self.parse_root()?;
                    Ok(root.scale(&coeff))
                } else {
                    Ok(Cyclotomic::from_rational(coeff))
                }
            }
            _ => self.error("expected a coefficient or E(n)"),
        }
    }

    fn parse_expr(&mut self) -> Result<Cyclotomic, ExprError> {
        let mut acc = self.parse_term()?;
        let mut terms = 1usize;
        loop {
            self.skip_ws();
            let subtract = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => break,
            };
            self.pos += 1;
            terms += 1;
            if terms > MAX_TERMS {
                return self.error("too many terms");
            }
            let term = self.parse_term()?;
            acc = if subtract { acc.sub(&term) } else { acc.add(&term) };
        }
        Ok(acc)
    }
}

/// Parses an exact cyclotomic value from the expression grammar.
pub fn parse_cyclotomic_expr(text: &str) -> Result<Cyclotomic, ExprError> {
    let mut parser = Parser::new(text);
    let value = parser.parse_expr()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return parser.error("trailing input");
    }
    Ok(value)
}
