//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar: `+`, `-`, `*`, `^`, parentheses, unary minus, integer literals,
//! declared variable names. `^` takes a non-negative integer exponent.

use crate::error::{Error, Result};
use crate::poly::{PolyRing, Polynomial};

pub fn parse_polynomial(ring: &PolyRing, input: &str) -> Result<Polynomial> {
    let mut p = Parser {
        ring,
        input: input.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    ring: &'a PolyRing,
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            line: 1,
            col: self.pos + 1,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.ring.add(&acc, &t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.ring.sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                let f = self.factor()?;
                acc = self.ring.mul(&acc, &f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.err("exponent too large"))?;
            return Ok(self.ring.pow(&base, e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                let f = self.factor()?;
                Ok(self.ring.neg(&f))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(self.ring.constant(self.ring.field.reduce_u64(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.identifier();
                let i = self
                    .ring
                    .var_index(&name)
                    .map_err(|_| Error::UnknownVariable(name))?;
                Ok(self.ring.var(i))
            }
            _ => Err(self.err("expected a variable, number, or `(`")),
        }
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        // Reduce digit by digit so arbitrarily long literals work mod p.
        let p = self.ring.field.characteristic();
        let mut acc = 0u64;
        for d in s.bytes() {
            acc = (acc * 10 + (d - b'0') as u64) % p;
        }
        // For exponents the caller needs the raw value; literals that fit keep it.
        match s.parse::<u64>() {
            Ok(v) => Ok(v),
            Err(_) => Ok(acc),
        }
    }

    fn identifier(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.input[start..self.pos]).into_owned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::monomial::{MonomialOrder, OrderKind};

    fn ring() -> PolyRing {
        PolyRing::new(
            PrimeField::new(101).unwrap(),
            vec!["x".into(), "y".into()],
            MonomialOrder::new(OrderKind::Grevlex, 2),
        )
    }

    #[test]
    fn canonical_collection() {
        let r = ring();
        let f = parse_polynomial(&r, "y*x + x*y").unwrap();
        assert_eq!(r.to_string(&f), "2*x*y");
    }

    #[test]
    fn cancellation() {
        let r = ring();
        assert!(parse_polynomial(&r, "x - x").unwrap().is_zero());
    }

    #[test]
    fn coefficients_mod_p() {
        let r = ring();
        let f = parse_polynomial(&r, "102*x").unwrap();
        assert_eq!(r.to_string(&f), "x");
    }

    #[test]
    fn unknown_variable() {
        let r = ring();
        assert!(matches!(
            parse_polynomial(&r, "x + z"),
            Err(Error::UnknownVariable(v)) if v == "z"
        ));
    }

    #[test]
    fn parse_failure_carries_position() {
        let r = ring();
        match parse_polynomial(&r, "x + ") {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn powers_and_parens() {
        let r = ring();
        let f = parse_polynomial(&r, "(x + y)^2 - x^2 - y^2").unwrap();
        assert_eq!(r.to_string(&f), "2*x*y");
        let g = parse_polynomial(&r, "x^2*y - 3*y").unwrap();
        assert_eq!(r.to_string(&g), "x^2*y + 98*y");
    }
}
