//! Textual syntax for elements of `Gamma`.
//!
//! The canonical rendering lists terms in ascending index order, omits unit
//! coefficients, and writes coefficient denominators as powers of the
//! letter `p`: `e1 - e2`, `3/p^2 * e0 + e4`, `-2/p * e-1`. The parser
//! accepts the same grammar with redundant whitespace, explicit `1 *`
//! coefficients, and a bare `0` for the zero element, so rendering followed
//! by parsing is the identity.

use std::fmt;

use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::oag::OagElement;
use crate::rational::{factor_out, int, Int, Rat};

impl fmt::Display for OagElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.support().enumerate() {
            let negative = c.is_negative();
            match (n, negative) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            let c = c.abs();
            if !c.is_one() {
                write!(f, "{}", c.numer())?;
                let (k, _) = factor_out(self.p(), c.denom());
                match k {
                    0 => {}
                    1 => write!(f, "/p")?,
                    _ => write!(f, "/p^{k}")?,
                }
                write!(f, " * ")?;
            }
            write!(f, "e{i}")?;
        }
        Ok(())
    }
}

/// Parses the textual element syntax into an element of the group
/// attached to `p`.
pub fn parse_oag(p: u64, input: &str) -> Result<OagElement> {
    let mut cur = Cursor { s: input.as_bytes(), pos: 0 };
    let mut terms: Vec<(i64, Rat)> = Vec::new();
    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(Error::Parse("empty group element expression".into()));
    }
    let mut negative = match cur.peek() {
        Some(b'-') => {
            cur.pos += 1;
            true
        }
        Some(b'+') => {
            cur.pos += 1;
            false
        }
        _ => false,
    };
    loop {
        cur.skip_ws();
        let (index, coeff) = parse_term(&mut cur, p)?;
        let coeff = if negative { -coeff } else { coeff };
        match index {
            Some(i) => terms.push((i, coeff)),
            None if coeff.is_zero() => {}
            None => {
                return Err(Error::Parse(format!(
                    "constant term {coeff} has no basis vector"
                )))
            }
        }
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                negative = false;
            }
            Some(b'-') => {
                cur.pos += 1;
                negative = true;
            }
            Some(c) => {
                return Err(Error::Parse(format!(
                    "unexpected character '{}' at offset {}",
                    c as char, cur.pos
                )))
            }
        }
    }
    OagElement::from_coords(p, terms)
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek() == Some(b' ') {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn take_digits(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse(format!(
                "expected digits at offset {start}"
            )));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits"))
    }
}

/// One term: either a basis vector (coefficient one) or a coefficient with
/// an optional `* e<index>` tail. A missing index means a bare constant.
fn parse_term(cur: &mut Cursor<'_>, p: u64) -> Result<(Option<i64>, Rat)> {
    if cur.eat(b'e') {
        return Ok((Some(parse_index(cur)?), Rat::one()));
    }
    let numer: Int = BigInt::parse_bytes(cur.take_digits()?.as_bytes(), 10)
        .expect("digit strings parse");
    let denom = if cur.eat(b'/') {
        if !cur.eat(b'p') {
            return Err(Error::Parse(
                "coefficient denominators must be powers of p".into(),
            ));
        }
        let k: u32 = if cur.eat(b'^') {
            cur.take_digits()?
                .parse()
                .map_err(|_| Error::Parse("denominator exponent out of range".into()))?
        } else {
            1
        };
        num::pow(int(p as i64), k as usize)
    } else {
        Int::one()
    };
    let coeff = Rat::new(numer, denom);
    cur.skip_ws();
    if cur.eat(b'*') {
        cur.skip_ws();
        if !cur.eat(b'e') {
            return Err(Error::Parse(format!(
                "expected a basis vector after '*' at offset {}",
                cur.pos
            )));
        }
        return Ok((Some(parse_index(cur)?), coeff));
    }
    Ok((None, coeff))
}

fn parse_index(cur: &mut Cursor<'_>) -> Result<i64> {
    let negative = cur.eat(b'-');
    let digits = cur.take_digits()?;
    let magnitude: i64 = digits
        .parse()
        .map_err(|_| Error::Parse(format!("basis index {digits} out of range")))?;
    Ok(if negative { -magnitude } else { magnitude })
}
