//! Text format for matrices over `O_r`.
//!
//! ```text
//! matrix := row (';' row)*
//! row    := expr (',' expr)*
//! expr   := term (('+' | '-') term)*
//! term   := power ('*'? power)*          juxtaposition multiplies: "2t", "3x^2"
//! power  := atom ('^' integer)?
//! atom   := integer | 't' | 'x' | '(' expr ')' | '-' power
//! ```
//!
//! `t` is the uniformizer of `F_q[t]/t^r` and is rejected for Witt rings, where the
//! uniformizer is the integer `p`. `x` is the generator of the residue field extension
//! (only meaningful when `f > 1`). Integers are reduced into the prime subring.
//! Whitespace is ignored.

use std::fmt;

use kkg_core::{Mat, RElem, RingDesc, RingKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    ring: &'a RingDesc,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
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

    fn integer(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().map_err(|_| ParseError {
            position: start,
            message: format!("integer {text} is too large"),
        })
    }

    fn expr(&mut self) -> Result<RElem, ParseError> {
        let ring = self.ring;
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = ring.add(acc, self.term()?);
            } else if self.eat(b'-') {
                acc = ring.sub(acc, self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RElem, ParseError> {
        let ring = self.ring;
        let mut acc = self.power()?;
        loop {
            // `*` or juxtaposition
            if self.eat(b'*') || matches!(self.peek(), Some(b'0'..=b'9' | b't' | b'x' | b'(')) {
                acc = ring.mul(acc, self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<RElem, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            return Ok(self.ring.pow(base, e as u128));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RElem, ParseError> {
        let ring = self.ring;
        match self.peek() {
            Some(b'0'..=b'9') => {
                let k = self.integer()?;
                Ok(ring.from_int((k % ring.characteristic()) as i64))
            }
            Some(b't') => {
                if ring.kind() == RingKind::Witt {
                    return self
                        .error("'t' is not an element of a Witt ring; its uniformizer is p");
                }
                self.pos += 1;
                Ok(ring.uniformizer())
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(ring.x())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return self.error("expected ')'");
                }
                Ok(v)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(ring.neg(self.power()?))
            }
            Some(c) => self.error(format!("unexpected character '{}'", c as char)),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses a single ring element.
pub fn parse_element(ring: &RingDesc, text: &str) -> Result<RElem, ParseError> {
    let mut p = Parser {
        ring,
        src: text.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.error("trailing input");
    }
    Ok(v)
}

/// Parses a square matrix: rows separated by `;`, entries by `,`.
pub fn parse_matrix(ring: &RingDesc, text: &str) -> Result<Mat, ParseError> {
    let mut p = Parser {
        ring,
        src: text.as_bytes(),
        pos: 0,
    };
    let mut rows: Vec<Vec<RElem>> = vec![vec![p.expr()?]];
    loop {
        match p.peek() {
            Some(b',') => {
                p.pos += 1;
                let v = p.expr()?;
                rows.last_mut().expect("non-empty").push(v);
            }
            Some(b';') => {
                p.pos += 1;
                rows.push(vec![p.expr()?]);
            }
            None => break,
            Some(c) => return p.error(format!("expected ',' or ';', found '{}'", c as char)),
        }
    }
    let n = rows.len();
    if let Some((i, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != n) {
        return Err(ParseError {
            position: text.len(),
            message: format!(
                "row {i} has {} entries, expected {n} for a square matrix",
                row.len()
            ),
        });
    }
    Ok(Mat::from_rows(&rows).expect("square and non-empty"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, f: u32, r: u32) -> RingDesc {
        RingDesc::new(RingKind::Poly, p, f, r).unwrap()
    }

    #[test]
    fn elements() {
        let ring = poly(5, 1, 2);
        let t = ring.uniformizer();
        assert_eq!(parse_element(&ring, "t"), Ok(t));
        assert_eq!(
            parse_element(&ring, "1 + 2t"),
            Ok(ring.add(ring.one(), ring.mul(ring.from_int(2), t)))
        );
        assert_eq!(parse_element(&ring, "2*t"), parse_element(&ring, "2t"));
        assert_eq!(parse_element(&ring, "t^2"), Ok(ring.zero()));
        assert_eq!(parse_element(&ring, "-1"), Ok(ring.from_int(4)));
        assert_eq!(parse_element(&ring, "7"), Ok(ring.from_int(2)));
        assert_eq!(parse_element(&ring, "(1+t)(1-t)"), Ok(ring.one()));
    }

    #[test]
    fn witt_entries() {
        let ring = RingDesc::new(RingKind::Witt, 5, 1, 2).unwrap();
        assert_eq!(parse_element(&ring, "24"), Ok(ring.from_int(24)));
        assert_eq!(parse_element(&ring, "30"), Ok(ring.from_int(5)));
        let err = parse_element(&ring, "1+t").unwrap_err();
        assert_eq!(err.position, 2);
        let gr = RingDesc::new(RingKind::Witt, 2, 2, 2).unwrap();
        assert_eq!(
            parse_element(&gr, "3 + 2x"),
            Ok(gr.add(gr.from_int(3), gr.mul(gr.from_int(2), gr.x())))
        );
    }

    #[test]
    fn matrices() {
        let ring = poly(5, 1, 2);
        let m = parse_matrix(&ring, "1,1,0;t,1,1;t,0,1").unwrap();
        assert_eq!(m.n(), 3);
        assert_eq!(m.get(1, 0), ring.uniformizer());
        let e = parse_matrix(&ring, "1,2;3").unwrap_err();
        assert!(e.message.contains("row 1"));
        let e = parse_matrix(&ring, "1,2;3,%").unwrap_err();
        assert_eq!(e.position, 6);
        assert!(parse_matrix(&ring, "1,(2").is_err());
        assert!(parse_matrix(&ring, "").is_err());
    }
}
