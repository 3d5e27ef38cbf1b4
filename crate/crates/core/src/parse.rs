//! Infix polynomial parser (`x0*x2 - 3*x1^2 + (x0 + x1)^2`).

use std::sync::Arc;

use crate::poly::Polynomial;
use crate::ring::PolyRing;

type PResult<T> = std::result::Result<T, (usize, String)>;

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err((self.pos + 1, msg.into()))
    }

    fn expr(&mut self) -> PResult<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> PResult<Polynomial> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    self.skip_ws();
                    let e = self.integer()?;
                    let e = u32::try_from(e).or_else(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn integer(&mut self) -> PResult<u64> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            self.pos = start;
            return self.err("expected integer");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<u64>().map_err(|_| (start + 1, "integer too large".into()))
    }

    fn atom(&mut self) -> PResult<Polynomial> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let p = self.ring.field().characteristic() as u64;
                Ok(Polynomial::constant(self.ring, (n % p) as i64))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err((start + 1, format!("unknown variable '{name}'"))),
                }
            }
            Some(c) => self.err(format!("unexpected character '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial; errors carry a 1-based column.
pub fn parse_polynomial(ring: &Arc<PolyRing>, text: &str) -> PResult<Polynomial> {
    let mut p = Parser {
        ring,
        chars: text.chars().collect(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_powers_and_parentheses() {
        let r = PolyRing::standard(3);
        let a = parse_polynomial(&r, "(x0 + x1)^2").unwrap();
        let b = parse_polynomial(&r, "x0^2 + 2*x0*x1 + x1^2").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reports_column() {
        let r = PolyRing::standard(3);
        let e = parse_polynomial(&r, "x0 + y").unwrap_err();
        assert_eq!(e.0, 6);
        assert!(parse_polynomial(&r, "x0 +").is_err());
    }
}
