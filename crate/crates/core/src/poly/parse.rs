use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

use super::{Monomial, Polynomial};

/// Parses a polynomial in `x1..xn`.
///
/// ```text
/// expr    := ['+'|'-'] term (('+'|'-') term)*
/// term    := factor (['*'] factor)*
/// factor  := primary ['^' integer]
/// primary := integer | '[' element ']' | 'x' integer | '(' expr ')'
/// ```
///
/// Integers are reduced mod `p`; `[...]` holds an extension element written
/// as a polynomial in the generator, e.g. `[t+1]`. Whitespace is ignored.
pub fn parse_polynomial(text: &str, field: &Field, n: usize) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        text,
        pos: 0,
        field,
        n,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
    field: &'a Field,
    n: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.field, self.n);
        let mut negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negative { acc.sub(&t)? } else { acc.add(&t)? };
            if self.eat(b'+') {
                negative = false;
            } else if self.eat(b'-') {
                negative = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            let explicit = self.eat(b'*');
            match self.peek() {
                Some(c) if c.is_ascii_digit() || matches!(c, b'x' | b'[' | b'(') => {
                    acc = acc.mul(&self.factor()?)?;
                }
                _ if explicit => return Err(self.error("expected a factor after `*`")),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.primary()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.integer_u32()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn integer_u32(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        self.text[start..self.pos]
            .parse::<u32>()
            .map_err(|_| Error::Syntax {
                pos: start,
                msg: "integer too large".into(),
            })
    }

    fn primary(&mut self) -> Result<Polynomial> {
        let f = self.field;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let p = f.characteristic() as u64;
                let mut value = 0u64;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    value = (value * 10 + (self.src[self.pos] - b'0') as u64) % p;
                    self.pos += 1;
                }
                Ok(Polynomial::constant(f, self.n, Elem(value as u32)))
            }
            Some(b'x') => {
                let start = self.pos;
                self.pos += 1;
                let idx = self.integer_u32().map_err(|_| Error::Syntax {
                    pos: start,
                    msg: "expected a variable index after `x`".into(),
                })? as usize;
                if idx == 0 || idx > self.n {
                    return Err(Error::UnknownVariable {
                        name: format!("x{idx}"),
                        pos: start,
                        n: self.n,
                    });
                }
                Ok(Polynomial::term(
                    f,
                    Monomial::var(self.n, idx - 1, 1),
                    Elem::ONE,
                ))
            }
            Some(b'[') => {
                self.pos += 1;
                let start = self.pos;
                let end = self.text[start..]
                    .find(']')
                    .map(|i| start + i)
                    .ok_or_else(|| self.error("unclosed `[`"))?;
                let c = f.parse_element(&self.text[start..end])?;
                self.pos = end + 1;
                Ok(Polynomial::constant(f, self.n, c))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                Err(Error::UnknownVariable {
                    name: self.text[start..self.pos].to_string(),
                    pos: start,
                    n: self.n,
                })
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
