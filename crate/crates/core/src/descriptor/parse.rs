//! Recursive-descent parser for the descriptor grammar
//!
//! ```text
//! expr := name | sum(expr, expr, ...) | mirror(expr) | cable(int, expr)
//!       | infect(expr, eta<int>, expr)
//! ```

use super::KnotDescriptor;
use crate::error::{Error, Result};
use crate::seifert::SeifertMatrix;

/// Parses an expression, resolving atom names with `resolve`.
pub fn parse_with(
    input: &str,
    resolve: &mut dyn FnMut(&str) -> Result<SeifertMatrix>,
) -> Result<KnotDescriptor> {
    let mut p = Parser {
        s: input.as_bytes(),
        pos: 0,
        resolve,
    };
    let k = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.error("trailing input"));
    }
    Ok(k)
}

struct Parser<'a, 'r> {
    s: &'a [u8],
    pos: usize,
    resolve: &'r mut dyn FnMut(&str) -> Result<SeifertMatrix>,
}

fn is_name_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || matches!(b, b'_' | b'-' | b'.' | b'/' | b'+')
}

impl Parser<'_, '_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at offset {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.s)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn name(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && is_name_byte(self.s[self.pos]) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a name"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("expected an integer"))
    }

    fn expr(&mut self) -> Result<KnotDescriptor> {
        let name = self.name()?;
        if self.peek() != Some(b'(') {
            return Ok(KnotDescriptor::Atom((self.resolve)(&name)?));
        }
        self.eat(b'(')?;
        let k = match name.as_str() {
            "sum" => {
                let mut parts = vec![self.expr()?];
                while self.peek() == Some(b',') {
                    self.eat(b',')?;
                    parts.push(self.expr()?);
                }
                KnotDescriptor::Sum(parts)
            }
            "mirror" => KnotDescriptor::mirror(self.expr()?),
            "cable" => {
                let r = self.int()?;
                if r < 1 {
                    return Err(self.error("cable parameter must be at least 1"));
                }
                self.eat(b',')?;
                KnotDescriptor::cable(r as u64, self.expr()?)?
            }
            "infect" => {
                let carrier = self.expr()?;
                self.eat(b',')?;
                let tag = self.name()?;
                let digits = tag
                    .strip_prefix("eta")
                    .ok_or_else(|| self.error("expected `eta<depth>`"))?;
                let depth = if digits.is_empty() {
                    self.int()?
                } else {
                    digits.parse().map_err(|_| self.error("bad depth tag"))?
                };
                let depth = u32::try_from(depth).map_err(|_| self.error("bad depth tag"))?;
                self.eat(b',')?;
                let infected = self.expr()?;
                KnotDescriptor::infect(carrier, depth, infected)
            }
            other => return Err(Error::Parse(format!("unknown operation `{other}`"))),
        };
        self.eat(b')')?;
        Ok(k)
    }
}
