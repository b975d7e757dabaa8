//! Concrete syntax for terms, polynomials and vectors.
//!
//! ```text
//! term       := var | var '^{' element '}' | 'pi[' element '](' term ')'
//!             | name '(' term {',' term} ')' | name
//! var        := 'x' positive-integer
//! polynomial := ['+'|'-'] summand {('+'|'-') summand} | '0'
//! summand    := [coefficient '*'] term
//! coefficient:= integer ['/' integer]
//! ```

use crate::error::{Error, Result};
use crate::linalg::{add_scaled, Vector};
use crate::poly::Polynomial;
use crate::scalar::{parse_scalar, Field, Scalar};
use crate::signature::{Semigroup, Signature};
use crate::term::Term;

/// What the parser checks names against.
#[derive(Clone, Copy, Debug)]
pub struct Context<'a> {
    pub signature: &'a Signature,
    /// Elements allowed in `pi[..]` and `^{..}`; anything goes when absent.
    pub group: Option<&'a Semigroup>,
    /// Used as the file name in error positions.
    pub source: &'a str,
}

impl<'a> Context<'a> {
    pub fn new(signature: &'a Signature) -> Context<'a> {
        Context { signature, group: None, source: "<input>" }
    }

    pub fn with_group(mut self, group: &'a Semigroup) -> Context<'a> {
        self.group = Some(group);
        self
    }

    pub fn with_source(mut self, source: &'a str) -> Context<'a> {
        self.source = source;
        self
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ctx: Context<'a>,
    line: usize,
    column_offset: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &str, ctx: Context<'a>) -> Parser<'a> {
        Parser { chars: text.chars().collect(), pos: 0, ctx, line: 1, column_offset: 0 }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        Error::Positioned {
            file: self.ctx.source.to_string(),
            line: self.line,
            column: self.column_offset + pos + 1,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(self.error(format!("expected '{c}', found '{d}'"))),
            None => Err(self.error(format!("expected '{c}', found end of input"))),
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn identifier(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        if !self.chars.get(self.pos).is_some_and(|c| c.is_alphabetic() || *c == '_') {
            return None;
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_alphanumeric() || *c == '_') {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().collect())
    }

    /// Text up to (not including) `close`, trimmed.
    fn delimited(&mut self, close: char) -> Result<(usize, String)> {
        let start = self.pos;
        while let Some(&c) = self.chars.get(self.pos) {
            if c == close {
                let text: String = self.chars[start..self.pos].iter().collect();
                self.pos += 1;
                return Ok((start, text.trim().to_string()));
            }
            self.pos += 1;
        }
        Err(self.error_at(start, format!("missing '{close}'")))
    }

    fn element(&mut self, close: char) -> Result<String> {
        let (start, name) = self.delimited(close)?;
        if name.is_empty() {
            return Err(self.error_at(start, "empty semigroup element"));
        }
        if let Some(g) = self.ctx.group {
            if g.index_of(&name).is_none() {
                return Err(self.error_at(start, format!("{name} is not a semigroup element")));
            }
        }
        Ok(name)
    }

    fn term(&mut self) -> Result<Term> {
        self.skip_ws();
        let start = self.pos;
        let Some(name) = self.identifier() else {
            return Err(match self.chars.get(self.pos) {
                Some(c) => self.error(format!("expected a term, found '{c}'")),
                None => self.error("expected a term, found end of input"),
            });
        };
        if let Some(index) = variable_index(&name) {
            let index = index.map_err(|m| self.error_at(start, m))?;
            if self.chars.get(self.pos) == Some(&'^') {
                self.pos += 1;
                if self.chars.get(self.pos) != Some(&'{') {
                    return Err(self.error("expected '{' after '^'"));
                }
                self.pos += 1;
                let g = self.element('}')?;
                return Ok(Term::graded(index, &g));
            }
            return Ok(Term::var(index));
        }
        if name == "pi" {
            self.skip_ws();
            if self.chars.get(self.pos) != Some(&'[') {
                return Err(self.error("expected '[' after pi"));
            }
            self.pos += 1;
            let g = self.element(']')?;
            self.expect('(')?;
            let inner = self.term()?;
            self.expect(')')?;
            return Ok(Term::proj(&g, inner));
        }
        let Some(arity) = self.ctx.signature.arity(&name) else {
            return Err(self.error_at(start, format!("unknown operation {name}")));
        };
        let mut children = Vec::new();
        if self.peek() == Some('(') {
            self.pos += 1;
            loop {
                children.push(self.term()?);
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    Some(c) => return Err(self.error(format!("expected ',' or ')', found '{c}'"))),
                    None => return Err(self.error("unclosed argument list")),
                }
            }
        }
        if children.len() != arity {
            return Err(self.error_at(start, format!("{name} takes {arity} arguments, got {}", children.len())));
        }
        Ok(Term::op(&name, children))
    }

    fn coefficient(&mut self, field: Field) -> Result<Option<Scalar>> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit() || *c == '/' || c.is_whitespace()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let text = text.trim();
        if text.is_empty() {
            self.pos = start;
            return Ok(None);
        }
        parse_scalar(text, field).map(Some).map_err(|e| self.error_at(start, e.to_string()))
    }

    /// A signed sum of `[coefficient '*'] item`.
    fn sum<T>(
        &mut self,
        field: Field,
        mut item: impl FnMut(&mut Self) -> Result<T>,
        mut add: impl FnMut(Scalar, T),
    ) -> Result<()> {
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    field.one()
                }
                Some('-') => {
                    self.pos += 1;
                    -field.one()
                }
                _ if first => field.one(),
                Some(c) => return Err(self.error(format!("expected '+' or '-', found '{c}'"))),
                None => return Ok(()),
            };
            first = false;
            let coef = match self.coefficient(field)? {
                Some(c) => {
                    if self.peek() == Some('*') {
                        self.pos += 1;
                    } else {
                        return Err(self.error("expected '*' after a coefficient"));
                    }
                    c
                }
                None => field.one(),
            };
            let value = item(self)?;
            add(&sign * &coef, value);
            if self.at_end() {
                return Ok(());
            }
        }
    }
}

/// `Some(Ok(i))` for `x<i>`, `Some(Err)` for malformed variables such as
/// `x0`, `None` for other names.
fn variable_index(name: &str) -> Option<std::result::Result<u32, String>> {
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    Some(match digits.parse::<u32>() {
        Ok(0) => Err("variables are numbered from x1".into()),
        Ok(i) => Ok(i),
        Err(_) => Err(format!("variable index {digits} is too large")),
    })
}

pub fn parse_term(text: &str, ctx: Context<'_>) -> Result<Term> {
    let mut p = Parser::new(text, ctx);
    let t = p.term()?;
    if !p.at_end() {
        return Err(p.error("unexpected text after the term"));
    }
    Ok(t)
}

pub fn parse_polynomial(text: &str, field: Field, ctx: Context<'_>) -> Result<Polynomial> {
    let mut p = Parser::new(text, ctx);
    if p.at_end() {
        return Err(p.error("empty polynomial"));
    }
    if text.trim() == "0" {
        return Ok(Polynomial::zero(field));
    }
    let mut out = Polynomial::zero(field);
    p.sum(field, |p| p.term(), |c, t| out.add_term(c, t))?;
    Ok(out)
}

/// A vector written in basis names, e.g. `e11 - 1/2*e22`, or `0`.
pub fn parse_vector(text: &str, field: Field, basis: &[String], source: &str) -> Result<Vector> {
    parse_vector_at(text, field, basis, source, 1, 0)
}

pub(crate) fn parse_vector_at(
    text: &str,
    field: Field,
    basis: &[String],
    source: &str,
    line: usize,
    column_offset: usize,
) -> Result<Vector> {
    let sig = Signature::binary();
    let ctx = Context::new(&sig).with_source(source);
    let mut p = Parser::new(text, ctx);
    p.line = line;
    p.column_offset = column_offset;
    let mut v = vec![field.zero(); basis.len()];
    if p.at_end() {
        return Err(p.error("empty vector"));
    }
    if text.trim() == "0" {
        return Ok(v);
    }
    p.sum(
        field,
        |p| {
            p.skip_ws();
            let start = p.pos;
            let name = p.identifier().ok_or_else(|| p.error("expected a basis name"))?;
            basis
                .iter()
                .position(|b| *b == name)
                .ok_or_else(|| p.error_at(start, format!("unknown basis element {name}")))
        },
        |c, i| {
            let mut e = vec![field.zero(); basis.len()];
            e[i] = field.one();
            add_scaled(&mut v, &c, &e);
        },
    )?;
    Ok(v)
}

/// A sum of basis pairs, e.g. `(d,one) + 2*(one,d)`, or `0`.
pub(crate) fn parse_pairs_at(
    text: &str,
    field: Field,
    names: &[String],
    source: &str,
    line: usize,
    column_offset: usize,
) -> Result<Vec<(usize, usize, Scalar)>> {
    let sig = Signature::binary();
    let ctx = Context::new(&sig).with_source(source);
    let mut p = Parser::new(text, ctx);
    p.line = line;
    p.column_offset = column_offset;
    if p.at_end() {
        return Err(p.error("empty tensor"));
    }
    let mut out: Vec<(usize, usize, Scalar)> = Vec::new();
    if text.trim() == "0" {
        return Ok(out);
    }
    let name = |p: &mut Parser<'_>| -> Result<usize> {
        p.skip_ws();
        let start = p.pos;
        let n = p.identifier().ok_or_else(|| p.error("expected a basis name"))?;
        names.iter().position(|b| *b == n).ok_or_else(|| p.error_at(start, format!("unknown basis element {n}")))
    };
    p.sum(
        field,
        |p| {
            p.expect('(')?;
            let a = name(p)?;
            p.expect(',')?;
            let b = name(p)?;
            p.expect(')')?;
            Ok((a, b))
        },
        |c, (a, b)| match out.iter_mut().find(|(x, y, _)| (*x, *y) == (a, b)) {
            Some(entry) => entry.2 = &entry.2 + &c,
            None => out.push((a, b, c)),
        },
    )?;
    out.retain(|e| !e.2.is_zero());
    Ok(out)
}
