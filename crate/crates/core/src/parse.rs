//! Text syntax for field elements: arithmetic expressions over ℚ in named
//! generators, e.g. `7*l^4 - 17*l^2 + 12` or `(2*l^2+13)/(l+l^3)`.
//!
//! Supported: integer literals, variables, `+ - * / ^`, parentheses and
//! implicit multiplication (`2l^2`). Exponents are integers; negative ones
//! invert.

use std::sync::Arc;

use thiserror::Error;

use crate::exactfield::{make_real_cos_field, FieldElement, FieldError, NumberField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("parse error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(transparent)]
    Field(#[from] FieldError),
}

type PResult<T> = std::result::Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(num_bigint::BigInt),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> PResult<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let b = src.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let ch = b[i] as char;
        if ch.is_ascii_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let s = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((s, Tok::Num(src[s..i].parse().unwrap())));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let s = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((s, Tok::Ident(src[s..i].to_string())));
        } else if "+-*/^()".contains(ch) {
            out.push((i, Tok::Op(ch)));
            i += 1;
        } else {
            return Err(ParseError::Syntax { pos: i, msg: format!("unexpected character {ch:?}") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    field: &'a Arc<NumberField>,
    vars: &'a [(&'a str, FieldElement)],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError::Syntax { pos: self.here(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> PResult<FieldElement> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<FieldElement> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d)?;
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('('))) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> PResult<FieldElement> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> PResult<FieldElement> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return self.err("expected integer exponent");
        };
        self.pos += 1;
        let Ok(e) = i64::try_from(&n) else {
            return self.err("exponent too large");
        };
        Ok(base.pow(if neg { -e } else { e })?)
    }

    fn atom(&mut self) -> PResult<FieldElement> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(FieldElement::from_rational(self.field, &n.into()))
            }
            Some(Tok::Ident(name)) => {
                let Some((_, v)) = self.vars.iter().find(|(n, _)| *n == name) else {
                    return self.err(format!("unknown variable {name:?}"));
                };
                self.pos += 1;
                Ok(v.clone())
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            _ => self.err("expected a number, variable or '('"),
        }
    }
}

/// Parse `src` into `field`, binding each named variable to an element.
pub fn parse_element(src: &str, field: &Arc<NumberField>, vars: &[(&str, FieldElement)]) -> PResult<FieldElement> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len(), field, vars };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parse an element of `ℚ(λ_q)` with `l` standing for `λ_q = 2cos(π/q)`.
pub fn parse_lambda(src: &str, q: u64) -> PResult<FieldElement> {
    let f = make_real_cos_field(2 * q)?;
    let l = FieldElement::generator(&f);
    parse_element(src, &f, &[("l", l)])
}

/// Split a comma-separated list at top level (commas inside parentheses
/// are kept).
pub fn split_list(src: &str) -> Vec<&str> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, ch) in src.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(src[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(src[start..].trim());
    out.retain(|s| !s.is_empty());
    out
}
