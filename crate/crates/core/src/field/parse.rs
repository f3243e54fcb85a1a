//! Grammar:
//!
//! ```text
//! expr    = term (("+" | "-") term)*
//! term    = unary (("*" | "/") unary)*
//! unary   = "-" unary | power
//! power   = primary ("^" unary)?
//! primary = number | name | name "(" expr ")" | "(" expr ")"
//! number  = digits ["." digits] [("e" | "E") ["+" | "-"] digits]
//! name    = [a-zA-Z_][a-zA-Z0-9_]*
//! ```
//!
//! `t`, `x1`, `x2`, `x3` are coordinates, `sin cos exp sqrt ln` are
//! functions, and every other name is a parameter bound at evaluation.
//! Unary minus binds tighter than `*` and looser than `^`, so `-a*b` is
//! `(-a)*b` and `-a^2` is `-(a^2)`. `^` is right associative.

use thiserror::Error;

use super::expr::{Binary, Expr, Unary, Var};

/// Syntax error at a byte offset into the input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{message} at offset {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: self.pos, message: message.into() })
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.term()?;
        loop {
            let op = match self.peek() {
                Some(b'+') => Binary::Add,
                Some(b'-') => Binary::Sub,
                _ => return Ok(e),
            };
            self.pos += 1;
            let r = self.term()?;
            e = Expr::Binary(op, e.into(), r.into());
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(b'*') => Binary::Mul,
                Some(b'/') => Binary::Div,
                _ => return Ok(e),
            };
            self.pos += 1;
            let r = self.unary()?;
            e = Expr::Binary(op, e.into(), r.into());
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            let a = self.unary()?;
            return Ok(Expr::Unary(Unary::Neg, a.into()));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.eat(b'^') {
            let exp = self.unary()?;
            return Ok(Expr::Binary(Binary::Pow, base.into(), exp.into()));
        }
        Ok(base)
    }

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.pos - start
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        self.digits();
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            if self.digits() == 0 {
                return self.error("expected digits after '.'");
            }
        }
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if self.digits() == 0 {
                return self.error("expected exponent digits");
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Expr::Num(v)),
            _ => Err(ParseError { offset: start, message: format!("bad number {text:?}") }),
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            None => self.error("unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.error("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if self.peek() == Some(b'(') {
                    let Some(op) = Unary::function(name) else {
                        return Err(ParseError { offset: start, message: format!("unknown function {name:?}") });
                    };
                    self.pos += 1;
                    let a = self.expr()?;
                    if !self.eat(b')') {
                        return self.error("expected ')'");
                    }
                    return Ok(Expr::Unary(op, a.into()));
                }
                if Unary::function(name).is_some() {
                    return Err(ParseError { offset: start, message: format!("function {name:?} needs an argument") });
                }
                Ok(match Var::from_name(name) {
                    Some(v) => Expr::Var(v),
                    None => Expr::Param(name.to_string()),
                })
            }
            Some(c) => self.error(format!("unexpected {:?}", c as char)),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    if !text.is_ascii() {
        let offset = text.char_indices().find(|(_, c)| !c.is_ascii()).map_or(0, |(i, _)| i);
        return Err(ParseError { offset, message: "non-ASCII character".into() });
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

impl std::str::FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
