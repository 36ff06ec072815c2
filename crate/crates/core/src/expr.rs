//! A small expression language over `x`, `y`, `z` and named rational
//! constants, evaluated straight into exact rational functions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' ['-'] integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactmath::{MultiPoly, Rational, RationalFunction};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && (chars[i] == '.' || chars[i] == 'e' || chars[i] == 'E') {
                return Err(Error::Parse(format!("decimal literals are not accepted (position {i}); write p/q")));
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((start, Token::Int(digits.parse().expect("ascii digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Token::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Token::Op(c)));
            i += 1;
        } else if c == '·' || c == '×' {
            out.push((i, Token::Op('*')));
            i += 1;
        } else if c == '−' {
            out.push((i, Token::Op('-')));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` at position {i}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    constants: &'a BTreeMap<String, Rational>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn here(&self) -> String {
        match self.tokens.get(self.pos) {
            Some((p, _)) => format!("position {p}"),
            None => "end of input".into(),
        }
    }

    fn expr(&mut self) -> Result<RationalFunction> {
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

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let rhs = self.unary()?;
                if rhs.is_zero() {
                    return Err(Error::Parse(format!("division by zero before {}", self.here())));
                }
                acc = (&acc / &rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let Some(Token::Int(n)) = self.peek().cloned() else {
            return Err(Error::Parse(format!("expected an integer exponent at {}", self.here())));
        };
        self.pos += 1;
        let n: i32 = i32::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?;
        let n = if negative { -n } else { n };
        if n < 0 && base.is_zero() {
            return Err(Error::Parse("negative power of zero".into()));
        }
        base.pow(n)
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        let here = self.here();
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(RationalFunction::constant(Rational::from_integer(n)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "x" => Ok(MultiPoly::var(0).into()),
                    "y" => Ok(MultiPoly::var(1).into()),
                    "z" => Ok(MultiPoly::var(2).into()),
                    other => self
                        .constants
                        .get(other)
                        .map(|c| RationalFunction::constant(c.clone()))
                        .ok_or_else(|| Error::Parse(format!("unknown identifier `{other}` at {here}"))),
                }
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse(format!("expected `)` at {}", self.here())));
                }
                Ok(inner)
            }
            _ => Err(Error::Parse(format!("expected a number, identifier or `(` at {here}"))),
        }
    }
}

/// Parses an expression in `x, y, z` and the given named constants.
pub fn parse_expression(src: &str, constants: &BTreeMap<String, Rational>) -> Result<RationalFunction> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut parser = Parser { tokens, pos: 0, constants };
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse(format!("trailing input at {}", parser.here())));
    }
    Ok(value)
}

/// Parses an expression that must reduce to a rational constant.
pub fn parse_constant(src: &str, constants: &BTreeMap<String, Rational>) -> Result<Rational> {
    let value = parse_expression(src, constants)?;
    value
        .as_polynomial()
        .and_then(MultiPoly::as_constant)
        .ok_or_else(|| Error::Parse(format!("`{src}` depends on x, y or z")))
}
