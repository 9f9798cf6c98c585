//! Parser for U(g) expressions such as `(N^3 + 5*N)/6` or
//! `(e*f + f*e + h^2/2)/4`.
//!
//! Grammar: integer literals, generator names, `I` for the unit, binary
//! `+ - * ·`, unary minus, `^` with a non-negative integer exponent,
//! division by an integer literal only, and parentheses.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::linalg::Rational;

use super::lie::LieAlgebra;
use super::ncpoly::NCPolynomial;
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, AlgebraError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => {
                i += 1;
                continue;
            }
            '+' => out.push((Tok::Plus, col)),
            '-' | '−' => out.push((Tok::Minus, col)),
            '*' | '·' => out.push((Tok::Star, col)),
            '/' => out.push((Tok::Slash, col)),
            '^' => out.push((Tok::Caret, col)),
            '(' => out.push((Tok::LParen, col)),
            ')' => out.push((Tok::RParen, col)),
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Int(s.parse().expect("digits")), col));
                continue;
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Name(chars[start..i].iter().collect()), col));
                continue;
            }
            other => {
                return Err(AlgebraError::Expr {
                    column: col,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
    algebra: &'a LieAlgebra,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, AlgebraError> {
        Err(AlgebraError::Expr {
            column: self.col(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<NCPolynomial, AlgebraError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NCPolynomial, AlgebraError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(n)) if !n.is_zero() => {
                            self.pos += 1;
                            acc = acc.scale(&Rational::new(1.into(), n));
                        }
                        Some(Tok::Int(_)) => return self.err("division by zero"),
                        _ => return self.err("division is only allowed by an integer literal"),
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<NCPolynomial, AlgebraError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<NCPolynomial, AlgebraError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    let Ok(e) = u32::try_from(&n) else {
                        return self.err("exponent too large");
                    };
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected a non-negative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<NCPolynomial, AlgebraError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(NCPolynomial::scalar(Rational::from_integer(n)))
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                match self.algebra.index_of(&name) {
                    Some(i) => Ok(NCPolynomial::generator(i)),
                    None if name == "I" => Ok(NCPolynomial::identity()),
                    None => Err(AlgebraError::UnknownGenerator { name, column: col }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => self.err("expected a number, generator or '('"),
            None => self.err("unexpected end of expression"),
        }
    }
}

/// Parses an element of U(g) over `algebra`. Error columns are 1-based
/// character offsets into `text`.
pub fn parse_expression(text: &str, algebra: &LieAlgebra) -> Result<NCPolynomial, AlgebraError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end_col: text.chars().count() + 1,
        algebra,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}
