//! Parser for polynomials written in the usual notation: implicit or `*`
//! multiplication, `^` powers, parentheses, unary minus. Variables are a
//! letter followed by digits, optionally with a braced or underscored
//! subscript (`a0`, `b_1`, `a_{2,1}`).

use super::multipoly::MultiPoly;
use crate::error::{Error, Result};
use crate::exactmath::Int;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Num(Int),
    Var(String),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            _ if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' | '\u{00b7}' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::Open);
                i += 1;
            }
            ')' => {
                out.push(Token::Close);
                i += 1;
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Token::Num(digits.parse().expect("digits")));
            }
            _ if c.is_ascii_alphabetic() => {
                let start = i;
                i += 1;
                if i < chars.len() && chars[i] == '_' {
                    i += 1;
                    if i < chars.len() && chars[i] == '{' {
                        while i < chars.len() && chars[i] != '}' {
                            i += 1;
                        }
                        if i == chars.len() {
                            return Err(Error::InvalidInput("unclosed subscript".into()));
                        }
                        i += 1;
                    } else {
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                } else {
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                out.push(Token::Var(chars[start..i].iter().collect()));
            }
            _ => return Err(Error::InvalidInput(format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Token::Plus => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Token::Minus => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut negate = false;
        while let Some(t @ (Token::Plus | Token::Minus)) = self.peek() {
            negate ^= *t == Token::Minus;
            self.pos += 1;
        }
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(Token::Num(_) | Token::Var(_) | Token::Open) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => break,
            }
        }
        Ok(if negate { acc.neg() } else { acc })
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.peek() {
                Some(Token::Num(k)) => {
                    let k: u32 = k
                        .try_into()
                        .map_err(|_| Error::InvalidInput("exponent too large".into()))?;
                    self.pos += 1;
                    return Ok(base.pow(k));
                }
                _ => return Err(Error::InvalidInput("expected an exponent after ^".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| Error::InvalidInput("unexpected end of expression".into()))?;
        self.pos += 1;
        match tok {
            Token::Num(n) => Ok(MultiPoly::constant(self.vars, n)),
            Token::Var(v) => {
                let i = self.vars.iter().position(|w| *w == v).expect("collected");
                Ok(MultiPoly::var(self.vars, i))
            }
            Token::Open => {
                let e = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(Error::InvalidInput("missing closing parenthesis".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            t => Err(Error::InvalidInput(format!("unexpected token {t:?}"))),
        }
    }
}

/// Parses `s` into a polynomial over its variables, sorted by name.
pub fn parse_polynomial(s: &str) -> Result<MultiPoly> {
    let tokens = tokenize(s)?;
    let mut vars: Vec<String> = tokens
        .iter()
        .filter_map(|t| match t {
            Token::Var(v) => Some(v.clone()),
            _ => None,
        })
        .collect();
    vars.sort();
    vars.dedup();
    if tokens.is_empty() {
        return Err(Error::InvalidInput("empty expression".into()));
    }
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
        vars: &vars,
    };
    let out = p.expr()?;
    if p.pos != tokens.len() {
        return Err(Error::InvalidInput(format!(
            "trailing input at token {:?}",
            tokens[p.pos]
        )));
    }
    Ok(out)
}

/// Parses `s` and re-expresses it over `vars`.
pub fn parse_polynomial_over(s: &str, vars: &[String]) -> Result<MultiPoly> {
    parse_polynomial(s)?.embed(vars)
}
