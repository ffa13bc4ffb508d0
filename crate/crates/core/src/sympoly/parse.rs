//! Parser for integer polynomial expressions in `γ` and `β`.
//!
//! Accepts `g`/`γ`/`gamma`, `b`/`β`/`beta`, and `z` (an alias for the first
//! variable, for univariate tables), integer literals, `+ - * ^`, `²`/`³`,
//! parentheses, and implicit multiplication: `g(g-b-1)^2`.

use num_bigint::BigInt;

use super::BivarPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Gamma,
    Beta,
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        match ch {
            c if c.is_whitespace() => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                out.push(Tok::Num(digits.parse().expect("ascii digits")));
            }
            '+' => out.push(Tok::Plus),
            '-' | '−' => out.push(Tok::Minus),
            '*' | '·' => out.push(Tok::Star),
            '^' => out.push(Tok::Caret),
            '²' => out.extend([Tok::Caret, Tok::Num(2.into())]),
            '³' => out.extend([Tok::Caret, Tok::Num(3.into())]),
            '(' => out.push(Tok::Open),
            ')' => out.push(Tok::Close),
            'γ' | 'z' => out.push(Tok::Gamma),
            'β' => out.push(Tok::Beta),
            'g' | 'b' => {
                let word: String = chars[i..].iter().take_while(|c| c.is_ascii_alphabetic()).collect();
                let (tok, len) = match word.as_str() {
                    w if w.starts_with("gamma") => (Tok::Gamma, 5),
                    w if w.starts_with("beta") => (Tok::Beta, 4),
                    _ if ch == 'g' => (Tok::Gamma, 1),
                    _ => (Tok::Beta, 1),
                };
                out.push(tok);
                i += len - 1;
            }
            other => return Err(Error::Parse(format!("unexpected `{other}` in `{src}`"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<BivarPoly> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -self.term()?
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BivarPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Num(_) | Tok::Gamma | Tok::Beta | Tok::Open) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<BivarPoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(k)) => {
                    let e: u32 = k
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    return Ok(base.pow(e));
                }
                other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BivarPoly> {
        match self.next() {
            Some(Tok::Num(k)) => Ok(BivarPoly::constant(k)),
            Some(Tok::Gamma) => Ok(BivarPoly::gamma()),
            Some(Tok::Beta) => Ok(BivarPoly::beta()),
            Some(Tok::Open) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::Close) => Ok(inner),
                    other => Err(Error::Parse(format!("expected `)`, found {other:?}"))),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses and expands an integer polynomial in `γ`, `β`.
pub fn parse_poly(src: &str) -> Result<BivarPoly> {
    let mut parser = Parser {
        toks: tokenize(src)?,
        pos: 0,
    };
    let poly = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{src}`")));
    }
    Ok(poly)
}
