//! Text grammar for polynomials with ℚ(i) coefficients.
//!
//! Integers, rationals `a/b`, the imaginary unit `i`, named variables,
//! `+ - * ^`, parentheses. Juxtaposition multiplies (`2t`, `3/4i`), and `a/b`
//! is a literal that binds tighter than juxtaposition. Whitespace is ignored.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::gaussian::GaussianRational as Gq;
use super::multipoly::MultiPoly;
use super::unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().map(|x| x.1).collect();
            if k < chars.len() && chars[k].1 == '.' {
                return Err(ParseError {
                    position: chars[k].0,
                    message: "decimal literals are not exact; use a/b".into(),
                });
            }
            out.push((pos, Tok::Int(digits.parse().expect("digits"))));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].1.is_alphanumeric() || chars[k].1 == '_') {
                k += 1;
            }
            let word: String = chars[start..k].iter().map(|x| x.1).collect();
            out.push((pos, Tok::Ident(word)));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(ParseError { position: pos, message: format!("unexpected character '{other}'") });
            }
        };
        out.push((pos, tok));
        k += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    vars: &'a [String],
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.pos(), message: message.into() })
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => return self.err("division is only allowed inside rational literals a/b"),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                Ok(self.factor()?.neg())
            }
            Some(Tok::Plus) => {
                self.at += 1;
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                if self.peek() == Some(&Tok::Caret) {
                    self.at += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(n)) => {
                            self.at += 1;
                            let e: u32 = n.try_into().map_err(|_| ParseError {
                                position: self.pos(),
                                message: "exponent too large".into(),
                            })?;
                            Ok(base.pow(e))
                        }
                        _ => self.err("exponent must be a nonnegative integer literal"),
                    }
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        let n = self.vars.len();
        match self.peek().cloned() {
            Some(Tok::Int(num)) => {
                self.at += 1;
                if self.peek() == Some(&Tok::Slash) {
                    self.at += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(den)) if den != BigInt::from(0) => {
                            self.at += 1;
                            Ok(MultiPoly::constant(n, Gq::real(BigRational::new(num, den))))
                        }
                        Some(Tok::Int(_)) => self.err("zero denominator"),
                        _ => self.err("division is only allowed inside rational literals a/b"),
                    }
                } else {
                    Ok(MultiPoly::constant(n, Gq::real(BigRational::from_integer(num))))
                }
            }
            Some(Tok::Ident(name)) => {
                if name == "i" {
                    self.at += 1;
                    return Ok(MultiPoly::constant(n, Gq::i()));
                }
                match self.vars.iter().position(|v| *v == name) {
                    Some(k) => {
                        self.at += 1;
                        Ok(MultiPoly::var(n, k))
                    }
                    None => self.err(format!(
                        "unknown symbol '{name}' (only polynomial expressions in {:?} are accepted)",
                        self.vars
                    )),
                }
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.at += 1;
                Ok(inner)
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial in the given variables.
pub fn parse_multi(text: &str, vars: &[String]) -> Result<MultiPoly, ParseError> {
    if vars.iter().any(|v| v == "i") {
        return Err(ParseError { position: 0, message: "'i' is reserved for the imaginary unit".into() });
    }
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, vars, end: text.len() };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let poly = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(poly)
}

pub fn parse_uni(text: &str, var: &str) -> Result<UniPoly, ParseError> {
    let m = parse_multi(text, &[var.to_string()])?;
    Ok(m.to_uni().expect("one variable"))
}

pub fn parse_constant(text: &str) -> Result<Gq, ParseError> {
    let m = parse_multi(text, &[])?;
    Ok(m.constant_value().expect("no variables"))
}
