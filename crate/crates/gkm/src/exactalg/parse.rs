use num::{BigInt, BigRational, One};
use std::str::FromStr;
use thiserror::Error;

use super::poly::{Monomial, Polynomial};

/// Parses polynomial text such as `2*x^2*y - 1/2*y + 3` against an
/// ordered list of variable names. Multiplication may be written with
/// `*` or by juxtaposition (`2x`, `3x*y`).
pub fn parse_polynomial(text: &str, variables: &[String]) -> Result<Polynomial, PolyParseError> {
    let tokens = tokenize(text, variables)?;
    let mut parser = Parser { tokens, pos: 0, n_vars: variables.len() };
    let poly = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(PolyParseError::TrailingInput);
    }
    Ok(poly)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyParseError {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected exponent after `^`")]
    MissingExponent,
    #[error("unbalanced parentheses")]
    Unbalanced,
    #[error("trailing input after expression")]
    TrailingInput,
    #[error("division is only supported by nonzero constants")]
    DivisionByNonConstant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Number(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str, variables: &[String]) -> Result<Vec<Token>, PolyParseError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' | '−' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '/' => {
                tokens.push(Token::Slash);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '(' => {
                tokens.push(Token::LParen);
                i += 1;
            }
            ')' => {
                tokens.push(Token::RParen);
                i += 1;
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                tokens.push(Token::Number(BigInt::from_str(&digits).unwrap()));
            }
            _ if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                match variables.iter().position(|v| v == &name) {
                    Some(idx) => tokens.push(Token::Var(idx)),
                    None => return Err(PolyParseError::UnknownVariable(name)),
                }
            }
            _ => return Err(PolyParseError::UnexpectedChar(c)),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    n_vars: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<Polynomial, PolyParseError> {
        let mut negate = false;
        if matches!(self.peek(), Some(Token::Minus)) {
            self.pos += 1;
            negate = true;
        } else if matches!(self.peek(), Some(Token::Plus)) {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // product of factors, joined by `*`, `/` (rational constants only
    // end up as exact division), or juxtaposition
    fn term(&mut self) -> Result<Polynomial, PolyParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    // exact division by a nonzero constant
                    let c = constant_of(&f).ok_or(PolyParseError::DivisionByNonConstant)?;
                    acc = acc.scale(&c.recip());
                }
                Some(Token::Number(_)) | Some(Token::Var(_)) | Some(Token::LParen) => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, PolyParseError> {
        let tok = self.peek().cloned().ok_or(PolyParseError::UnexpectedEnd)?;
        let base = match tok {
            Token::Number(n) => {
                self.pos += 1;
                Polynomial::constant(self.n_vars, BigRational::from_integer(n))
            }
            Token::Var(idx) => {
                self.pos += 1;
                Polynomial::var(self.n_vars, idx)
            }
            Token::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                if !matches!(self.peek(), Some(Token::RParen)) {
                    return Err(PolyParseError::Unbalanced);
                }
                self.pos += 1;
                inner
            }
            Token::Minus => {
                self.pos += 1;
                let f = self.factor()?;
                -&f
            }
            _ => return Err(PolyParseError::UnexpectedEnd),
        };
        if matches!(self.peek(), Some(Token::Caret)) {
            self.pos += 1;
            let Some(Token::Number(e)) = self.peek().cloned() else {
                return Err(PolyParseError::MissingExponent);
            };
            self.pos += 1;
            let exp: u32 = e.try_into().map_err(|_| PolyParseError::MissingExponent)?;
            let mut out = Polynomial::constant(self.n_vars, BigRational::one());
            for _ in 0..exp {
                out = &out * &base;
            }
            return Ok(out);
        }
        Ok(base)
    }
}

fn constant_of(p: &Polynomial) -> Option<BigRational> {
    if p.is_zero() {
        return None;
    }
    if p.degree() == Some(0) {
        return Some(p.coefficient(&Monomial::one(p.n_vars())));
    }
    None
}
