//! Recursive-descent parser for the expression language.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := "-" unary | postfix
//! postfix := atom ("^" "-"? int)?
//! atom    := rational | "pi" | ident
//!          | "sin" "(" expr ")" | "cos" "(" expr ")"
//!          | "sum" "(" ident "=" expr ".." expr "," expr ")"
//!          | "(" expr ")"
//! rational := int ("/" int)?
//! ```
//!
//! Whitespace is insignificant. `^` binds tighter than unary minus, so `-x^2`
//! is `-(x^2)`. The exponent may also be written in parentheses, `x^(-2)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::TrigExpr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct SourceError {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SourceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
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
    Comma,
    Assign,
    DotDot,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Assign => "'='".into(),
            Tok::DotDot => "'..'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

const KEYWORDS: [&str; 4] = ["pi", "sin", "cos", "sum"];

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(Tok, usize)>, SourceError> {
        let mut lx = Lexer {
            src,
            toks: Vec::new(),
        };
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            let start = i;
            if c.is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let tok = if c.is_ascii_digit() {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                Tok::Int(src[start..i].parse().expect("ascii digits"))
            } else if c.is_ascii_alphabetic() || c == b'_' {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                Tok::Ident(src[start..i].to_string())
            } else {
                i += 1;
                match c {
                    b'+' => Tok::Plus,
                    b'-' => Tok::Minus,
                    b'*' => Tok::Star,
                    b'/' => Tok::Slash,
                    b'^' => Tok::Caret,
                    b'(' => Tok::LParen,
                    b')' => Tok::RParen,
                    b',' => Tok::Comma,
                    b'=' => Tok::Assign,
                    b'.' if bytes.get(i) == Some(&b'.') => {
                        i += 1;
                        Tok::DotDot
                    }
                    _ => {
                        let ch = src[start..].chars().next().unwrap_or('?');
                        return Err(error_at(src, start, format!("unexpected character '{ch}'")));
                    }
                }
            };
            lx.toks.push((tok, start));
        }
        lx.toks.push((Tok::End, lx.src.len()));
        Ok(lx.toks)
    }
}

fn error_at(src: &str, offset: usize, message: String) -> SourceError {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.chars().count(), |nl| {
        before[nl + 1..].chars().count()
    }) + 1;
    SourceError {
        offset,
        line,
        column,
        message,
    }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

/// Parses a complete expression.
pub fn parse(text: &str) -> Result<TrigExpr, SourceError> {
    let toks = Lexer::run(text)?;
    let mut p = Parser {
        src: text,
        toks,
        pos: 0,
    };
    let e = p.expr()?;
    p.expect(&Tok::End)?;
    Ok(e)
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, message: String) -> Result<T, SourceError> {
        Err(error_at(self.src, self.offset(), message))
    }

    fn expect(&mut self, want: &Tok) -> Result<(), SourceError> {
        if self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.fail(format!(
                "expected {}, found {}",
                want.describe(),
                self.peek().describe()
            ))
        }
    }

    fn expr(&mut self) -> Result<TrigExpr, SourceError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = lhs + self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    lhs = lhs - self.term()?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<TrigExpr, SourceError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = lhs * self.unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    lhs = lhs / self.unary()?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<TrigExpr, SourceError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<TrigExpr, SourceError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let parenthesized = *self.peek() == Tok::LParen;
        if parenthesized {
            self.bump();
        }
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let at = self.offset();
        let exp = match self.bump() {
            Tok::Int(n) => n,
            other => {
                return Err(error_at(
                    self.src,
                    at,
                    format!("expected integer exponent, found {}", other.describe()),
                ))
            }
        };
        let exp = if negative { -exp } else { exp };
        let exp = exp
            .to_i64()
            .ok_or_else(|| error_at(self.src, at, "exponent out of range".into()))?;
        if parenthesized {
            self.expect(&Tok::RParen)?;
        }
        Ok(TrigExpr::pow(base, exp))
    }

    fn atom(&mut self) -> Result<TrigExpr, SourceError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    if let Tok::Int(d) = self.peek_at(1).clone() {
                        let den_at = self.toks[self.pos + 1].1;
                        self.bump();
                        self.bump();
                        if d.is_zero() {
                            return Err(error_at(self.src, den_at, "zero denominator".into()));
                        }
                        return Ok(TrigExpr::Rational(BigRational::new(n, d)));
                    }
                }
                Ok(TrigExpr::Rational(BigRational::from_integer(n)))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "pi" => Ok(TrigExpr::Pi),
                    "sin" | "cos" => {
                        self.expect(&Tok::LParen)?;
                        let arg = self.expr()?;
                        self.expect(&Tok::RParen)?;
                        Ok(if name == "sin" {
                            TrigExpr::sin(arg)
                        } else {
                            TrigExpr::cos(arg)
                        })
                    }
                    "sum" => self.sum_tail(),
                    _ => Ok(TrigExpr::Var(name)),
                }
            }
            other => Err(error_at(
                self.src,
                at,
                format!("expected an operand, found {}", other.describe()),
            )),
        }
    }

    fn sum_tail(&mut self) -> Result<TrigExpr, SourceError> {
        self.expect(&Tok::LParen)?;
        let at = self.offset();
        let index = match self.bump() {
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => name,
            other => {
                return Err(error_at(
                    self.src,
                    at,
                    format!("expected summation index, found {}", other.describe()),
                ))
            }
        };
        self.expect(&Tok::Assign)?;
        let lower = self.expr()?;
        self.expect(&Tok::DotDot)?;
        let upper = self.expr()?;
        self.expect(&Tok::Comma)?;
        let body = self.expr()?;
        self.expect(&Tok::RParen)?;
        Ok(TrigExpr::sum(&index, lower, upper, body))
    }
}
