//! Surface syntax shared by scalar literals, presentation descriptors and the
//! command line.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | base ('^' exp)?
//! exp    := ['+'|'-'] INT | '(' ['+'|'-'] INT ')'
//! base   := INT | IDENT | '(' expr ')'
//! ```
//!
//! Juxtaposition is not multiplication: `b c` is a syntax error.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

/// Byte offsets into the parsed input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Int(BigInt),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl Expr {
    /// Visits every identifier with its span.
    pub fn for_each_ident<'a>(&'a self, f: &mut impl FnMut(&'a str, Span)) {
        match &self.kind {
            ExprKind::Int(_) => {}
            ExprKind::Ident(name) => f(name, self.span),
            ExprKind::Neg(e) | ExprKind::Pow(e, _) => e.for_each_ident(f),
            ExprKind::Add(a, b)
            | ExprKind::Sub(a, b)
            | ExprKind::Mul(a, b)
            | ExprKind::Div(a, b) => {
                a.for_each_ident(f);
                b.for_each_ident(f);
            }
        }
    }

    /// True when every identifier satisfies `is_scalar`.
    pub fn only_idents(&self, is_scalar: impl Fn(&str) -> bool) -> bool {
        let mut ok = true;
        self.for_each_ident(&mut |name, _| ok &= is_scalar(name));
        ok
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("syntax error at column {}: {message}", .position + 1)]
pub struct SyntaxError {
    /// Byte offset of the offending token.
    pub position: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
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

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
        }
    }
}

fn tokenize(input: &str) -> Result<Vec<(Tok, Span)>, SyntaxError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                Tok::Int(input[start..i].parse().expect("ascii digits"))
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                Tok::Ident(input[start..i].to_string())
            }
            _ => {
                i += 1;
                match c {
                    b'+' => Tok::Plus,
                    b'-' => Tok::Minus,
                    b'*' => Tok::Star,
                    b'/' => Tok::Slash,
                    b'^' => Tok::Caret,
                    b'(' => Tok::LParen,
                    b')' => Tok::RParen,
                    _ => {
                        let ch = input[start..].chars().next().unwrap();
                        return Err(SyntaxError {
                            position: start,
                            message: format!("unexpected character `{ch}`"),
                        });
                    }
                }
            }
        };
        out.push((tok, Span { start, end: i }));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(_, s)| s.start)
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        self.pos += 1;
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            position: self.here(),
            message: message.into(),
        })
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, SyntaxError> {
        match self.peek() {
            Some(t) => self.err(format!("expected {wanted}, found {t}")),
            None => self.err(format!("expected {wanted}, found end of input")),
        }
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = match self.peek() {
            Some(Tok::Minus) => {
                let (_, s) = self.bump();
                let t = self.term()?;
                let span = Span {
                    start: s.start,
                    end: t.span.end,
                };
                Expr {
                    kind: ExprKind::Neg(Box::new(t)),
                    span,
                }
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(Tok::Plus | Tok::Minus) = self.peek() {
            let (op, _) = self.bump();
            let rhs = self.term()?;
            let span = Span {
                start: lhs.span.start,
                end: rhs.span.end,
            };
            let kind = if op == Tok::Plus {
                ExprKind::Add(Box::new(lhs), Box::new(rhs))
            } else {
                ExprKind::Sub(Box::new(lhs), Box::new(rhs))
            };
            lhs = Expr { kind, span };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.factor()?;
        while let Some(Tok::Star | Tok::Slash) = self.peek() {
            let (op, _) = self.bump();
            let rhs = self.factor()?;
            let span = Span {
                start: lhs.span.start,
                end: rhs.span.end,
            };
            let kind = if op == Tok::Star {
                ExprKind::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                ExprKind::Div(Box::new(lhs), Box::new(rhs))
            };
            lhs = Expr { kind, span };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, SyntaxError> {
        if let Some(Tok::Minus) = self.peek() {
            let (_, s) = self.bump();
            let inner = self.factor()?;
            let span = Span {
                start: s.start,
                end: inner.span.end,
            };
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                span,
            });
        }
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let (e, end) = self.exponent()?;
            let span = Span {
                start: base.span.start,
                end,
            };
            return Ok(Expr {
                kind: ExprKind::Pow(Box::new(base), e),
                span,
            });
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<(i64, usize), SyntaxError> {
        let parens = matches!(self.peek(), Some(Tok::LParen));
        if parens {
            self.bump();
        }
        let negative = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        let (value, mut end) = match self.peek() {
            Some(Tok::Int(_)) => {
                let (Tok::Int(n), s) = self.bump() else {
                    unreachable!()
                };
                let Ok(v) = i64::try_from(&n) else {
                    return Err(SyntaxError {
                        position: s.start,
                        message: "exponent too large".into(),
                    });
                };
                (v, s.end)
            }
            _ => return self.unexpected("integer exponent"),
        };
        if parens {
            match self.peek() {
                Some(Tok::RParen) => end = self.bump().1.end,
                _ => return self.unexpected("`)`"),
            }
        }
        Ok((if negative { -value } else { value }, end))
    }

    fn base(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek() {
            Some(Tok::Int(_)) => {
                let (Tok::Int(n), span) = self.bump() else {
                    unreachable!()
                };
                Ok(Expr {
                    kind: ExprKind::Int(n),
                    span,
                })
            }
            Some(Tok::Ident(_)) => {
                let (Tok::Ident(s), span) = self.bump() else {
                    unreachable!()
                };
                Ok(Expr {
                    kind: ExprKind::Ident(s),
                    span,
                })
            }
            Some(Tok::LParen) => {
                let (_, open) = self.bump();
                let mut inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        let (_, close) = self.bump();
                        inner.span = Span {
                            start: open.start,
                            end: close.end,
                        };
                        Ok(inner)
                    }
                    _ => self.unexpected("`)`"),
                }
            }
            _ => self.unexpected("a number, identifier or `(`"),
        }
    }
}

/// Parses a complete expression.
pub fn parse_expr(input: &str) -> Result<Expr, SyntaxError> {
    let toks = tokenize(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        len: input.len(),
    };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.unexpected("operator or end of input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(e: &Expr) -> String {
        match &e.kind {
            ExprKind::Int(n) => n.to_string(),
            ExprKind::Ident(s) => s.clone(),
            ExprKind::Neg(a) => format!("(-{})", shape(a)),
            ExprKind::Add(a, b) => format!("({} + {})", shape(a), shape(b)),
            ExprKind::Sub(a, b) => format!("({} - {})", shape(a), shape(b)),
            ExprKind::Mul(a, b) => format!("({} * {})", shape(a), shape(b)),
            ExprKind::Div(a, b) => format!("({} / {})", shape(a), shape(b)),
            ExprKind::Pow(a, k) => format!("{}^{k}", shape(a)),
        }
    }

    #[test]
    fn precedence() {
        let e = parse_expr("b*c - (q - q^-1)*delta*alpha").unwrap();
        assert_eq!(shape(&e), "((b * c) - (((q - q^-1) * delta) * alpha))");
        let e = parse_expr("-q^2 + 1/2*q").unwrap();
        assert_eq!(shape(&e), "((-q^2) + ((1 / 2) * q))");
    }

    #[test]
    fn parenthesized_exponent() {
        let e = parse_expr("c^(-2)").unwrap();
        assert_eq!(shape(&e), "c^-2");
    }

    #[test]
    fn juxtaposition_rejected() {
        let err = parse_expr("b c").unwrap_err();
        assert_eq!(err.position, 2);
    }

    #[test]
    fn error_positions() {
        assert_eq!(parse_expr("alpha + ").unwrap_err().position, 8);
        assert_eq!(parse_expr("a $ b").unwrap_err().position, 2);
        assert_eq!(parse_expr("(a").unwrap_err().position, 2);
        assert_eq!(parse_expr("").unwrap_err().message, "empty expression");
        assert_eq!(parse_expr("b^x").unwrap_err().position, 2);
    }
}
