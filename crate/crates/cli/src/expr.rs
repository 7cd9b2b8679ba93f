//! Expression parsing and evaluation for the command line.
//!
//! The grammar combines interval literals `[a,b]`, scalar literals, unary
//! minus, parentheses, and the four operators `+ - * /`. A scalar literal
//! `s` stands for the point interval whose bounds are `s` rounded downward
//! and upward, so an unrepresentable scalar still evaluates to an enclosure
//! of its exact value. Every node carries a byte span into the source text
//! so that errors can point at the offending part of the expression.

use core::fmt;

use outward_core::ops::{self, DivOutcome};
use outward_core::text::{parse_number, to_value, NumberParseError, ParsedNumber};
use outward_core::{FpFormat, Interval, InvalidInterval, RoundDir};

/// Half-open byte range into the source expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    fn to(self, other: Span) -> Span {
        Span { start: self.start, end: other.end }
    }
}

/// A parsed expression node.
#[derive(Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Debug)]
pub enum ExprKind {
    /// `[a,b]` with both endpoint literals kept in exact form.
    IntervalLit { lo: ParsedNumber, hi: ParsedNumber },
    /// A bare scalar literal.
    ScalarLit(ParsedNumber),
    /// Unary minus.
    Neg(Box<Expr>),
    /// A binary operation.
    Bin { op: BinOp, lhs: Box<Expr>, rhs: Box<Expr> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A syntax error with the byte offset where parsing stopped.
#[derive(Debug)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at byte {}", self.message, self.offset)
    }
}

/// An error raised while evaluating a parsed expression.
#[derive(Debug)]
pub enum EvalError {
    /// Division by an interval containing zero.
    ZeroDivision { span: Span },
    /// A literal that does not denote a valid interval, such as a `nan`
    /// endpoint or a reversed pair.
    BadInterval { span: Span, reason: InvalidInterval },
}

impl EvalError {
    pub fn span(&self) -> Span {
        match self {
            EvalError::ZeroDivision { span } => *span,
            EvalError::BadInterval { span, .. } => *span,
        }
    }

    pub fn message(&self) -> String {
        match self {
            EvalError::ZeroDivision { .. } => {
                String::from("division by an interval containing zero")
            }
            EvalError::BadInterval { reason, .. } => format!("invalid interval: {reason}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Num(&'a str),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
}

impl Tok<'_> {
    fn describe(self) -> &'static str {
        match self {
            Tok::Num(_) => "a number",
            Tok::LBracket => "`[`",
            Tok::RBracket => "`]`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Comma => "`,`",
            Tok::Plus => "`+`",
            Tok::Minus => "`-`",
            Tok::Star => "`*`",
            Tok::Slash => "`/`",
        }
    }
}

fn lex(input: &str) -> Result<Vec<(Tok<'_>, Span)>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let single = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            _ => None,
        };
        if let Some(tok) = single {
            toks.push((tok, Span { start: i, end: i + 1 }));
            i += 1;
            continue;
        }
        if b.is_ascii_alphanumeric() || b == b'.' {
            let start = i;
            while i < bytes.len() {
                let c = bytes[i];
                if c.is_ascii_alphanumeric() || c == b'.' {
                    i += 1;
                } else if (c == b'+' || c == b'-')
                    && matches!(bytes[i - 1], b'e' | b'E' | b'p' | b'P')
                {
                    // Signed exponent inside a literal, as in 1e-3 or 0x1p+2.
                    i += 1;
                } else {
                    break;
                }
            }
            toks.push((Tok::Num(&input[start..i]), Span { start, end: i }));
            continue;
        }
        let c = input[i..].chars().next().expect("offset is a char boundary");
        return Err(ParseError {
            offset: i,
            message: format!("unexpected character `{c}`"),
        });
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok<'a>, Span)>,
    pos: usize,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<(Tok<'a>, Span)> {
        self.toks.get(self.pos).copied()
    }

    fn expect(&mut self, want: Tok<'a>) -> Result<Span, ParseError> {
        match self.peek() {
            Some((tok, sp)) if tok == want => {
                self.pos += 1;
                Ok(sp)
            }
            Some((tok, sp)) => Err(ParseError {
                offset: sp.start,
                message: format!("expected {}, found {}", want.describe(), tok.describe()),
            }),
            None => Err(ParseError {
                offset: self.len,
                message: format!("expected {}, found end of input", want.describe()),
            }),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while let Some((tok, _)) = self.peek() {
            let op = match tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr {
                kind: ExprKind::Bin { op, lhs: Box::new(lhs), rhs: Box::new(rhs) },
                span,
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while let Some((tok, _)) = self.peek() {
            let op = match tok {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.factor()?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr {
                kind: ExprKind::Bin { op, lhs: Box::new(lhs), rhs: Box::new(rhs) },
                span,
            };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some((Tok::Minus, sp)) => {
                self.pos += 1;
                let inner = self.factor()?;
                let span = sp.to(inner.span);
                Ok(Expr { kind: ExprKind::Neg(Box::new(inner)), span })
            }
            Some((Tok::LParen, lp)) => {
                self.pos += 1;
                let inner = self.expr()?;
                let rp = self.expect(Tok::RParen)?;
                Ok(Expr { kind: inner.kind, span: lp.to(rp) })
            }
            Some((Tok::LBracket, lb)) => {
                self.pos += 1;
                let lo = self.signed_number()?;
                self.expect(Tok::Comma)?;
                let hi = self.signed_number()?;
                let rb = self.expect(Tok::RBracket)?;
                Ok(Expr { kind: ExprKind::IntervalLit { lo, hi }, span: lb.to(rb) })
            }
            Some((Tok::Num(text), sp)) => {
                self.pos += 1;
                let lit = number_at(text, sp)?;
                Ok(Expr { kind: ExprKind::ScalarLit(lit), span: sp })
            }
            Some((tok, sp)) => Err(ParseError {
                offset: sp.start,
                message: format!("expected a value, found {}", tok.describe()),
            }),
            None => Err(ParseError {
                offset: self.len,
                message: String::from("expected a value, found end of input"),
            }),
        }
    }

    /// An interval endpoint: an optional sign followed by a literal. The
    /// sign binds to the literal itself, so `-0.0` keeps its zero sign.
    fn signed_number(&mut self) -> Result<ParsedNumber, ParseError> {
        let negate = match self.peek() {
            Some((Tok::Minus, _)) => {
                self.pos += 1;
                true
            }
            Some((Tok::Plus, _)) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        match self.peek() {
            Some((Tok::Num(text), sp)) => {
                self.pos += 1;
                let mut lit = number_at(text, sp)?;
                lit.negative ^= negate;
                Ok(lit)
            }
            Some((tok, sp)) => Err(ParseError {
                offset: sp.start,
                message: format!("expected a number, found {}", tok.describe()),
            }),
            None => Err(ParseError {
                offset: self.len,
                message: String::from("expected a number, found end of input"),
            }),
        }
    }
}

fn number_at(text: &str, sp: Span) -> Result<ParsedNumber, ParseError> {
    parse_number(text).map_err(|e: NumberParseError| ParseError {
        offset: sp.start,
        message: e.to_string(),
    })
}

/// Parses one expression spanning the whole input.
pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser { toks, pos: 0, len: input.len() };
    if p.peek().is_none() {
        return Err(ParseError { offset: 0, message: String::from("empty expression") });
    }
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some((tok, sp)) => Err(ParseError {
            offset: sp.start,
            message: format!("unexpected {} after the expression", tok.describe()),
        }),
    }
}

/// Materializes endpoint literals into an interval: the lower endpoint
/// rounds downward, the upper upward, and the pair must satisfy the
/// interval validity rules.
fn realize(
    lo: &ParsedNumber,
    hi: &ParsedNumber,
    span: Span,
    fmt: FpFormat,
) -> Result<Interval, EvalError> {
    let lo = to_value(lo, RoundDir::Down, fmt);
    let hi = to_value(hi, RoundDir::Up, fmt);
    Interval::make(lo, hi).map_err(|reason| EvalError::BadInterval { span, reason })
}

/// Evaluates a parsed expression over intervals of the given format.
pub fn eval(expr: &Expr, fmt: FpFormat) -> Result<Interval, EvalError> {
    match &expr.kind {
        ExprKind::ScalarLit(n) => realize(n, n, expr.span, fmt),
        ExprKind::IntervalLit { lo, hi } => realize(lo, hi, expr.span, fmt),
        ExprKind::Neg(inner) => {
            let v = eval(inner, fmt)?;
            Ok(ops::sub(&Interval::zero(fmt), &v))
        }
        ExprKind::Bin { op, lhs, rhs } => {
            let a = eval(lhs, fmt)?;
            let b = eval(rhs, fmt)?;
            match op {
                BinOp::Add => Ok(ops::add(&a, &b)),
                BinOp::Sub => Ok(ops::sub(&a, &b)),
                BinOp::Mul => Ok(ops::mul(&a, &b)),
                BinOp::Div => match ops::div(&a, &b) {
                    DivOutcome::Quotient(q) => Ok(q),
                    DivOutcome::ZeroDivision => {
                        Err(EvalError::ZeroDivision { span: expr.span })
                    }
                },
            }
        }
    }
}
