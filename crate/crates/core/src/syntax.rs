//! Types and sequents of the calculus, with a small text syntax.
//!
//! Concrete syntax: primitives are written `p1`, `p2`, ...; `!` is a prefix
//! operator binding tighter than `\`; `\` is right-associative, so `a\b\c`
//! reads as `a\(b\c)`. A sequent is a whitespace- or comma-separated
//! antecedent followed by `->` and the succedent; the antecedent may be empty.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index `i` of the primitive type `p_i`; always at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PrimIndex(u32);

impl PrimIndex {
    pub fn new(index: u32) -> Option<Self> {
        (index >= 1).then_some(PrimIndex(index))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for PrimIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Prim(PrimIndex),
    /// `!A`
    Bang(Box<Type>),
    /// `A\B`, stored as `Div(A, B)`.
    Div(Box<Type>, Box<Type>),
}

impl Type {
    /// Shorthand for `p_i`. Panics if `i == 0`.
    pub fn prim(i: u32) -> Type {
        Type::Prim(PrimIndex::new(i).expect("primitive indices start at 1"))
    }

    pub fn bang(body: Type) -> Type {
        Type::Bang(Box::new(body))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(left: Type, right: Type) -> Type {
        Type::Div(Box::new(left), Box::new(right))
    }

    /// Number of `\` and `!` occurrences.
    pub fn connectives(&self) -> usize {
        match self {
            Type::Prim(_) => 0,
            Type::Bang(a) => 1 + a.connectives(),
            Type::Div(a, b) => 1 + a.connectives() + b.connectives(),
        }
    }

    /// Number of primitive occurrences.
    pub fn prim_count(&self) -> usize {
        match self {
            Type::Prim(_) => 1,
            Type::Bang(a) => a.prim_count(),
            Type::Div(a, b) => a.prim_count() + b.prim_count(),
        }
    }

    pub fn as_prim(&self) -> Option<PrimIndex> {
        match self {
            Type::Prim(p) => Some(*p),
            _ => None,
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Div(..) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Prim(p) => write!(f, "{p}"),
            Type::Bang(a) => {
                f.write_str("!")?;
                a.fmt_operand(f)
            }
            Type::Div(a, b) => {
                a.fmt_operand(f)?;
                write!(f, "\\{b}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub antecedent: Vec<Type>,
    pub succedent: Type,
}

impl Sequent {
    pub fn new(antecedent: Vec<Type>, succedent: Type) -> Self {
        Sequent { antecedent, succedent }
    }

    /// Folds `A1 ... An -> B` into `An\(...\(A1\B)...)`.
    pub fn to_type(&self) -> Type {
        self.antecedent
            .iter()
            .fold(self.succedent.clone(), |acc, a| Type::div(a.clone(), acc))
    }

    /// Total number of connectives in antecedent and succedent.
    pub fn connective_count(&self) -> usize {
        self.antecedent
            .iter()
            .chain(std::iter::once(&self.succedent))
            .map(Type::connectives)
            .sum()
    }

    /// True iff every `!` occurs with negative polarity, i.e. at a position
    /// whose frame depth is odd.
    pub fn bang_polarity_ok(&self) -> bool {
        fn ok(t: &Type, negative: bool) -> bool {
            match t {
                Type::Prim(_) => true,
                Type::Bang(a) => negative && ok(a, negative),
                Type::Div(a, b) => ok(a, !negative) && ok(b, negative),
            }
        }
        self.antecedent.iter().all(|a| ok(a, true)) && ok(&self.succedent, false)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.antecedent {
            write!(f, "{a} ")?;
        }
        write!(f, "-> {}", self.succedent)
    }
}

pub fn sequent_to_type(s: &Sequent) -> Type {
    s.to_type()
}

pub fn connective_count(s: &Sequent) -> usize {
    s.connective_count()
}

pub fn bang_polarity_ok(s: &Sequent) -> bool {
    s.bang_polarity_ok()
}

pub fn print_sequent(s: &Sequent) -> String {
    s.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {pos}: {msg}")]
pub struct ParseError {
    /// 0-based byte offset into the input.
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Prim(u32),
    Bang,
    Backslash,
    LParen,
    RParen,
    Arrow,
    Comma,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
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
            b'!' => Tok::Bang,
            b'\\' => Tok::Backslash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'p' => {
                let digits_start = i + 1;
                let mut j = digits_start;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j == digits_start {
                    return Err(ParseError {
                        pos: start,
                        msg: "expected digits after 'p'".into(),
                    });
                }
                let value: u32 = text[digits_start..j].parse().map_err(|_| ParseError {
                    pos: start,
                    msg: "primitive index out of range".into(),
                })?;
                if value == 0 {
                    return Err(ParseError {
                        pos: start,
                        msg: "primitive indices start at 1".into(),
                    });
                }
                i = j - 1;
                Tok::Prim(value)
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    pos: start,
                    msg: format!("unexpected character {ch:?}"),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).map(|t| t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn starts_type(&self) -> bool {
        matches!(self.peek(), Some(Tok::Prim(_) | Tok::Bang | Tok::LParen))
    }

    // type := unary ('\' type)?
    fn ty(&mut self) -> Result<Type, ParseError> {
        let left = self.unary()?;
        if self.peek() == Some(Tok::Backslash) {
            self.pos += 1;
            let right = self.ty()?;
            Ok(Type::div(left, right))
        } else {
            Ok(left)
        }
    }

    fn unary(&mut self) -> Result<Type, ParseError> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.pos += 1;
                Ok(Type::bang(self.unary()?))
            }
            Some(Tok::Prim(i)) => {
                self.pos += 1;
                Ok(Type::prim(i))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.ty()?;
                if self.peek() != Some(Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(t)
            }
            Some(_) => self.err("expected a type"),
            None => self.err("unexpected end of input, expected a type"),
        }
    }
}

pub fn parse_type(text: &str) -> Result<Type, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let t = p.ty()?;
    if p.peek().is_some() {
        return p.err("trailing input after type");
    }
    Ok(t)
}

pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let mut antecedent = Vec::new();
    loop {
        match p.peek() {
            Some(Tok::Arrow) => {
                p.pos += 1;
                break;
            }
            Some(Tok::Comma) if !antecedent.is_empty() => {
                p.pos += 1;
                if !p.starts_type() {
                    return p.err("expected a type after ','");
                }
            }
            _ if p.starts_type() => antecedent.push(p.ty()?),
            None => return p.err("missing '->'"),
            Some(_) => return p.err("expected a type or '->'"),
        }
    }
    let succedent = p.ty()?;
    if p.peek().is_some() {
        return p.err("trailing input after succedent");
    }
    Ok(Sequent::new(antecedent, succedent))
}

impl std::str::FromStr for Sequent {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sequent(s)
    }
}

impl std::str::FromStr for Type {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_type(s)
    }
}
