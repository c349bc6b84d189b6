//! Operator expression language.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | NAME | NAME '(' expr (',' expr)* ')' | SCALAR | '(' expr ')'
//! ```
//!
//! Scalars are non-negative rationals `p` or `p/q` and the names `i`,
//! `sqrt2`, `sqrt3`, `sqrt6`, `kappa1`, `kappa2`.

use std::fmt;

use thiserror::Error;

use crate::exactfield::Rational;
use crate::operators::{BracketKind, OPERATOR_NAMES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarName {
    I,
    Sqrt2,
    Sqrt3,
    Sqrt6,
    Kappa1,
    Kappa2,
}

impl ScalarName {
    pub const ALL: [ScalarName; 6] = [
        Self::I,
        Self::Sqrt2,
        Self::Sqrt3,
        Self::Sqrt6,
        Self::Kappa1,
        Self::Kappa2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::I => "i",
            Self::Sqrt2 => "sqrt2",
            Self::Sqrt3 => "sqrt3",
            Self::Sqrt6 => "sqrt6",
            Self::Kappa1 => "kappa1",
            Self::Kappa2 => "kappa2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|n| n.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Rational(Rational),
    Named(ScalarName),
}

/// Parsed expression; parentheses are kept so rendering is faithful.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Scalar(Scalar),
    Name(String),
    Call(BracketKind, Box<Expr>, Box<Expr>),
    Paren(Box<Expr>),
    Neg(Box<Expr>),
    /// At least two factors.
    Product(Vec<Expr>),
    /// First summand and the signed rest (`true` for minus).
    Sum(Box<Expr>, Vec<(bool, Expr)>),
}

impl Expr {
    /// Number of top-level summands.
    pub fn summands(&self) -> usize {
        match self {
            Expr::Sum(_, rest) => 1 + rest.len(),
            _ => 1,
        }
    }

    /// Every operator name used, in order of appearance.
    pub fn names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Scalar(_) => {}
            Expr::Name(n) => out.push(n),
            Expr::Call(_, a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Expr::Paren(a) | Expr::Neg(a) => a.collect_names(out),
            Expr::Product(v) => v.iter().for_each(|e| e.collect_names(out)),
            Expr::Sum(first, rest) => {
                first.collect_names(out);
                rest.iter().for_each(|(_, e)| e.collect_names(out));
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    /// 1-based character position; input length + 1 for end of input.
    pub position: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Ident(String),
    Int(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Int(s) => write!(f, "'{s}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

/// Tokens with their 1-based start positions.
pub(crate) fn tokenize(input: &str, symbols: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let start = k;
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push((Tok::Ident(chars[start..k].iter().collect()), start + 1));
        } else if c.is_ascii_digit() {
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            out.push((Tok::Int(chars[start..k].iter().collect()), start + 1));
        } else if symbols.contains(c) {
            out.push((Tok::Sym(c), start + 1));
            k += 1;
        } else {
            return Err(ParseError {
                position: start + 1,
                expected: vec!["a name, number or one of ".to_string() + symbols],
                found: format!("'{c}'"),
            });
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

pub(crate) struct Cursor {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Cursor {
    pub(crate) fn new(toks: Vec<(Tok, usize)>) -> Self {
        Self { toks, pos: 0 }
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    pub(crate) fn position(&self) -> usize {
        self.toks[self.pos].1
    }

    pub(crate) fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            position: self.position(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[&format!("'{c}'")]))
        }
    }

    /// `INT` or `INT '/' INT`, the current token being the first integer.
    pub(crate) fn rational(&mut self) -> Result<Rational, ParseError> {
        let Tok::Int(n) = self.bump() else {
            return Err(self.error(&["a number"]));
        };
        let mut text = n;
        if self.eat('/') {
            let p = self.position();
            match self.bump() {
                Tok::Int(d) if d.trim_start_matches('0').is_empty() => {
                    return Err(ParseError {
                        position: p,
                        expected: vec!["a nonzero denominator".into()],
                        found: format!("'{d}'"),
                    })
                }
                Tok::Int(d) => text = format!("{text}/{d}"),
                t => {
                    return Err(ParseError {
                        position: p,
                        expected: vec!["a denominator".into()],
                        found: t.to_string(),
                    })
                }
            }
        }
        Ok(text.parse().expect("digits form a rational"))
    }
}

const FACTOR_START: &[&str] = &["an operator name", "a scalar", "'('", "'-'"];

/// Parses an operator expression; names are checked against the catalogue.
pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let mut c = Cursor::new(tokenize(input, "+-*/(),")?);
    let e = expr(&mut c)?;
    if *c.peek() != Tok::End {
        return Err(c.error(&["'+'", "'-'", "'*'", "end of input"]));
    }
    Ok(e)
}

fn expr(c: &mut Cursor) -> Result<Expr, ParseError> {
    let first = term(c)?;
    let mut rest = Vec::new();
    loop {
        let minus = match c.peek() {
            Tok::Sym('+') => false,
            Tok::Sym('-') => true,
            _ => break,
        };
        c.bump();
        rest.push((minus, term(c)?));
    }
    Ok(if rest.is_empty() {
        first
    } else {
        Expr::Sum(Box::new(first), rest)
    })
}

fn term(c: &mut Cursor) -> Result<Expr, ParseError> {
    let mut factors = vec![factor(c)?];
    while c.eat('*') {
        factors.push(factor(c)?);
    }
    Ok(if factors.len() == 1 {
        factors.pop().unwrap()
    } else {
        Expr::Product(factors)
    })
}

fn factor(c: &mut Cursor) -> Result<Expr, ParseError> {
    match c.peek().clone() {
        Tok::Sym('-') => {
            c.bump();
            Ok(Expr::Neg(Box::new(factor(c)?)))
        }
        Tok::Sym('(') => {
            c.bump();
            let e = expr(c)?;
            c.expect(')')?;
            Ok(Expr::Paren(Box::new(e)))
        }
        Tok::Int(_) => Ok(Expr::Scalar(Scalar::Rational(c.rational()?))),
        Tok::Ident(name) => {
            let at = c.position();
            c.bump();
            if *c.peek() == Tok::Sym('(') {
                let kind = match name.as_str() {
                    "comm" => BracketKind::Commutator,
                    "acomm" => BracketKind::Anticommutator,
                    _ => {
                        return Err(ParseError {
                            position: at,
                            expected: vec!["'comm'".into(), "'acomm'".into()],
                            found: format!("'{name}'"),
                        })
                    }
                };
                c.bump();
                let mut args = vec![expr(c)?];
                loop {
                    let comma = c.position();
                    if !c.eat(',') {
                        break;
                    }
                    args.push(expr(c)?);
                    if args.len() > 2 {
                        return Err(ParseError {
                            position: comma,
                            expected: vec!["')'".into()],
                            found: "a third argument".into(),
                        });
                    }
                }
                if args.len() < 2 {
                    return Err(c.error(&["','"]));
                }
                c.expect(')')?;
                let b = args.pop().unwrap();
                let a = args.pop().unwrap();
                return Ok(Expr::Call(kind, Box::new(a), Box::new(b)));
            }
            if let Some(s) = ScalarName::parse(&name) {
                return Ok(Expr::Scalar(Scalar::Named(s)));
            }
            if OPERATOR_NAMES.contains(&name.as_str()) {
                return Ok(Expr::Name(name));
            }
            Err(ParseError {
                position: at,
                expected: vec![
                    "an operator name".into(),
                    "a scalar".into(),
                    "'comm('".into(),
                    "'acomm('".into(),
                ],
                found: format!("'{name}'"),
            })
        }
        _ => Err(c.error(FACTOR_START)),
    }
}

/// Text that parses back to the same expression.
pub fn render(e: &Expr) -> String {
    match e {
        Expr::Scalar(Scalar::Rational(r)) => r.to_string(),
        Expr::Scalar(Scalar::Named(n)) => n.as_str().to_string(),
        Expr::Name(n) => n.clone(),
        Expr::Call(kind, a, b) => {
            let f = match kind {
                BracketKind::Commutator => "comm",
                BracketKind::Anticommutator => "acomm",
            };
            format!("{f}({}, {})", render(a), render(b))
        }
        Expr::Paren(a) => format!("({})", render(a)),
        Expr::Neg(a) => format!("-{}", render(a)),
        Expr::Product(v) => v.iter().map(render).collect::<Vec<_>>().join("*"),
        Expr::Sum(first, rest) => {
            let mut s = render(first);
            for (minus, t) in rest {
                s.push_str(if *minus { " - " } else { " + " });
                s.push_str(&render(t));
            }
            s
        }
    }
}
