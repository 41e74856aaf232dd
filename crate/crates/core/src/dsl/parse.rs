use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::Rat;

/// Untyped expression tree shared by the series and operator languages.
///
/// Literals are always non-negative; a leading minus is a [`Expr::Neg`] node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Lit(Rat),
    Atom(String),
    Call(String, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = text[start..i].parse().expect("digits");
                let mut den = BigInt::from(1);
                if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                    let ds = i + 1;
                    i = ds;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    den = text[ds..i].parse().expect("digits");
                    if den == BigInt::from(0) {
                        return Err(syntax(ds, "zero denominator"));
                    }
                } else if i < bytes.len() && bytes[i] == b'/' {
                    return Err(syntax(i, "expected digits after '/'"));
                }
                out.push((start, Tok::Num(Rat::new(num, den))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(syntax(
                    start,
                    format!("unexpected character {:?}", c as char),
                ))
            }
        }
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
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        let off = self.offset();
        match self.bump() {
            Some(t) if t == tok => Ok(()),
            _ => Err(syntax(off, format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let off = self.offset();
            return match self.bump() {
                Some(Tok::Num(r)) if r.is_integer() => {
                    let e: u32 = r
                        .to_integer()
                        .try_into()
                        .map_err(|_| syntax(off, "exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(syntax(off, "expected a non-negative integer exponent")),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let off = self.offset();
        match self.bump() {
            Some(Tok::Num(r)) => Ok(Expr::Lit(r)),
            Some(Tok::Ident(name)) => {
                if let Some(Tok::LParen) = self.peek() {
                    self.bump();
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Expr::Call(name, Box::new(arg)))
                } else {
                    Ok(Expr::Atom(name))
                }
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(_) => Err(syntax(off, "expected a number, name or '('")),
            None => Err(syntax(off, "unexpected end of input")),
        }
    }
}

/// Parses the shared grammar: `+ -` < `*` < unary `-` < `^`, left associative.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(syntax(p.offset(), "unexpected trailing input"));
    }
    Ok(e)
}

// Precedence levels used by the printer.
const SUM: u8 = 0;
const PRODUCT: u8 = 1;
const UNARY: u8 = 2;
const ATOM: u8 = 3;

impl Expr {
    fn level(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => SUM,
            Expr::Mul(..) => PRODUCT,
            Expr::Neg(..) | Expr::Pow(..) => UNARY,
            Expr::Lit(_) | Expr::Atom(_) | Expr::Call(..) => ATOM,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            write!(f, "(")?;
            self.write_at(f, SUM)?;
            return write!(f, ")");
        }
        match self {
            Expr::Lit(r) => write!(f, "{r}"),
            Expr::Atom(a) => write!(f, "{a}"),
            Expr::Call(name, arg) => {
                write!(f, "{name}(")?;
                arg.write_at(f, SUM)?;
                write!(f, ")")
            }
            Expr::Add(a, b) => {
                a.write_at(f, SUM)?;
                write!(f, " + ")?;
                b.write_at(f, PRODUCT)
            }
            Expr::Sub(a, b) => {
                a.write_at(f, SUM)?;
                write!(f, " - ")?;
                b.write_at(f, PRODUCT)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, PRODUCT)?;
                write!(f, "*")?;
                b.write_at(f, UNARY)
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, UNARY)
            }
            Expr::Pow(a, e) => {
                // a literal base like 1/2 needs parentheses to stay one atom
                let needs = !matches!(**a, Expr::Atom(_) | Expr::Call(..))
                    && !matches!(&**a, Expr::Lit(r) if r.is_integer());
                if needs {
                    write!(f, "(")?;
                    a.write_at(f, SUM)?;
                    write!(f, ")")?;
                } else {
                    a.write_at(f, ATOM)?;
                }
                write!(f, "^{e}")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, SUM)
    }
}
