//! Expression parser for ring elements and vector fields.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' ['-'] INT)?
//! atom  := NUMBER ['/' NUMBER] ['i'] | 'i' | IDENT | 'd_' IDENT | '(' expr ')'
//! ```

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::coeff::GaussRat;
use crate::ring::{RingSignature, SuperPoly};
use crate::sconf::SVectorField;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        msg: msg.into(),
    })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational, bool),
    Ident(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    let ident_char = |c: char| c.is_ascii_alphanumeric() || c == '_';
    let digits = |k: &mut usize| -> Option<BigInt> {
        let start = *k;
        while *k < chars.len() && chars[*k].is_ascii_digit() {
            *k += 1;
        }
        (start < *k).then(|| chars[start..*k].iter().collect::<String>().parse().unwrap())
    };
    while k < chars.len() {
        let c = chars[k];
        let start = k;
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let num = digits(&mut k).unwrap();
            let mut den = BigInt::one();
            if k < chars.len() && chars[k] == '/' {
                k += 1;
                den = match digits(&mut k) {
                    Some(d) => d,
                    None => return err(k, "expected denominator"),
                };
                if den.is_zero() {
                    return err(start, "zero denominator");
                }
            }
            let mut imag = false;
            if k < chars.len() && chars[k] == 'i' && !(k + 1 < chars.len() && ident_char(chars[k + 1])) {
                imag = true;
                k += 1;
            }
            if k < chars.len() && ident_char(chars[k]) {
                return err(k, "unexpected character after number");
            }
            out.push((start, Tok::Num(BigRational::new(num, den), imag)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            while k < chars.len() && ident_char(chars[k]) {
                k += 1;
            }
            out.push((start, Tok::Ident(chars[start..k].iter().collect())));
        } else if "+-*^()".contains(c) {
            out.push((start, Tok::Op(c)));
            k += 1;
        } else {
            return err(start, format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

/// A parsed value: a ring element or a vector field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Poly(SuperPoly),
    Field(SVectorField),
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    k: usize,
    end: usize,
    sig: &'a Arc<RingSignature>,
}

impl<'a> Parser<'a> {
    fn pos(&self) -> usize {
        self.toks.get(self.k).map_or(self.end, |t| t.0)
    }

    fn peek_op(&self, c: char) -> bool {
        matches!(self.toks.get(self.k), Some((_, Tok::Op(o))) if *o == c)
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.term()?;
        while self.peek_op('+') || self.peek_op('-') {
            let minus = self.peek_op('-');
            let pos = self.pos();
            self.k += 1;
            let rhs = self.term()?;
            let rhs = if minus { negate(rhs) } else { rhs };
            acc = match (acc, rhs) {
                (Value::Poly(a), Value::Poly(b)) => Value::Poly(&a + &b),
                (Value::Field(a), Value::Field(b)) => Value::Field(&a + &b),
                _ => return err(pos, "cannot add a function and a vector field"),
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        while self.peek_op('*') {
            let pos = self.pos();
            self.k += 1;
            let rhs = self.unary()?;
            acc = match (acc, rhs) {
                (Value::Poly(a), Value::Poly(b)) => Value::Poly(&a * &b),
                (Value::Poly(a), Value::Field(b)) => Value::Field(b.mul_left(&a)),
                (Value::Field(_), _) => {
                    return err(pos, "a vector field can only be multiplied from the left")
                }
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        if self.peek_op('-') {
            self.k += 1;
            return Ok(negate(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value, ParseError> {
        let base_pos = self.pos();
        let base = self.atom()?;
        if !self.peek_op('^') {
            return Ok(base);
        }
        self.k += 1;
        let neg = self.peek_op('-');
        if neg {
            self.k += 1;
        }
        let epos = self.pos();
        let e = match self.toks.get(self.k) {
            Some((_, Tok::Num(r, false))) if r.is_integer() => r.to_integer(),
            _ => return err(epos, "expected an integer exponent"),
        };
        self.k += 1;
        let e: i32 = match i32::try_from(e) {
            Ok(e) if e <= 1000 => e,
            _ => return err(epos, "exponent too large"),
        };
        let Value::Poly(p) = base else {
            return err(base_pos, "cannot raise a vector field to a power");
        };
        if neg && !laurent_monomial(&p) {
            return err(epos, "illegal negative exponent");
        }
        let e = if neg { -e } else { e };
        match p.pow(e) {
            Ok(v) => Ok(Value::Poly(v)),
            Err(_) => err(epos, "illegal negative exponent"),
        }
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let pos = self.pos();
        let Some((_, tok)) = self.toks.get(self.k).cloned() else {
            return err(pos, "unexpected end of input");
        };
        self.k += 1;
        match tok {
            Tok::Num(r, imag) => {
                let c = if imag { GaussRat::imag(r) } else { GaussRat::real(r) };
                Ok(Value::Poly(SuperPoly::constant(self.sig, c)))
            }
            Tok::Ident(name) if name == "i" => Ok(Value::Poly(SuperPoly::constant(self.sig, GaussRat::i()))),
            Tok::Ident(name) => {
                if let Some(coord) = name.strip_prefix("d_") {
                    let v = self.sig.lookup(coord).filter(|v| self.sig.coords().contains(v));
                    return match v {
                        Some(v) => Ok(Value::Field(SVectorField::partial(self.sig, v).unwrap())),
                        None => err(pos, format!("unknown coordinate `{coord}`")),
                    };
                }
                match self.sig.lookup(&name) {
                    Some(v) => Ok(Value::Poly(SuperPoly::gen(self.sig, v))),
                    None => err(pos, format!("unknown generator `{name}`")),
                }
            }
            Tok::Op('(') => {
                let v = self.expr()?;
                if !self.peek_op(')') {
                    return err(self.pos(), "expected `)`");
                }
                self.k += 1;
                Ok(v)
            }
            Tok::Op(c) => err(pos, format!("unexpected `{c}`")),
        }
    }
}

/// A single term with no odd factors and negative powers only on Laurent
/// variables.
fn laurent_monomial(p: &SuperPoly) -> bool {
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((m, _)), None) => {
            m.odd == 0
                && m.exps
                    .iter()
                    .zip(p.sig().evens())
                    .all(|(e, v)| *e == 0 || v.laurent)
        }
        _ => false,
    }
}

fn negate(v: Value) -> Value {
    match v {
        Value::Poly(p) => Value::Poly(-&p),
        Value::Field(f) => Value::Field(-&f),
    }
}

pub fn parse(text: &str, sig: &Arc<RingSignature>) -> Result<Value, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        k: 0,
        end: text.chars().count(),
        sig,
    };
    let v = p.expr()?;
    if p.k != p.toks.len() {
        return err(p.pos(), "unexpected trailing input");
    }
    Ok(v)
}

pub fn parse_poly(text: &str, sig: &Arc<RingSignature>) -> Result<SuperPoly, ParseError> {
    match parse(text, sig)? {
        Value::Poly(p) => Ok(p),
        Value::Field(_) => err(0, "expected a function, found a vector field"),
    }
}

/// Parses a vector field; `0` is accepted as the zero field.
pub fn parse_field(text: &str, sig: &Arc<RingSignature>) -> Result<SVectorField, ParseError> {
    match parse(text, sig)? {
        Value::Field(f) => Ok(f),
        Value::Poly(p) if p.is_zero() => Ok(SVectorField::zero(sig)),
        Value::Poly(_) => err(0, "expected a vector field, found a function"),
    }
}

/// Largest `N` with `thN`, `thbN` or `d_thN` in the texts, and largest `K`
/// with `pK`.
pub fn infer_sizes<'a>(texts: impl IntoIterator<Item = &'a str>) -> (usize, usize) {
    let (mut n, mut k) = (0, 0);
    for text in texts {
        let Ok(toks) = lex(text) else { continue };
        for (_, t) in toks {
            let Tok::Ident(name) = t else { continue };
            let name = name.strip_prefix("d_").unwrap_or(&name);
            let idx = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
            if let Some(j) = idx("thb").or_else(|| idx("th")) {
                n = n.max(j);
            } else if let Some(j) = idx("p") {
                k = k.max(j);
            }
        }
    }
    (n, k)
}
