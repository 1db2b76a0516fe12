//! Compact line notation for identities, e.g.
//! `s[1]*sb[3] = 8/5*z2^2 - z2*s[2] - z2*sb[2] + z3*s[1] - z3*sb[1] + s[3,1] + sb[1,3]`.
//!
//! `s[..]` is a sum at `z`, `sb[..]` a sum at `-1-z`. The left side is a
//! product of one or more sums; the right side is a signed list of terms,
//! each an optional rational, an optional constant monomial and an optional
//! sum joined by `*`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::constants::{ConstantMonomial, ConstantSymbol};
use crate::error::{HsumError, Result};
use crate::expr::{Expression, SumRef, Term};
use crate::identity::{IdentityRecord, Provenance};
use crate::index::{ArgTag, IndexVector};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "[],*/^=+-".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap_or(c);
            return Err(syntax(i, format!("unexpected character {ch:?}")));
        }
    }
    Ok(out)
}

fn syntax(position: usize, message: impl Into<String>) -> HsumError {
    HsumError::Syntax { position, message: message.into() }
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
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(syntax(self.offset(), format!("expected '{c}'")))
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => Err(syntax(self.offset(), "expected an integer")),
        }
    }

    fn small_int(&mut self) -> Result<i64> {
        let at = self.offset();
        let n = self.int()?;
        i64::try_from(n).map_err(|_| syntax(at, "integer too large"))
    }

    fn is_sum_start(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == "s" || s == "sb")
    }

    fn sumref(&mut self) -> Result<SumRef> {
        let at = self.offset();
        let tag = match self.peek() {
            Some(Tok::Ident(s)) if s == "s" => ArgTag::Z,
            Some(Tok::Ident(s)) if s == "sb" => ArgTag::Refl,
            _ => return Err(syntax(at, "expected s[..] or sb[..]")),
        };
        self.pos += 1;
        self.expect('[')?;
        let mut idx = Vec::new();
        loop {
            let at = self.offset();
            let neg = self.eat('-');
            let v = self.small_int()?;
            let v = if neg { -v } else { v };
            let v = i32::try_from(v).map_err(|_| syntax(at, "index out of range"))?;
            if v == 0 {
                return Err(syntax(at, "indices must be nonzero"));
            }
            idx.push(v);
            if !self.eat(',') {
                break;
            }
        }
        self.expect(']')?;
        let indices = IndexVector::new(idx).map_err(|e| syntax(at, e.to_string()))?;
        Ok(SumRef::new(indices, tag))
    }

    fn product(&mut self) -> Result<Vec<SumRef>> {
        let mut left = vec![self.sumref()?];
        while self.eat('*') {
            left.push(self.sumref()?);
        }
        Ok(left)
    }

    /// One unsigned term: `[rational *] [constmono *] [sumref]`.
    fn term(&mut self) -> Result<Term> {
        let mut coeff = BigRational::one();
        let mut cmono = ConstantMonomial::ONE;
        let mut sum = None;
        let mut have_number = false;
        let mut have_const = false;
        loop {
            let at = self.offset();
            match self.peek() {
                Some(Tok::Int(_)) if !have_number && !have_const => {
                    let num = self.int()?;
                    let den = if self.eat('/') { self.int()? } else { BigInt::one() };
                    if den.is_zero() {
                        return Err(syntax(at, "zero denominator"));
                    }
                    coeff = BigRational::new(num, den);
                    have_number = true;
                }
                Some(Tok::Ident(_)) if self.is_sum_start() => {
                    sum = Some(self.sumref()?);
                    break;
                }
                Some(Tok::Ident(name)) => {
                    let Some(sym) = ConstantSymbol::from_token(name) else {
                        return Err(HsumError::UnknownSymbol { position: at, symbol: name.clone() });
                    };
                    self.pos += 1;
                    let e = if self.eat('^') {
                        let e_at = self.offset();
                        let e = self.small_int()?;
                        u32::try_from(e).ok().filter(|&e| e >= 1).ok_or_else(|| syntax(e_at, "bad exponent"))?
                    } else {
                        1
                    };
                    cmono = cmono.mul(&ConstantMonomial::power(sym, e));
                    have_const = true;
                }
                _ => return Err(syntax(at, "expected a term")),
            }
            if !self.eat('*') {
                break;
            }
        }
        Ok(Term::new(coeff, cmono, sum))
    }

    fn expr(&mut self) -> Result<Expression> {
        if self.peek().is_none() {
            return Err(syntax(self.end, "empty right-hand side"));
        }
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') {
                false
            } else if first {
                false
            } else {
                break;
            };
            let mut t = self.term()?;
            if negative {
                t.coeff = -t.coeff;
            }
            terms.push(t);
            first = false;
        }
        if self.peek().is_some() {
            return Err(syntax(self.offset(), "expected '+' or '-'"));
        }
        Ok(Expression::from_terms(terms))
    }
}

/// Parses one identity line. The record is validated and canonicalized.
pub fn parse_identity(text: &str) -> Result<IdentityRecord> {
    parse_identity_with(text, Provenance::Corpus)
}

pub fn parse_identity_with(text: &str, provenance: Provenance) -> Result<IdentityRecord> {
    let mut p = Parser { toks: lex(text)?, pos: 0, end: text.len() };
    let left = p.product()?;
    p.expect('=')?;
    let right = p.expr()?;
    IdentityRecord::new(left, right, provenance)
}

/// Parses a right-hand side on its own.
pub fn parse_expression(text: &str) -> Result<Expression> {
    let mut p = Parser { toks: lex(text)?, pos: 0, end: text.len() };
    Ok(p.expr()?.canonicalize())
}

/// Parses `s[1,-2]` or `sb[3]`.
pub fn parse_sumref(text: &str) -> Result<SumRef> {
    let mut p = Parser { toks: lex(text)?, pos: 0, end: text.len() };
    let s = p.sumref()?;
    if p.peek().is_some() {
        return Err(syntax(p.offset(), "trailing input"));
    }
    Ok(s)
}

pub fn format_sumref(s: &SumRef) -> String {
    let name = match s.tag {
        ArgTag::Z => "s",
        ArgTag::Refl => "sb",
    };
    format!("{name}[{}]", s.indices)
}

fn format_term_body(t: &Term, mag: &BigRational) -> String {
    let mut parts = Vec::new();
    let bare = t.cmono.is_one() && t.sum.is_none();
    if !mag.is_one() || bare {
        parts.push(mag.to_string());
    }
    if !t.cmono.is_one() {
        parts.push(t.cmono.to_string());
    }
    if let Some(s) = &t.sum {
        parts.push(format_sumref(s));
    }
    parts.join("*")
}

/// Renders an expression in the order it is stored; an empty expression
/// renders as `0`.
pub fn format_expression(e: &Expression) -> String {
    if e.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in e.terms().iter().enumerate() {
        let neg = t.coeff.is_negative();
        let mag = t.coeff.abs();
        match (i, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&format_term_body(t, &mag));
    }
    out
}

pub fn format_left(left: &[SumRef]) -> String {
    left.iter().map(format_sumref).collect::<Vec<_>>().join("*")
}

pub fn format_identity(id: &IdentityRecord) -> String {
    format!("{} = {}", format_left(id.left()), format_expression(id.right()))
}
