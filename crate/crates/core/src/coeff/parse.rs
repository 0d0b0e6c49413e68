//! Parser for the polynomial grammar:
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := ident ('^' uint)?
//! coeff  := uint | uint '/' uint      (denominator > 0)
//! ident  := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! Whitespace between tokens is ignored. Positions in errors are byte offsets.

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{Monomial, Poly, Ring};
use super::CoeffError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, CoeffError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(text[start..i].parse().expect("digits"))));
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
                let ch = text[start..].chars().next().expect("in bounds");
                return Err(CoeffError::Syntax { pos: start, msg: format!("unexpected character {ch:?}") });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, CoeffError> {
        Err(CoeffError::Syntax { pos: self.offset(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Poly, CoeffError> {
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            negate = true;
            self.pos += 1;
        }
        let mut acc = self.ring.zero();
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                None => return Ok(acc),
                Some(_) => return self.err("expected '+', '-' or end of input"),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly, CoeffError> {
        let field = self.ring.field();
        let mut coeff = field.one();
        let mut exps = vec![0u32; self.ring.nparams()];
        match self.peek() {
            Some(Tok::Int(_)) => {
                coeff = self.coeff()?;
            }
            Some(Tok::Ident(_)) => self.factor(&mut exps)?,
            _ => return self.err("expected a number or a variable"),
        }
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            match self.peek() {
                Some(Tok::Ident(_)) => self.factor(&mut exps)?,
                Some(Tok::Int(_)) => return self.err("numeric coefficient must come first in a term"),
                _ => return self.err("expected a variable after '*'"),
            }
        }
        Poly::from_terms(self.ring, [(Monomial(exps), coeff)])
    }

    fn coeff(&mut self) -> Result<super::Scalar, CoeffError> {
        let Some(Tok::Int(num)) = self.peek().cloned() else {
            return self.err("expected an integer");
        };
        self.pos += 1;
        if self.peek() != Some(&Tok::Slash) {
            return Ok(self.ring.field().from_bigint(&num));
        }
        self.pos += 1;
        let at = self.offset();
        let Some(Tok::Int(den)) = self.peek().cloned() else {
            return self.err("'/' must be followed by a positive integer");
        };
        if den.is_zero() {
            return Err(CoeffError::Syntax { pos: at, msg: "zero denominator".into() });
        }
        self.pos += 1;
        self.ring.field().from_ratio(&num, &den).map_err(|_| CoeffError::Syntax {
            pos: at,
            msg: format!("denominator {den} is not invertible in {}", self.ring.field()),
        })
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<(), CoeffError> {
        let at = self.offset();
        let Some(Tok::Ident(name)) = self.peek().cloned() else {
            return self.err("expected a variable");
        };
        self.pos += 1;
        let idx = self.ring.param_index(&name).ok_or_else(|| CoeffError::UnknownVariableAt { name: name.clone(), pos: at })?;
        let mut e = 1u32;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let Some(Tok::Int(n)) = self.peek().cloned() else {
                return self.err("'^' must be followed by an unsigned integer");
            };
            e = u32::try_from(n).or_else(|_| self.err("exponent too large"))?;
            self.pos += 1;
        }
        if self.peek() == Some(&Tok::Slash) {
            return self.err("division is only allowed inside a numeric coefficient");
        }
        exps[idx] = exps[idx].checked_add(e).ok_or_else(|| CoeffError::Syntax { pos: at, msg: "exponent overflow".into() })?;
        Ok(())
    }
}

pub fn parse_poly(text: &str, ring: &Ring) -> Result<Poly, CoeffError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(CoeffError::Syntax { pos: 0, msg: "empty expression".into() });
    }
    let mut parser = Parser { toks, pos: 0, end: text.len(), ring };
    parser.expr()
}
