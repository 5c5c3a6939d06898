//! Polynomial text grammar:
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := integer | ident ['^' integer]
//! ```
//!
//! Whitespace between tokens is ignored.

use std::sync::Arc;

use super::{Monomial, Poly, Ring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Int(&'a str),
    Ident(&'a str),
    Plus,
    Minus,
    Star,
    Caret,
}

fn err(col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        col,
        msg: msg.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok<'_>, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let col = i + 1;
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                out.push((Tok::Plus, col));
                i += 1;
            }
            b'-' => {
                out.push((Tok::Minus, col));
                i += 1;
            }
            b'*' => {
                out.push((Tok::Star, col));
                i += 1;
            }
            b'^' => {
                out.push((Tok::Caret, col));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(&text[start..i]), col));
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(&text[start..i]), col));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(err(col, format!("unexpected character `{ch}`")));
            }
        }
    }
    Ok(out)
}

/// Largest total degree accepted for a parsed monomial.
pub const MAX_DEGREE: u32 = 1 << 16;

fn int_mod(ring: &Ring, digits: &str) -> u32 {
    let p = ring.characteristic() as u64;
    digits
        .bytes()
        .fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p) as u32
}

pub(super) fn parse_poly(ring: &Arc<Ring>, text: &str) -> Result<Poly> {
    let toks = tokenize(text)?;
    let end_col = text.len() + 1;
    let mut pos = 0;
    let mut terms: Vec<(Monomial, u32)> = Vec::new();
    let n = ring.nvars();

    if toks.is_empty() {
        return Err(err(1, "empty polynomial"));
    }

    let mut first = true;
    while pos < toks.len() || first {
        let mut sign = 1u32;
        match toks.get(pos) {
            Some((Tok::Plus, _)) => pos += 1,
            Some((Tok::Minus, _)) => {
                sign = ring.neg_coef(1);
                pos += 1;
            }
            Some((_, col)) if !first => return Err(err(*col, "expected `+` or `-`")),
            _ => {}
        }
        first = false;

        let mut coef = sign;
        let mut mono = Monomial::one(n);
        loop {
            match toks.get(pos) {
                Some((Tok::Int(d), _)) => {
                    coef = ring.mul_coef(coef, int_mod(ring, d));
                    pos += 1;
                }
                Some((Tok::Ident(name), col)) => {
                    let idx = ring
                        .var_index(name)
                        .ok_or_else(|| err(*col, format!("unknown variable `{name}`")))?;
                    pos += 1;
                    let mut power = 1u32;
                    if let Some((Tok::Caret, _)) = toks.get(pos) {
                        pos += 1;
                        match toks.get(pos) {
                            Some((Tok::Int(d), col)) => {
                                power = d
                                    .parse()
                                    .map_err(|_| err(*col, format!("exponent `{d}` out of range")))?;
                                pos += 1;
                            }
                            Some((_, col)) => return Err(err(*col, "expected exponent after `^`")),
                            None => return Err(err(end_col, "expected exponent after `^`")),
                        }
                    }
                    if power > MAX_DEGREE || mono.degree() + power > MAX_DEGREE {
                        return Err(err(*col, format!("monomial degree exceeds {MAX_DEGREE}")));
                    }
                    mono = mono.mul(&Monomial::var(n, idx, power));
                }
                Some((_, col)) => return Err(err(*col, "expected a number or variable")),
                None => return Err(err(end_col, "unexpected end of input")),
            }
            match toks.get(pos) {
                Some((Tok::Star, _)) => pos += 1,
                _ => break,
            }
        }
        terms.push((mono, coef));
    }
    Ok(Poly::from_terms(ring, terms))
}
