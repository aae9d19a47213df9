//! Polynomial expression grammar:
//!
//! ```text
//! expr     := ('-' | '+')? term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' exponent)?
//! base     := identifier | integer ('/' positive-integer)? | '(' expr ')'
//! ```
//!
//! Whitespace is ignored and there is no implicit multiplication. In Laurent
//! mode one variable may carry a negative exponent, `t^-2` or `t^(-2)`, which
//! is rewritten to a power of its inverse variable.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::monomial::Monomial;
use super::poly::{PolyRing, Polynomial};

/// Exponents above this are rejected as input errors.
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { position: usize, name: String },
    #[error("division at position {position}: only integer literals may be divided (a/b)")]
    Division { position: usize },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
            continue;
        }
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(ParseError::Syntax {
                    position: start,
                    message: format!("unexpected character `{}`", ch),
                });
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
    ring: &'a Arc<PolyRing>,
    /// `(t, tinv)` variable indices in Laurent mode.
    laurent: Option<(usize, usize)>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            position: self.here(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negate = true;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => return Err(ParseError::Division { position: self.here() }),
                Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::LParen) => {
                    return self.syntax("implicit multiplication is not allowed; use `*`")
                }
                _ => return Ok(acc),
            }
        }
    }

    fn small_exponent(&mut self) -> Result<u32, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                let at = self.here();
                self.pos += 1;
                match n.to_u32() {
                    Some(e) if e <= MAX_EXPONENT => Ok(e),
                    _ => Err(ParseError::Syntax {
                        position: at,
                        message: format!("exponent exceeds {}", MAX_EXPONENT),
                    }),
                }
            }
            _ => self.syntax("expected a nonnegative integer exponent"),
        }
    }

    /// Returns the signed exponent; negative values only when allowed.
    fn exponent(&mut self, allow_negative: bool) -> Result<i64, ParseError> {
        match self.peek() {
            Some(Tok::Minus) if allow_negative => {
                self.pos += 1;
                Ok(-(self.small_exponent()? as i64))
            }
            Some(Tok::LParen) if allow_negative => {
                self.pos += 1;
                let neg = if self.peek() == Some(&Tok::Minus) {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                let e = self.small_exponent()? as i64;
                if self.peek() != Some(&Tok::RParen) {
                    return self.syntax("expected `)`");
                }
                self.pos += 1;
                Ok(if neg { -e } else { e })
            }
            Some(Tok::Minus) => self.syntax("negative exponents are not allowed here"),
            _ => Ok(self.small_exponent()? as i64),
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let (base, var) = self.base()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let laurent_var = match (self.laurent, var) {
            (Some((t, tinv)), Some(v)) if v == t => Some(tinv),
            _ => None,
        };
        let e = self.exponent(laurent_var.is_some())?;
        if e >= 0 {
            Ok(base.pow(e as u32))
        } else {
            let tinv = laurent_var.expect("negative exponent only in Laurent mode");
            let n = self.ring.nvars();
            Ok(Polynomial::term(
                self.ring,
                Monomial::var(n, tinv, (-e) as u32),
                self.ring.field().one(),
            ))
        }
    }

    /// The parsed base, plus the variable index when it is a bare identifier.
    fn base(&mut self) -> Result<(Polynomial, Option<usize>), ParseError> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.ring.var_index(&name) {
                    Some(i) => Ok((Polynomial::var(self.ring, i), Some(i))),
                    None => Err(ParseError::UnknownVariable { position: at, name }),
                }
            }
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let field = self.ring.field();
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let dat = self.here();
                    let d = match self.peek().cloned() {
                        Some(Tok::Int(d)) => d,
                        _ => return Err(ParseError::Division { position: dat }),
                    };
                    self.pos += 1;
                    if d.is_zero() || d.is_negative() {
                        return Err(ParseError::Syntax {
                            position: dat,
                            message: "denominator must be a positive integer".into(),
                        });
                    }
                    let c = field.from_ratio(&n, &d).map_err(|e| ParseError::Syntax {
                        position: dat,
                        message: e.to_string(),
                    })?;
                    Ok((Polynomial::constant(self.ring, c), None))
                } else {
                    Ok((Polynomial::constant(self.ring, field.from_bigint(&n)), None))
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.syntax("expected `)`");
                }
                self.pos += 1;
                Ok((inner, None))
            }
            Some(_) => self.syntax("expected a variable, number or `(`"),
            None => self.syntax("unexpected end of input"),
        }
    }
}

fn run(
    text: &str,
    ring: &Arc<PolyRing>,
    laurent: Option<(usize, usize)>,
) -> Result<Polynomial, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        ring,
        laurent,
    };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return p.syntax("unexpected trailing input");
    }
    Ok(out)
}

pub fn parse_polynomial(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial, ParseError> {
    run(text, ring, None)
}

/// Parses with `t^-k` allowed and mapped to `tinv^k`.
pub fn parse_laurent(
    text: &str,
    ring: &Arc<PolyRing>,
    t: usize,
    tinv: usize,
) -> Result<Polynomial, ParseError> {
    run(text, ring, Some((t, tinv)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{Field, MonomialOrder};

    fn qq(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(Field::rationals(), vars, MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn reads_node_relation() {
        let r = qq(&["x", "y"]);
        let p = parse_polynomial("y^2 - x^3 - x^2", &r).unwrap();
        assert_eq!(p.len(), 3);
        assert!(parse_polynomial("0", &r).unwrap().is_zero());
        let q = parse_polynomial("(x+y)^2 - x^2 - 2*x*y", &r).unwrap();
        assert_eq!(q, parse_polynomial("y^2", &r).unwrap());
    }

    #[test]
    fn errors() {
        let r = qq(&["x", "y"]);
        assert!(matches!(
            parse_polynomial("2x", &r),
            Err(ParseError::Syntax { position: 1, .. })
        ));
        assert_eq!(
            parse_polynomial("x + z", &r),
            Err(ParseError::UnknownVariable {
                position: 4,
                name: "z".into()
            })
        );
        assert!(matches!(parse_polynomial("x/2", &r), Err(ParseError::Division { .. })));
        assert!(matches!(parse_polynomial("1/x", &r), Err(ParseError::Division { .. })));
        assert!(parse_polynomial("x^-1", &r).is_err());
        assert!(parse_polynomial("(x", &r).is_err());
        assert!(parse_polynomial("x +", &r).is_err());
        assert!(parse_polynomial("1/0", &r).is_err());
    }

    #[test]
    fn round_trip() {
        let r = qq(&["x", "y"]);
        for s in ["-3/2*x^2*y + x - 1", "7", "-(x - y)^3", "x*y - 1/5"] {
            let p = parse_polynomial(s, &r).unwrap();
            let q = parse_polynomial(&p.to_string(), &r).unwrap();
            assert_eq!(p, q);
            assert_eq!(p.to_string(), q.to_string());
        }
    }

    #[test]
    fn prime_field_literals() {
        let r = PolyRing::new(Field::prime(5).unwrap(), &["x"], MonomialOrder::Grevlex).unwrap();
        let p = parse_polynomial("x - 1/2", &r).unwrap();
        assert_eq!(p.to_string(), "x + 2");
        assert!(parse_polynomial("1/5", &r).is_err());
    }

    #[test]
    fn laurent_mode() {
        let r = qq(&["t", "tinv"]);
        let p = parse_laurent("2*t^-1 + t^(-2) + t^3", &r, 0, 1).unwrap();
        assert_eq!(p.to_string(), "t^3 + tinv^2 + 2*tinv");
    }
}
