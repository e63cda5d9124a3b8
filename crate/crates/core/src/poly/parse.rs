//! Recursive-descent parser for polynomial text.
//!
//! Grammar: integer and rational literals (`a`, `a/b`), variables from a
//! caller-supplied list, `+ - * ^`, parentheses, unary minus. `^` binds
//! tightest, then `*`, then `+`/`-`. Whitespace is insignificant and there is
//! no implicit multiplication.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::poly::multipoly::{Monomial, MultiPoly};
use crate::poly::scalar::{NumberField, Rational, Scalar};

const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Num(text[start..i].parse().unwrap()), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    position: start,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Minus => Err(Error::NegativeExponent { position: pos }),
            Tok::Num(n) => match n.to_u32() {
                Some(e) if e <= MAX_EXPONENT => Ok(base.pow(e)),
                _ => Err(Error::Syntax {
                    position: pos,
                    message: "exponent too large".into(),
                }),
            },
            _ => Err(Error::Syntax {
                position: pos,
                message: "expected an integer exponent".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let nvars = self.vars.len();
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => {
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Tok::Num(d) if d != BigInt::from(0) => {
                            Ok(MultiPoly::constant(nvars, Scalar::Rat(Rational::new(n, d))))
                        }
                        Tok::Num(_) => Err(Error::Syntax {
                            position: dpos,
                            message: "zero denominator".into(),
                        }),
                        _ => Err(Error::Syntax {
                            position: dpos,
                            message: "expected a denominator".into(),
                        }),
                    }
                } else {
                    Ok(MultiPoly::constant(
                        nvars,
                        Scalar::Rat(Rational::from_integer(n)),
                    ))
                }
            }
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(MultiPoly::var(nvars, i)),
                None => Err(Error::UnknownVariable {
                    name,
                    position: pos,
                }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.err("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(Error::Syntax {
                position: pos,
                message: "unexpected end of input".into(),
            }),
            other => Err(Error::Syntax {
                position: pos,
                message: format!("unexpected token {other:?}"),
            }),
        }
    }
}

/// Parse `text` as a polynomial in the listed variables.
pub fn parse_poly(text: &str, vars: &[&str]) -> Result<MultiPoly> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, vars };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

/// Parse over the default variables `X0 … X{nvars-1}`.
pub fn parse_poly_default(text: &str, nvars: usize) -> Result<MultiPoly> {
    let names = crate::poly::multipoly::default_var_names(nvars);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    parse_poly(text, &refs)
}

/// Parse a polynomial whose coefficients may involve the generator `u` of `field`.
pub fn parse_poly_in_field(
    text: &str,
    vars: &[&str],
    field: Option<&Arc<NumberField>>,
) -> Result<MultiPoly> {
    let Some(field) = field else {
        return parse_poly(text, vars);
    };
    let mut ext: Vec<&str> = vars.to_vec();
    ext.push("u");
    let raw = parse_poly(text, &ext)?;
    let n = vars.len();
    let u = field.generator();
    Ok(MultiPoly::from_terms(
        n,
        raw.terms().map(|(m, c)| {
            let e = m.exps();
            (Monomial::new(e[..n].to_vec()), c * &u.pow(e[n]))
        }),
    ))
}

/// Parse a scalar, possibly involving `u` when a field is given.
pub fn parse_scalar(text: &str, field: Option<&Arc<NumberField>>) -> Result<Scalar> {
    let p = parse_poly_in_field(text, &[], field)?;
    Ok(p.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_forms() {
        let p = parse_poly_default("X0^2 + X1^2 - X2^2", 3).unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.homogeneous_degree(), Some(2));
        let q = parse_poly_default("X0^3 - X1*X2^2", 3).unwrap();
        assert_eq!(q.homogeneous_degree(), Some(3));
        assert_eq!(q.to_string(), "X0^3 - X1*X2^2");
    }

    #[test]
    fn cancellation_to_canonical_form() {
        let p = parse_poly_default("2/3*X0 - X1 + X1", 3).unwrap();
        assert_eq!(p.to_string(), "2/3*X0");
    }

    #[test]
    fn precedence_and_unary_minus() {
        let p = parse_poly_default("-X0^2 + 2*-X1 + (X0 + X1)^2", 2).unwrap();
        assert_eq!(p.to_string(), "2*X0*X1 + X1^2 - 2*X1");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_poly_default("X0 + X3", 3),
            Err(Error::UnknownVariable {
                name: "X3".into(),
                position: 5
            })
        );
        assert_eq!(
            parse_poly_default("X0^-2", 3),
            Err(Error::NegativeExponent { position: 3 })
        );
        assert!(matches!(
            parse_poly_default("X0 X1", 3),
            Err(Error::Syntax { position: 3, .. })
        ));
        assert!(matches!(
            parse_poly_default("(X0 + 1", 3),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly_default("1/0", 3),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn extension_coefficients() {
        let k =
            NumberField::from_irreducible(vec![BigInt::from(-2), BigInt::from(0), BigInt::from(1)]);
        let p = parse_poly_in_field("u*X0 + u^2", &["X0"], Some(&k)).unwrap();
        assert_eq!(p.constant_term(), Scalar::from_int(2));
        let printed = p.to_string();
        assert_eq!(printed, "(u)*X0 + 2");
        assert_eq!(parse_poly_in_field(&printed, &["X0"], Some(&k)).unwrap(), p);
    }
}
