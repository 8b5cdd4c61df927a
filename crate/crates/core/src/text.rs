//! Canonical text form of polynomials and a small parser for it.
//!
//! A polynomial prints as a sum of fully expanded terms
//! `coefficient*param-factors*phase-factors`, highest monomial first, e.g.
//! `(1/2)*g1^2*q1*p2 - g2*q2`. The parser accepts that form and, more
//! generally, any expression built from `+ - * / ^` and parentheses.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// Renders a sum of `(scalar, factors)` terms in the canonical text form.
pub fn format_terms(terms: impl IntoIterator<Item = (GaussianRational, Vec<String>)>) -> String {
    let mut out = String::new();
    for (k, (c, factors)) in terms.into_iter().enumerate() {
        let complex = !c.is_real() && !c.is_imaginary();
        let negative = !complex && c.is_negative_for_display();
        let mag = if negative { -&c } else { c };
        let body = if complex {
            let mut b = format!("({mag})");
            for f in &factors {
                b.push('*');
                b.push_str(f);
            }
            b
        } else if factors.is_empty() {
            mag.to_string()
        } else {
            let mut parts = Vec::with_capacity(factors.len() + 1);
            let ct = mag.coefficient_text();
            if !ct.is_empty() {
                parts.push(ct);
            }
            parts.extend(factors);
            parts.join("*")
        };
        match (k, negative) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// An algebra the parser can build values in. Multiplication is taken in
/// the order written, so noncommutative algebras parse faithfully.
pub trait TextAlgebra: Sized {
    fn from_scalar(s: GaussianRational) -> Self;
    /// Resolves an identifier other than `i`; `None` if unknown.
    fn variable(name: &str) -> Option<Self>;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn as_scalar(&self) -> Option<GaussianRational>;
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().map(|&(_, c)| c).collect();
            if k < chars.len() && chars[k].1 == '.' {
                return Err(Error::Parse {
                    position: chars[k].0,
                    message: "floating-point literals are not accepted; use p/q".into(),
                });
            }
            out.push((pos, Token::Number(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].1.is_alphanumeric() || chars[k].1 == '_') {
                k += 1;
            }
            out.push((pos, Token::Ident(chars[start..k].iter().map(|&(_, c)| c).collect())));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Token::Op(c)));
            k += 1;
        } else {
            return Err(Error::Parse {
                position: pos,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [(usize, Token)],
    at: usize,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.len, |(p, _)| *p)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos(),
            message: message.into(),
        }
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr<A: TextAlgebra>(&mut self) -> Result<A> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc: A = self.term()?;
        if negate {
            acc = A::from_scalar(GaussianRational::zero()).sub(&acc);
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<A: TextAlgebra>(&mut self) -> Result<A> {
        let mut acc: A = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat('/') {
                let d: A = self.power()?;
                let s = d
                    .as_scalar()
                    .ok_or_else(|| self.err("division by a non-constant"))?;
                let inv = s
                    .checked_inv()
                    .ok_or_else(|| self.err("division by zero"))?;
                acc = acc.mul(&A::from_scalar(inv));
            } else {
                return Ok(acc);
            }
        }
    }

    fn power<A: TextAlgebra>(&mut self) -> Result<A> {
        let base: A = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let exp = match self.peek() {
            Some(Token::Number(n)) => n
                .to_u32()
                .filter(|&e| e <= 64)
                .ok_or_else(|| self.err("exponent out of range"))?,
            _ => return Err(self.err("expected an integer exponent")),
        };
        self.at += 1;
        let mut acc = A::from_scalar(GaussianRational::from_integer(1));
        for _ in 0..exp {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn atom<A: TextAlgebra>(&mut self) -> Result<A> {
        match self.peek().cloned() {
            Some(Token::Number(n)) => {
                self.at += 1;
                Ok(A::from_scalar(GaussianRational::real(n.into())))
            }
            Some(Token::Ident(name)) => {
                if name == "i" {
                    self.at += 1;
                    return Ok(A::from_scalar(GaussianRational::i()));
                }
                let v = A::variable(&name).ok_or_else(|| self.err(format!("unknown variable `{name}`")))?;
                self.at += 1;
                Ok(v)
            }
            Some(Token::Op('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(inner)
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses `src` into the algebra `A`.
pub fn parse<A: TextAlgebra>(src: &str) -> Result<A> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens: &tokens,
        at: 0,
        len: src.len(),
    };
    let v = p.expr()?;
    if p.at != tokens.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_formatting() {
        let half = GaussianRational::from_ratio(1, 2);
        let s = format_terms(vec![
            (half.clone(), vec!["g1^2".into(), "q1".into(), "p2".into()]),
            (-half, vec!["q2".into()]),
            (GaussianRational::from_parts(0, 1, -3, 1), vec!["p1".into()]),
            (GaussianRational::from_parts(1, 1, 1, 1), vec!["p2".into()]),
            (GaussianRational::from_integer(-4), vec![]),
        ]);
        assert_eq!(s, "(1/2)*g1^2*q1*p2 - (1/2)*q2 - (3*i)*p1 + (1+i)*p2 - 4");
        assert_eq!(format_terms(Vec::new()), "0");
    }

    #[test]
    fn rejects_floats() {
        let r: Result<crate::param::ParamPolynomial> = parse("0.5*g1");
        assert!(matches!(r, Err(Error::Parse { .. })));
    }
}
