//! Text form of scalars: integer-coefficient expressions in `q` with
//! rational exponents, e.g. `(q^2 - 1)/(q - 1)`, `3*q^(1/2) - q^-1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{LaurentPoly, QScalar};
use crate::Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse scalar {input:?}: {reason}")]
pub struct ParseScalarError {
    pub input: String,
    pub reason: String,
}

fn format_exp(e: Q) -> String {
    if e.is_integer() {
        format!("q^{}", e.numer())
    } else {
        format!("q^({}/{})", e.numer(), e.denom())
    }
}

/// Terms in descending exponent order.
pub(crate) fn format_laurent(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let body = if e.is_zero() {
            mag.to_string()
        } else if *e == Q::one() {
            if mag.is_one() {
                "q".to_string()
            } else {
                format!("{mag}*q")
            }
        } else if mag.is_one() {
            format_exp(*e)
        } else {
            format!("{mag}*{}", format_exp(*e))
        };
        out.push_str(&body);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Q,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' | '\n' => {}
            'q' => out.push(Tok::Q),
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            d if d.is_ascii_digit() => {
                let start = i;
                while i + 1 < cs.len() && cs[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let txt: String = cs[start..=i].iter().collect();
                out.push(Tok::Int(txt.parse().map_err(|_| "bad integer".to_string())?));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), String> {
        match self.next() {
            Some(ref x) if *x == t => Ok(()),
            other => Err(format!("expected {t:?}, found {other:?}")),
        }
    }

    fn expr(&mut self) -> Result<QScalar, String> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QScalar, String> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err("division by zero".into());
                    }
                    acc = &acc / &d;
                }
                // implicit product, e.g. `2q^3` or `2(q + 1)`
                Some(Tok::Q) | Some(Tok::LParen) | Some(Tok::Int(_)) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<QScalar, String> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<QScalar, String> {
        let is_q = matches!(self.peek(), Some(Tok::Q));
        let base = self.atom()?;
        if !matches!(self.peek(), Some(Tok::Caret)) {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.exponent()?;
        if is_q {
            Ok(QScalar::q_pow(e))
        } else if e.is_integer() {
            let n: i64 = *e.numer();
            if n < 0 && base.is_zero() {
                return Err("zero to a negative power".into());
            }
            Ok(base.pow(n))
        } else {
            Err("fractional powers are only allowed on q".into())
        }
    }

    fn exponent(&mut self) -> Result<Q, String> {
        let int = |t: Option<Tok>| -> Result<i64, String> {
            match t {
                Some(Tok::Int(n)) => i64::try_from(n).map_err(|_| "exponent too large".to_string()),
                other => Err(format!("expected integer exponent, found {other:?}")),
            }
        };
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(Q::from_integer(-int(self.next())?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let sign = if matches!(self.peek(), Some(Tok::Minus)) {
                    self.pos += 1;
                    -1
                } else {
                    1
                };
                let n = int(self.next())?;
                let d = if matches!(self.peek(), Some(Tok::Slash)) {
                    self.pos += 1;
                    int(self.next())?
                } else {
                    1
                };
                if d == 0 {
                    return Err("zero exponent denominator".into());
                }
                self.expect(Tok::RParen)?;
                Ok(Q::new(sign * n, d))
            }
            _ => Ok(Q::from_integer(int(self.next())?)),
        }
    }

    fn atom(&mut self) -> Result<QScalar, String> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(QScalar::from_laurent(LaurentPoly::constant(n))),
            Some(Tok::Q) => Ok(QScalar::q()),
            Some(Tok::LParen) => {
                let v = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }
}

pub(crate) fn parse_scalar(s: &str) -> Result<QScalar, ParseScalarError> {
    let err = |reason: String| ParseScalarError {
        input: s.to_string(),
        reason,
    };
    let toks = lex(s).map_err(err)?;
    if toks.is_empty() {
        return Err(err("empty input".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr().map_err(err)?;
    if p.pos != p.toks.len() {
        return Err(err(format!("trailing input at token {}", p.pos)));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for s in ["q^2 - 2 + 3*q^(-1/2)", "-q", "7", "(q^2 + 1)/(2*q - 1)", "q^(1/3)"] {
            let v: QScalar = s.parse().unwrap();
            let again: QScalar = v.to_string().parse().unwrap();
            assert_eq!(v, again, "{s}");
        }
    }

    #[test]
    fn display_forms() {
        let v: QScalar = "q^2 - 1".parse().unwrap();
        assert_eq!(v.to_string(), "q^2 - 1");
        let w: QScalar = "1/(q^2 - 1)".parse().unwrap();
        assert_eq!(w.to_string(), "1/(q^2 - 1)");
        assert_eq!(QScalar::zero().to_string(), "0");
    }

    #[test]
    fn rejects_garbage() {
        assert!("q^".parse::<QScalar>().is_err());
        assert!("1/0".parse::<QScalar>().is_err());
        assert!("x".parse::<QScalar>().is_err());
        assert!("2^(1/2)".parse::<QScalar>().is_err());
    }
}
