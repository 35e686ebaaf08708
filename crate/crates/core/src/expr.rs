//! Class expressions: `a` (α), `b` (β), `g`/`g0`, `g1`, `g2`, `T1`, `T2`,
//! integers, `i`, `+ - * / ^`, parentheses. Insertion lists are comma separated.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::arith::{GaussRational, Rational};
use crate::chow::{orb, HilbClass, OrbClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{msg} at position {pos}")]
pub struct ExprError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(GaussRational),
    Orb(OrbClass),
    Hilb(HilbClass),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(c) => write!(f, "{c}"),
            Value::Orb(x) => write!(f, "{x}"),
            Value::Hilb(x) => write!(f, "{x}"),
        }
    }
}

impl Value {
    /// Reads the value as an orbifold class; scalars become multiples of 1.
    pub fn into_orb(self) -> Option<OrbClass> {
        match self {
            Value::Scalar(c) => Some(OrbClass::one().scale(&c)),
            Value::Orb(x) => Some(x),
            Value::Hilb(_) => None,
        }
    }

    pub fn into_hilb(self) -> Option<HilbClass> {
        match self {
            Value::Scalar(c) => Some(HilbClass::one().scale(&c)),
            Value::Hilb(x) => Some(x),
            Value::Orb(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let text: String = chars[start..k].iter().collect();
            out.push((start, Tok::Num(text.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_alphanumeric() {
                k += 1;
            }
            out.push((start, Tok::Ident(chars[start..k].iter().collect())));
        } else if "+-*/^(),".contains(c) {
            out.push((k, Tok::Sym(c)));
            k += 1;
        } else {
            return Err(ExprError {
                pos: k,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn peek_sym(&self, c: char) -> bool {
        matches!(self.toks.get(self.at), Some((_, Tok::Sym(s))) if *s == c)
    }

    fn list(&mut self) -> Result<Vec<Value>, ExprError> {
        let mut out = vec![self.sum()?];
        while self.peek_sym(',') {
            self.at += 1;
            out.push(self.sum()?);
        }
        if self.at < self.toks.len() {
            return self.err("unexpected token");
        }
        Ok(out)
    }

    fn sum(&mut self) -> Result<Value, ExprError> {
        let mut acc = self.product()?;
        loop {
            let neg = if self.peek_sym('+') {
                false
            } else if self.peek_sym('-') {
                true
            } else {
                return Ok(acc);
            };
            let pos = self.pos();
            self.at += 1;
            let mut rhs = self.product()?;
            if neg {
                rhs = negate(rhs);
            }
            acc = combine(acc, rhs, pos, Op::Add)?;
        }
    }

    fn product(&mut self) -> Result<Value, ExprError> {
        let mut acc = self.unary()?;
        loop {
            let op = if self.peek_sym('*') {
                Op::Mul
            } else if self.peek_sym('/') {
                Op::Div
            } else {
                return Ok(acc);
            };
            let pos = self.pos();
            self.at += 1;
            let rhs = self.unary()?;
            acc = combine(acc, rhs, pos, op)?;
        }
    }

    fn unary(&mut self) -> Result<Value, ExprError> {
        if self.peek_sym('-') {
            self.at += 1;
            return Ok(negate(self.unary()?));
        }
        if self.peek_sym('+') {
            self.at += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value, ExprError> {
        let base = self.atom()?;
        if !self.peek_sym('^') {
            return Ok(base);
        }
        self.at += 1;
        let exp = match self.toks.get(self.at) {
            Some((_, Tok::Num(n))) => u32::try_from(n.clone()).ok(),
            _ => None,
        };
        let Some(exp) = exp.filter(|&e| e <= 64) else {
            return self.err("expected a small nonnegative integer exponent");
        };
        self.at += 1;
        Ok(match base {
            Value::Scalar(c) => Value::Scalar(c.pow(exp)),
            Value::Orb(x) => Value::Orb(x.pow(exp)),
            Value::Hilb(x) => Value::Hilb(x.pow(exp)),
        })
    }

    fn atom(&mut self) -> Result<Value, ExprError> {
        let Some((_, tok)) = self.toks.get(self.at).cloned() else {
            return self.err("unexpected end of input");
        };
        let v = match tok {
            Tok::Num(n) => Value::Scalar(Rational::from_integer(n).into()),
            Tok::Ident(name) => match name.as_str() {
                "i" => Value::Scalar(GaussRational::i()),
                "a" => Value::Orb(OrbClass::basis(orb::ALPHA)),
                "b" => Value::Orb(OrbClass::basis(orb::BETA)),
                "g" | "g0" => Value::Orb(OrbClass::basis(orb::GAMMA0)),
                "g1" => Value::Orb(OrbClass::basis(orb::GAMMA1)),
                "g2" => Value::Orb(OrbClass::basis(orb::GAMMA2)),
                "T1" => Value::Hilb(HilbClass::t1()),
                "T2" => Value::Hilb(HilbClass::t2()),
                _ => return self.err(format!("unknown identifier `{name}`")),
            },
            Tok::Sym('(') => {
                self.at += 1;
                let inner = self.sum()?;
                if !self.peek_sym(')') {
                    return self.err("expected `)`");
                }
                inner
            }
            Tok::Sym(c) => return self.err(format!("unexpected `{c}`")),
        };
        self.at += 1;
        Ok(v)
    }
}

enum Op {
    Add,
    Mul,
    Div,
}

fn negate(v: Value) -> Value {
    let m = -GaussRational::one();
    match v {
        Value::Scalar(c) => Value::Scalar(&c * &m),
        Value::Orb(x) => Value::Orb(x.scale(&m)),
        Value::Hilb(x) => Value::Hilb(x.scale(&m)),
    }
}

fn combine(lhs: Value, rhs: Value, pos: usize, op: Op) -> Result<Value, ExprError> {
    use Value::*;
    let mixed = || ExprError {
        pos,
        msg: "cannot mix orbifold classes (a, b, g, g1, g2) with Hilbert scheme classes (T1, T2)".into(),
    };
    if let Op::Div = op {
        let Scalar(d) = rhs else {
            return Err(ExprError {
                pos,
                msg: "can only divide by a scalar".into(),
            });
        };
        let Some(inv) = d.inv() else {
            return Err(ExprError {
                pos,
                msg: "division by zero".into(),
            });
        };
        return combine(lhs, Scalar(inv), pos, Op::Mul);
    }
    Ok(match (lhs, rhs) {
        (Scalar(x), Scalar(y)) => Scalar(match op {
            Op::Add => &x + &y,
            _ => &x * &y,
        }),
        (Orb(_), Hilb(_)) | (Hilb(_), Orb(_)) => return Err(mixed()),
        (x @ Orb(_), y) | (y, x @ Orb(_)) => {
            let (x, y) = (x.into_orb().ok_or_else(mixed)?, y.into_orb().ok_or_else(mixed)?);
            Orb(match op {
                Op::Add => &x + &y,
                _ => &x * &y,
            })
        }
        (x @ Hilb(_), y) | (y, x @ Hilb(_)) => {
            let (x, y) = (x.into_hilb().ok_or_else(mixed)?, y.into_hilb().ok_or_else(mixed)?);
            Hilb(match op {
                Op::Add => &x + &y,
                _ => &x * &y,
            })
        }
    })
}

/// Parses one expression.
pub fn parse_expr(src: &str) -> Result<Value, ExprError> {
    let mut list = parse_list(src)?;
    if list.len() != 1 {
        return Err(ExprError {
            pos: 0,
            msg: "expected a single expression".into(),
        });
    }
    Ok(list.remove(0))
}

/// Parses a comma-separated list of expressions.
pub fn parse_list(src: &str) -> Result<Vec<Value>, ExprError> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(ExprError {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    Parser {
        toks,
        at: 0,
        end: src.chars().count(),
    }
    .list()
}

/// Parses an insertion list of orbifold classes.
pub fn parse_orb_list(src: &str) -> Result<Vec<OrbClass>, ExprError> {
    parse_list(src)?
        .into_iter()
        .map(|v| {
            v.into_orb().ok_or(ExprError {
                pos: 0,
                msg: "expected orbifold classes (a, b, g, g1, g2)".into(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn parses_insertion_lists() {
        let v = parse_orb_list("a^4, a^2").unwrap();
        assert_eq!(v[0], OrbClass::basis(orb::ALPHA4));
        assert_eq!(v[1], OrbClass::basis(orb::ALPHA2));
        let inc = parse_expr("a^2 - 2*b").unwrap();
        let expected = &OrbClass::basis(orb::ALPHA2) - &OrbClass::basis(orb::BETA).scale(&GaussRational::from_int(2));
        assert_eq!(inc, Value::Orb(expected));
        assert_eq!(
            parse_expr("g*g").unwrap(),
            Value::Orb(&OrbClass::basis(orb::ALPHA2) - &OrbClass::basis(orb::BETA))
        );
        assert_eq!(
            parse_expr("(1/2)*a^4").unwrap(),
            Value::Orb(OrbClass::basis(orb::ALPHA4).scale(&rat(1, 2).into()))
        );
        assert_eq!(
            parse_expr("i*(T2 - T1)").unwrap(),
            Value::Hilb((&HilbClass::t2() - &HilbClass::t1()).scale(&GaussRational::i()))
        );
    }

    #[test]
    fn reports_errors_with_position() {
        let e = parse_expr("a + T1").unwrap_err();
        assert_eq!(e.pos, 2);
        let e = parse_expr("a + q").unwrap_err();
        assert_eq!(e.pos, 4);
        assert!(parse_expr("(a").is_err());
        assert!(parse_expr("a / b").is_err());
        assert!(parse_expr("").is_err());
    }
}
