//! Parser for scalar text: integers, variables, `+ - * / ^` and parentheses.
//! Accepts every canonical string produced by [`Scalar::to_text`].

use num::{BigInt, BigRational};

use super::scalar::Scalar;
use super::var::Var;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = cs[st..i].iter().collect();
            out.push(Tok::Int(
                digits.parse().map_err(|_| Error::Parse(digits.clone()))?,
            ));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
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

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                acc = acc / d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let e = match self.toks.get(self.pos).cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    i64::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?
                }
                Some(Tok::Op('(')) => {
                    self.pos += 1;
                    let neg2 = self.eat('-');
                    let n = match self.toks.get(self.pos).cloned() {
                        Some(Tok::Int(n)) => n,
                        _ => return Err(Error::Parse("expected integer exponent".into())),
                    };
                    self.pos += 1;
                    if !self.eat(')') {
                        return Err(Error::Parse("expected ')'".into()));
                    }
                    let n =
                        i64::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?;
                    if neg2 {
                        -n
                    } else {
                        n
                    }
                }
                _ => return Err(Error::Parse("expected integer exponent".into())),
            };
            let e = if neg { -e } else { e };
            if e < 0 && base.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Scalar::rational(BigRational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let v = Var::parse(&name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                Ok(Scalar::var(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("expected ')'".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_canonical_fractions() {
        let x = parse_scalar("-1/(l1+1)").unwrap();
        assert_eq!(x.to_text(), "-1/(l1+1)");
        let y = parse_scalar("(s^8*t1^2-1)/(s^2)").unwrap();
        assert_eq!(y.to_text(), "(s^8*t1^2-1)/s^2");
        assert_eq!(parse_scalar("2^-1").unwrap().to_text(), "1/2");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_scalar("l9").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("(l1").is_err());
        assert!(parse_scalar("").is_err());
    }
}
