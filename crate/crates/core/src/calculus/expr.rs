//! Parser for rational-function expressions.
//!
//! Grammar: integer literals, coordinates `x1..xn`, `+ - * / ^`, and
//! parentheses. Exponents are integers, possibly negative.

use super::ratfun::RatFun;
use crate::error::{Error, Result};
use crate::field::{Field, Q};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Q),
    Var(usize),
    Op(char),
}

fn lex(text: &str, nvars: usize) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let v: num_bigint::BigInt = s.parse().expect("digits");
            out.push((start, Tok::Num(Q::from_integer(v))));
        } else if c == 'x' {
            let start = i;
            i += 1;
            let ds = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[ds..i].iter().collect();
            let k: usize = s
                .parse()
                .map_err(|_| Error::Parse(format!("expected coordinate index after 'x' at {start} in {text:?}")))?;
            if k == 0 || k > nvars {
                return Err(Error::Parse(format!("coordinate x{k} out of range 1..={nvars} in {text:?}")));
            }
            out.push((start, Tok::Var(k - 1)));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} at {i} in {text:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn err(&self, what: &str) -> Error {
        let at = self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.text.len());
        Error::Parse(format!("{what} at {at} in {:?}", self.text))
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFun> {
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

    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                if d.is_zero() {
                    return Err(self.err("division by zero"));
                }
                acc = acc / d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFun> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFun> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let e = match self.peek() {
            Some(Tok::Num(v)) if v.is_integer() => {
                let v = v.to_integer();
                self.pos += 1;
                i64::try_from(v).map_err(|_| self.err("exponent too large"))?
            }
            _ => return Err(self.err("expected integer exponent")),
        };
        if neg && base.is_zero() {
            return Err(self.err("negative power of zero"));
        }
        Ok(base.pow(if neg { -e } else { e }))
    }

    fn atom(&mut self) -> Result<RatFun> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(RatFun::from_q(&v))
            }
            Some(Tok::Var(k)) => {
                self.pos += 1;
                Ok(RatFun::var(k))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            _ => Err(self.err("expected number, coordinate or '('")),
        }
    }
}

/// Parses an expression in the coordinates `x1..x{nvars}`.
pub fn parse_ratfun(text: &str, nvars: usize) -> Result<RatFun> {
    let toks = lex(text, nvars)?;
    let mut p = Parser { toks, pos: 0, text };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}
