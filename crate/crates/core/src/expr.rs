//! A small parser for polynomial expressions in t, x and y, such as
//! `x*(1 + t*x)` or `y^2 - x^2*(1+x)`. Exponents of x may be negative so
//! that Laurent polynomials can be written directly.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{GroundField, Scalar};

/// Exponents of (t, x, y).
pub type Exponents = [i64; 3];

/// A finite sum of monomials tⁱ xʲ yᵏ with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sparse {
    field: GroundField,
    terms: BTreeMap<Exponents, Scalar>,
}

impl Sparse {
    pub fn zero(field: GroundField) -> Self {
        Sparse {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: Scalar, e: Exponents) -> Self {
        let mut s = Self::zero(c.field());
        if !c.is_zero() {
            s.terms.insert(e, c);
        }
        s
    }

    pub fn field(&self) -> GroundField {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Exponents, c: Scalar) {
        let sum = match self.terms.get(&e) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }

    fn add(&self, o: &Sparse) -> Sparse {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    fn neg(&self) -> Sparse {
        Sparse {
            field: self.field,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    fn mul(&self, o: &Sparse) -> Sparse {
        let mut out = Sparse::zero(self.field);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        out
    }

    fn as_monomial(&self) -> Option<(Exponents, &Scalar)> {
        match self.terms.len() {
            1 => self.terms.iter().next().map(|(e, c)| (*e, c)),
            _ => None,
        }
    }

    fn pow(&self, e: i64) -> Result<Sparse> {
        if e < 0 {
            let (m, c) = self
                .as_monomial()
                .ok_or_else(|| Error::Parse("negative powers apply only to monomials".into()))?;
            let inv = c.inv().ok_or_else(|| Error::Parse("division by zero".into()))?;
            let k = -e;
            return Ok(Sparse::monomial(inv.pow(k as u64), [-m[0] * k, -m[1] * k, -m[2] * k]));
        }
        let mut acc = Sparse::constant(self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        Ok(acc)
    }
}

/// Parses an expression over `field`.
pub fn parse_expr(field: GroundField, src: &str) -> Result<Sparse> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        field,
        tokens,
        pos: 0,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("unexpected {:?} in {src:?}", p.tokens[p.pos])));
    }
    Ok(e)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Var(usize),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Num(chars[start..i].iter().collect()));
            }
            't' => {
                out.push(Tok::Var(0));
                i += 1;
            }
            'x' => {
                out.push(Tok::Var(1));
                i += 1;
            }
            'y' => {
                out.push(Tok::Var(2));
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push(Tok::Op(c));
                i += 1;
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?} in {src:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    field: GroundField,
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self, op: char) -> bool {
        self.tokens.get(self.pos) == Some(&Tok::Op(op))
    }

    fn expr(&mut self) -> Result<Sparse> {
        let mut acc = self.term()?;
        loop {
            if self.peek_op('+') {
                self.pos += 1;
                acc = acc.add(&self.term()?);
            } else if self.peek_op('-') {
                self.pos += 1;
                acc = acc.add(&self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.unary()?;
        loop {
            if self.peek_op('*') {
                self.pos += 1;
                acc = acc.mul(&self.unary()?);
            } else if self.peek_op('/') {
                self.pos += 1;
                let d = self.unary()?;
                acc = acc.mul(&d.pow(-1)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Sparse> {
        if self.peek_op('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        if self.peek_op('+') {
            self.pos += 1;
        }
        self.power()
    }

    fn power(&mut self) -> Result<Sparse> {
        let base = self.atom()?;
        if !self.peek_op('^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = self.peek_op('-');
        if neg {
            self.pos += 1;
        }
        let e: i64 = match self.tokens.get(self.pos) {
            Some(Tok::Num(s)) => s.parse().map_err(|_| Error::Parse(format!("exponent {s} too large")))?,
            other => return Err(Error::Parse(format!("expected an exponent, found {other:?}"))),
        };
        self.pos += 1;
        base.pow(if neg { -e } else { e })
    }

    fn atom(&mut self) -> Result<Sparse> {
        let tok = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(s) => Ok(Sparse::constant(self.field.parse(&s)?)),
            Tok::Var(v) => {
                let mut e = [0; 3];
                e[v] = 1;
                Ok(Sparse::monomial(self.field.one(), e))
            }
            Tok::Op('(') => {
                let e = self.expr()?;
                if !self.peek_op(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::Op(c) => Err(Error::Parse(format!("unexpected {c:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products_and_powers() {
        let q = GroundField::Rationals;
        let s = parse_expr(q, "x*(1 + t*x) - 3/2*y^2").unwrap();
        let terms: Vec<(Exponents, String)> = s.terms().map(|(e, c)| (*e, c.to_string())).collect();
        assert_eq!(
            terms,
            vec![([0, 0, 2], "-3/2".into()), ([0, 1, 0], "1".into()), ([1, 2, 0], "1".into())]
        );
        let l = parse_expr(q, "2*x^-2 + (x+1)^2").unwrap();
        assert_eq!(l.terms().count(), 4);
        assert!(parse_expr(q, "(x+1)^-1").is_err());
        assert!(parse_expr(q, "x +").is_err());
        assert!(parse_expr(q, "z").is_err());
    }

    #[test]
    fn prime_field_reduction() {
        let f7 = GroundField::prime(7).unwrap();
        let s = parse_expr(f7, "8*x + 7").unwrap();
        assert_eq!(s, Sparse::monomial(f7.one(), [0, 1, 0]));
    }
}
