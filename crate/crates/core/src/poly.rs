//! Dense univariate polynomials over a ground field, with the truncated
//! power-series helpers (inverse, square root) used for k[[x]].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{GroundField, Scalar};

/// A polynomial Σ cᵢ xⁱ; the coefficient vector never has trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: GroundField,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: GroundField, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: GroundField) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: GroundField) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(c.field(), vec![c])
    }

    /// c·xᵈ
    pub fn monomial(c: Scalar, d: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); d];
        coeffs.push(c);
        Self::new(field, coeffs)
    }

    pub fn x(field: GroundField) -> Self {
        Self::monomial(field.one(), 1)
    }

    pub fn from_i64s(field: GroundField, cs: &[i64]) -> Self {
        Self::new(field, cs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> GroundField {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by xᵏ.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly {
            field: self.field,
            coeffs,
        }
    }

    /// Drops the terms of degree below `k` and divides by xᵏ.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.field, self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Keeps the terms of degree below `n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.field, self.coeffs.iter().take(n).cloned().collect())
    }

    /// Product truncated below xⁿ.
    pub fn mul_trunc(&self, other: &Poly, n: usize) -> Self {
        if self.is_zero() || other.is_zero() || n == 0 {
            return Self::zero(self.field);
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(n);
        if self.field == GroundField::Rationals {
            return self.mul_trunc_rational(other, len);
        }
        let mut out = vec![self.field.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(self.field, out)
    }

    /// Over ℚ, clears denominators and convolves integers, so each output
    /// coefficient is normalized once instead of after every addition.
    fn mul_trunc_rational(&self, other: &Poly, len: usize) -> Self {
        let (a, da) = integer_parts(&self.coeffs);
        let (b, db) = integer_parts(&other.coeffs);
        let mut out = vec![BigInt::zero(); len];
        for (i, x) in a.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                out[i + j] += x * y;
            }
        }
        let den = da * db;
        let coeffs = out
            .into_iter()
            .map(|c| Scalar::Rat(BigRational::new(c, den.clone())))
            .collect();
        Self::new(self.field, coeffs)
    }

    /// Euclidean division by a nonzero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.coeffs[dd].inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(self.field), self.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] = &rem[k - dd + j] - &(&c * b);
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Poly::new(self.field, quot), Poly::new(self.field, rem))
    }

    /// Inverse in k[[x]] modulo xⁿ; requires a nonzero constant term.
    pub fn inv_trunc(&self, n: usize) -> Result<Poly> {
        let c0 = self.coeff(0);
        let c0_inv = c0
            .inv()
            .ok_or_else(|| Error::NotAUnit("constant term is zero".into()))?;
        let mut out: Vec<Scalar> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                out.push(c0_inv.clone());
                continue;
            }
            let mut acc = self.field.zero();
            for j in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                acc = &acc + &(&self.coeffs[j] * &out[k - j]);
            }
            out.push(-(&acc * &c0_inv));
        }
        Ok(Poly::new(self.field, out))
    }

    /// Evaluates at a ground-field point.
    pub fn eval(&self, at: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    /// Pretty form in the variable `var`, e.g. `2*x^2 - x + 1/3`.
    pub fn display_in(&self, var: &str) -> String {
        let terms: Vec<(Scalar, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{i}"),
                };
                (c.clone(), mono)
            })
            .collect();
        format_terms(&terms)
    }
}

/// Levels of the product of two series whose t-levels are rational
/// polynomials, truncated below tⁿᵗ and, when `x_len` is set, below x^x_len.
/// Each operand is put over one common denominator, so the whole product is
/// an integer convolution. Returns `None` over prime fields.
pub(crate) fn rational_series_product(
    a: &[&Poly],
    b: &[&Poly],
    n_t: usize,
    x_len: Option<usize>,
) -> Option<Vec<Poly>> {
    let field = a.first().or(b.first())?.field;
    if field != GroundField::Rationals {
        return None;
    }
    let (ia, da) = series_integer_parts(a);
    let (ib, db) = series_integer_parts(b);
    let den = da * db;
    let mut out = Vec::with_capacity(n_t);
    for k in 0..n_t {
        let mut acc: Vec<BigInt> = Vec::new();
        for i in 0..=k.min(ia.len().saturating_sub(1)) {
            let Some(y) = ib.get(k - i) else { continue };
            let x = &ia[i];
            if x.is_empty() || y.is_empty() {
                continue;
            }
            let mut len = x.len() + y.len() - 1;
            if let Some(cap) = x_len {
                len = len.min(cap);
            }
            if acc.len() < len {
                acc.resize(len, BigInt::zero());
            }
            for (u, xu) in x.iter().enumerate().take(len) {
                if xu.is_zero() {
                    continue;
                }
                for (v, yv) in y.iter().enumerate().take(len - u) {
                    acc[u + v] += xu * yv;
                }
            }
        }
        let coeffs = acc
            .into_iter()
            .map(|c| Scalar::Rat(BigRational::new(c, den.clone())))
            .collect();
        out.push(Poly::new(field, coeffs));
    }
    Some(out)
}

fn series_integer_parts(levels: &[&Poly]) -> (Vec<Vec<BigInt>>, BigInt) {
    let den = levels
        .iter()
        .flat_map(|l| l.coeffs.iter())
        .fold(BigInt::one(), |acc, c| acc.lcm(rational(c).denom()));
    let nums = levels
        .iter()
        .map(|l| {
            l.coeffs
                .iter()
                .map(|c| {
                    let r = rational(c);
                    r.numer() * (&den / r.denom())
                })
                .collect()
        })
        .collect();
    (nums, den)
}

fn rational(c: &Scalar) -> &BigRational {
    match c {
        Scalar::Rat(r) => r,
        Scalar::Mod { .. } => unreachable!("prime-field scalar in a rational polynomial"),
    }
}

/// Rational coefficients as integers over a common denominator.
fn integer_parts(cs: &[Scalar]) -> (Vec<BigInt>, BigInt) {
    let den = cs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(rational(c).denom()));
    let nums = cs
        .iter()
        .map(|c| {
            let r = rational(c);
            r.numer() * (&den / r.denom())
        })
        .collect();
    (nums, den)
}

/// Joins (coefficient, monomial) pairs into `a + b*m - c*n` form.
pub(crate) fn format_terms(terms: &[(Scalar, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (c, mono)) in terms.iter().enumerate() {
        let s = c.to_string();
        let (neg, mag) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match (mono.is_empty(), mag == "1") {
            (true, _) => out.push_str(&mag),
            (false, true) => out.push_str(mono),
            (false, false) => {
                out.push_str(&mag);
                out.push('*');
                out.push_str(mono);
            }
        }
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(self.field, (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(self.field, (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        self.mul_trunc(rhs, self.coeffs.len() + rhs.coeffs.len())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_recomposes() {
        let q = GroundField::Rationals;
        let f = Poly::from_i64s(q, &[1, 2, 0, 5, 3]);
        let g = Poly::from_i64s(q, &[-1, 0, 2]);
        let (quo, rem) = f.div_rem(&g);
        assert!(rem.degree().unwrap_or(0) < 2);
        assert_eq!(&(&quo * &g) + &rem, f);
    }

    #[test]
    fn truncated_inverse() {
        let q = GroundField::Rationals;
        let f = Poly::from_i64s(q, &[1, 1]);
        let inv = f.inv_trunc(6).unwrap();
        assert_eq!(inv, Poly::from_i64s(q, &[1, -1, 1, -1, 1, -1]));
        assert!(Poly::x(q).inv_trunc(3).is_err());
    }

    #[test]
    fn display() {
        let q = GroundField::Rationals;
        assert_eq!(Poly::from_i64s(q, &[1, -1, 2]).to_string(), "1 - x + 2*x^2");
        assert_eq!(Poly::zero(q).to_string(), "0");
    }
}
