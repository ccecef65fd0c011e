//! Truncated Laurent series in x⁻¹ over the ground field: elements of
//! k((x⁻¹)) known down to a floor exponent.
//!
//! A value stores its nonzero window densely together with `floor`, the
//! lowest exponent of x whose coefficient is known. Everything below the
//! floor is unknown. Products and inverses lower the number of known
//! terms, and the floor is raised accordingly. Laurent polynomials that are
//! known exactly carry the floor [`Laurent::EXACT`].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{GroundField, Scalar};
use crate::poly::{format_terms, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent {
    field: GroundField,
    /// Exponent of `terms[0]`.
    low: i64,
    /// Coefficients of x^low, x^(low+1), ...; first and last entries nonzero.
    terms: Vec<Scalar>,
    floor: i64,
}

impl Laurent {
    /// Floor of a value known exactly (a Laurent polynomial).
    pub const EXACT: i64 = i64::MIN / 4;

    /// Builds Σ terms[i]·x^(low+i), discarding anything below `floor`.
    pub fn new(field: GroundField, low: i64, terms: Vec<Scalar>, floor: i64) -> Self {
        let mut l = Laurent {
            field,
            low,
            terms,
            floor,
        };
        l.normalize();
        l
    }

    pub fn zero(field: GroundField, floor: i64) -> Self {
        Laurent {
            field,
            low: 0,
            terms: Vec::new(),
            floor,
        }
    }

    pub fn one(field: GroundField, floor: i64) -> Self {
        Self::monomial(field.one(), 0, floor)
    }

    /// c·xᵉ
    pub fn monomial(c: Scalar, e: i64, floor: i64) -> Self {
        Self::new(c.field(), e, vec![c], floor)
    }

    /// Builds the Laurent series from (exponent, coefficient) pairs.
    pub fn from_terms(field: GroundField, terms: &[(i64, Scalar)], floor: i64) -> Self {
        if terms.is_empty() {
            return Self::zero(field, floor);
        }
        let lo = terms.iter().map(|(e, _)| *e).min().unwrap();
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut v = vec![field.zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut v[(e - lo) as usize];
            *slot = &*slot + c;
        }
        Self::new(field, lo, v, floor)
    }

    /// A polynomial in x, read as a Laurent series.
    pub fn from_poly(p: &Poly, floor: i64) -> Self {
        Self::new(p.field(), 0, p.coeffs().to_vec(), floor)
    }

    /// An exactly known Laurent polynomial.
    pub fn exact_from_terms(field: GroundField, terms: &[(i64, Scalar)]) -> Self {
        Self::from_terms(field, terms, Self::EXACT)
    }

    pub fn exact_from_poly(p: &Poly) -> Self {
        Self::from_poly(p, Self::EXACT)
    }

    pub fn is_exact(&self) -> bool {
        self.floor <= Self::EXACT / 2
    }

    fn normalize(&mut self) {
        if self.floor <= Self::EXACT / 2 {
            self.floor = Self::EXACT;
        }
        if self.low < self.floor {
            let cut = ((self.floor - self.low) as usize).min(self.terms.len());
            self.terms.drain(..cut);
            self.low = self.floor;
        }
        while self.terms.last().is_some_and(Scalar::is_zero) {
            self.terms.pop();
        }
        let lead = self.terms.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.terms.drain(..lead);
            self.low += lead as i64;
        }
        if self.terms.is_empty() {
            self.low = 0;
        }
    }

    pub fn field(&self) -> GroundField {
        self.field
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    /// Zero at the available precision.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn top(&self) -> Option<i64> {
        (!self.terms.is_empty()).then(|| self.low + self.terms.len() as i64 - 1)
    }

    /// Lowest exponent with a nonzero known coefficient.
    pub fn bottom(&self) -> Option<i64> {
        (!self.terms.is_empty()).then_some(self.low)
    }

    /// Upper bound for the exponents that may be nonzero, counting the
    /// unknown tail below the floor.
    fn top_bound(&self) -> i64 {
        self.top().unwrap_or(self.floor - 1)
    }

    pub fn coeff(&self, e: i64) -> Scalar {
        if e < self.low {
            return self.field.zero();
        }
        self.terms
            .get((e - self.low) as usize)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.terms.last()
    }

    /// Nonzero (exponent, coefficient) pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.terms
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Raises the floor to at least `floor`, forgetting terms below it.
    pub fn with_floor_at_least(&self, floor: i64) -> Self {
        if floor <= self.floor {
            return self.clone();
        }
        Self::new(self.field, self.low, self.terms.clone(), floor)
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &Laurent) -> Laurent {
        self.combine(o, true)
    }

    fn combine(&self, o: &Laurent, negate: bool) -> Laurent {
        let floor = self.floor.max(o.floor);
        if self.is_zero() && o.is_zero() {
            return Laurent::zero(self.field, floor);
        }
        let lo = match (self.bottom(), o.bottom()) {
            (Some(a), Some(b)) => a.min(b),
            (a, b) => a.or(b).unwrap(),
        }
        .max(floor);
        let hi = self.top_bound().max(o.top_bound());
        if hi < lo {
            return Laurent::zero(self.field, floor);
        }
        let terms = (lo..=hi)
            .map(|e| {
                let (a, b) = (self.coeff(e), o.coeff(e));
                if negate {
                    &a - &b
                } else {
                    &a + &b
                }
            })
            .collect();
        Laurent::new(self.field, lo, terms, floor)
    }

    pub fn neg(&self) -> Laurent {
        Laurent {
            field: self.field,
            low: self.low,
            terms: self.terms.iter().map(|c| -c).collect(),
            floor: self.floor,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Laurent {
        Laurent::new(
            self.field,
            self.low,
            self.terms.iter().map(|a| a * c).collect(),
            self.floor,
        )
    }

    /// Multiplies by xᵏ; the floor moves with the terms.
    pub fn shift(&self, k: i64) -> Laurent {
        Laurent {
            field: self.field,
            low: if self.terms.is_empty() { 0 } else { self.low + k },
            terms: self.terms.clone(),
            floor: if self.is_exact() { Self::EXACT } else { self.floor + k },
        }
    }

    /// Product, keeping only exponents known from both factors and never
    /// going below `cap`.
    pub fn mul(&self, o: &Laurent, cap: i64) -> Laurent {
        let floor = if self.is_exact() && o.is_exact() {
            Self::EXACT
        } else {
            (self.floor + o.top_bound())
                .max(o.floor + self.top_bound())
                .max(cap)
        };
        if self.is_zero() || o.is_zero() {
            return Laurent::zero(self.field, floor);
        }
        let lo = (self.low + o.low).max(floor);
        let hi = self.top().unwrap() + o.top().unwrap();
        if hi < lo {
            return Laurent::zero(self.field, floor);
        }
        let mut out = vec![self.field.zero(); (hi - lo + 1) as usize];
        for (i, a) in self.terms.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.low + i as i64;
            // exponents of o that land at or above lo
            let jmin = (lo - ea - o.low).max(0) as usize;
            for (j, b) in o.terms.iter().enumerate().skip(jmin) {
                let slot = &mut out[(ea + o.low + j as i64 - lo) as usize];
                *slot = &*slot + &(a * b);
            }
        }
        Laurent::new(self.field, lo, out, floor)
    }

    /// Multiplicative inverse of a nonzero value, floored at `cap`.
    pub fn inv(&self, cap: i64) -> Result<Laurent> {
        let e = self
            .top()
            .ok_or_else(|| Error::NotAUnit("Laurent coefficient is zero within the window".into()))?;
        let lead_inv = self.leading().unwrap().inv().unwrap();
        if self.is_exact() && self.terms.len() == 1 {
            return Ok(Laurent::monomial(lead_inv, -e, Self::EXACT));
        }
        let floor = (self.floor - 2 * e).max(cap);
        let count = (-e - floor + 1).max(0) as usize;
        let mut w: Vec<Scalar> = Vec::with_capacity(count);
        for k in 0..count {
            if k == 0 {
                w.push(lead_inv.clone());
                continue;
            }
            let mut acc = self.field.zero();
            for j in 1..=k {
                let a = self.coeff(e - j as i64);
                if !a.is_zero() {
                    acc = &acc + &(&a * &w[k - j]);
                }
            }
            w.push(-(&acc * &lead_inv));
        }
        w.reverse();
        Ok(Laurent::new(self.field, -e - count as i64 + 1, w, floor))
    }

    /// Equality of the coefficients both sides know.
    pub fn eq_at(&self, o: &Laurent) -> bool {
        let f = self.floor.max(o.floor);
        let lo = match (self.bottom(), o.bottom()) {
            (Some(a), Some(b)) => a.min(b),
            (a, b) => match a.or(b) {
                Some(v) => v,
                None => return true,
            },
        };
        let hi = self.top_bound().max(o.top_bound());
        (lo.max(f)..=hi).all(|e| self.coeff(e) == o.coeff(e))
    }

    /// True when no positive power of x occurs.
    pub fn has_no_positive_powers(&self) -> bool {
        self.top().is_none_or(|t| t <= 0)
    }

    /// True when no negative power of x occurs and the floor reaches x⁰,
    /// so the value is a known polynomial in x.
    pub fn is_polynomial(&self) -> bool {
        self.bottom().is_none_or(|b| b >= 0) && self.floor <= 0
    }

    /// The part with exponents ≤ 0 and the part with exponents > 0.
    pub fn split_at_zero(&self) -> (Laurent, Laurent) {
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for (e, c) in self.terms() {
            if e <= 0 {
                lo.push((e, c.clone()));
            } else {
                hi.push((e, c.clone()));
            }
        }
        (
            Laurent::from_terms(self.field, &lo, self.floor),
            Laurent::from_terms(self.field, &hi, self.floor),
        )
    }

    pub fn display_in(&self, var: &str) -> String {
        let terms: Vec<(Scalar, String)> = self
            .terms()
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .map(|(e, c)| {
                let mono = match e {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{e}"),
                };
                (c.clone(), mono)
            })
            .collect();
        format_terms(&terms)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            f.write_str(&self.display_in("x"))
        } else {
            write!(f, "{} + O(x^{})", self.display_in("x"), self.floor - 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> GroundField {
        GroundField::Rationals
    }

    fn lau(terms: &[(i64, i64)], floor: i64) -> Laurent {
        let t: Vec<_> = terms.iter().map(|&(e, c)| (e, q().from_i64(c))).collect();
        Laurent::from_terms(q(), &t, floor)
    }

    #[test]
    fn product_tracks_floor() {
        // (x + 1)(x - 1) = x^2 - 1, known down to x^(-10 + 1)
        let a = lau(&[(1, 1), (0, 1)], -10);
        let b = lau(&[(1, 1), (0, -1)], -10);
        let p = a.mul(&b, -10);
        assert_eq!(p.floor(), -9);
        assert_eq!(p.coeff(2), q().one());
        assert_eq!(p.coeff(0), q().from_i64(-1));
        assert!(p.coeff(1).is_zero());
    }

    #[test]
    fn inverse_multiplies_back() {
        let a = lau(&[(2, 2), (1, 3), (-1, 1)], -12);
        let inv = a.inv(-12).unwrap();
        let one = a.mul(&inv, -12);
        assert!(one.eq_at(&Laurent::one(q(), -12)));
        assert!(one.floor() <= -8);
        assert!(Laurent::zero(q(), -5).inv(-5).is_err());
    }

    #[test]
    fn geometric_inverse_of_one_minus_xinv() {
        let a = lau(&[(0, 1), (-1, -1)], -6);
        let inv = a.inv(-6).unwrap();
        for e in -6..=0 {
            assert_eq!(inv.coeff(e), q().one());
        }
    }

    #[test]
    fn split_routes_constants_low() {
        let f = lau(&[(2, 1), (0, 1), (-1, 1)], -8);
        let (p, u) = f.split_at_zero();
        assert!(p.eq_at(&lau(&[(0, 1), (-1, 1)], -8)));
        assert!(u.eq_at(&lau(&[(2, 1)], -8)));
        assert!(p.has_no_positive_powers());
        assert!(u.is_polynomial());
        assert!(p.add(&u).eq_at(&f));
    }

    #[test]
    fn exact_values_stay_exact() {
        let a = Laurent::exact_from_terms(q(), &[(1, q().one()), (-1, q().one())]);
        let p = a.mul(&a, -10);
        assert!(p.is_exact());
        assert_eq!(p.coeff(-2), q().one());
        let m = Laurent::exact_from_terms(q(), &[(3, q().from_i64(2))]);
        assert!(m.inv(-10).unwrap().is_exact());
        let i = a.inv(-10).unwrap();
        assert!(!i.is_exact());
        assert_eq!(i.floor(), -10);
        assert!(a.mul(&i, -10).eq_at(&Laurent::one(q(), Laurent::EXACT)));
    }

    #[test]
    fn terms_below_floor_are_dropped() {
        let f = lau(&[(0, 1), (-3, 5)], -2);
        assert!(f.coeff(-3).is_zero());
        assert_eq!(f.bottom(), Some(0));
    }
}
