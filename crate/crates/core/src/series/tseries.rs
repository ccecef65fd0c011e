//! The t-graded container shared by T⟨x⟩, T[[x]] and k((x⁻¹))[[t]].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{GroundField, Scalar};
use crate::poly::{format_terms, rational_series_product, Poly};
use crate::precision::Precision;

use super::laurent::Laurent;

/// Coefficient ring of a single t-level.
pub trait Coeff: Clone + fmt::Debug + PartialEq {
    /// Whether a zero coefficient contributes nothing to a product. Inexact
    /// Laurent zeros still carry a floor, which limits what the product knows.
    const ZERO_IS_EXACT: bool = true;

    fn zero(field: GroundField, prec: &Precision) -> Self;
    fn constant(c: Scalar, prec: &Precision) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Scalar) -> Self;
    fn mul(&self, o: &Self, prec: &Precision) -> Self;
    /// Zero at the available precision.
    fn is_zero(&self) -> bool;
    /// Inverse in the coefficient ring; the error names the failed predicate.
    fn inv(&self, prec: &Precision) -> Result<Self>;
    fn eq_at(&self, o: &Self) -> bool;
    /// Forgets whatever lies beyond `prec`.
    fn restrict(&self, prec: &Precision) -> Self;
    /// (coefficient, monomial in x) pairs for display.
    fn display_terms(&self) -> Vec<(Scalar, String)>;
    /// Levels of the product of two level sequences below tⁿᵗ, when the
    /// ring has a faster route than the generic level-by-level loop.
    fn series_product(_a: &[Self], _b: &[Self], _n_t: usize, _prec: &Precision) -> Option<Vec<Self>> {
        None
    }
}

fn x_mono(e: i64) -> String {
    match e {
        0 => String::new(),
        1 => "x".into(),
        _ => format!("x^{e}"),
    }
}

impl Coeff for Poly {
    fn zero(field: GroundField, _: &Precision) -> Self {
        Poly::zero(field)
    }
    fn constant(c: Scalar, _: &Precision) -> Self {
        Poly::constant(c)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Scalar) -> Self {
        Poly::scale(self, c)
    }
    fn mul(&self, o: &Self, _: &Precision) -> Self {
        self * o
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn inv(&self, _: &Precision) -> Result<Self> {
        match (self.is_constant(), self.coeff(0).inv()) {
            (true, Some(c)) => Ok(Poly::constant(c)),
            _ => Err(Error::NotAUnit(
                "the t-constant coefficient must be a nonzero constant polynomial".into(),
            )),
        }
    }
    fn eq_at(&self, o: &Self) -> bool {
        self == o
    }
    fn restrict(&self, _: &Precision) -> Self {
        self.clone()
    }
    fn series_product(a: &[Self], b: &[Self], n_t: usize, _: &Precision) -> Option<Vec<Self>> {
        let a: Vec<&Poly> = a.iter().collect();
        let b: Vec<&Poly> = b.iter().collect();
        rational_series_product(&a, &b, n_t, None)
    }
    fn display_terms(&self) -> Vec<(Scalar, String)> {
        self.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (c.clone(), x_mono(j as i64)))
            .collect()
    }
}

/// A power series in x known modulo xⁿ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncPoly {
    poly: Poly,
    n: usize,
}

impl TruncPoly {
    pub fn new(poly: Poly, n: usize) -> Self {
        TruncPoly {
            poly: poly.truncate(n),
            n,
        }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

impl Coeff for TruncPoly {
    fn zero(field: GroundField, prec: &Precision) -> Self {
        TruncPoly::new(Poly::zero(field), prec.n_x)
    }
    fn constant(c: Scalar, prec: &Precision) -> Self {
        TruncPoly::new(Poly::constant(c), prec.n_x)
    }
    fn add(&self, o: &Self) -> Self {
        TruncPoly::new(&self.poly + &o.poly, self.n.min(o.n))
    }
    fn sub(&self, o: &Self) -> Self {
        TruncPoly::new(&self.poly - &o.poly, self.n.min(o.n))
    }
    fn neg(&self) -> Self {
        TruncPoly::new(-&self.poly, self.n)
    }
    fn scale(&self, c: &Scalar) -> Self {
        TruncPoly::new(self.poly.scale(c), self.n)
    }
    fn mul(&self, o: &Self, prec: &Precision) -> Self {
        let n = self.n.min(o.n).min(prec.n_x);
        TruncPoly::new(self.poly.mul_trunc(&o.poly, n), n)
    }
    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
    fn inv(&self, prec: &Precision) -> Result<Self> {
        let n = self.n.min(prec.n_x);
        let p = self
            .poly
            .inv_trunc(n)
            .map_err(|_| Error::NotAUnit("the coefficient of x^0 t^0 must be nonzero".into()))?;
        Ok(TruncPoly::new(p, n))
    }
    fn eq_at(&self, o: &Self) -> bool {
        let n = self.n.min(o.n);
        self.poly.truncate(n) == o.poly.truncate(n)
    }
    fn restrict(&self, prec: &Precision) -> Self {
        TruncPoly::new(self.poly.clone(), self.n.min(prec.n_x))
    }
    fn series_product(a: &[Self], b: &[Self], n_t: usize, prec: &Precision) -> Option<Vec<Self>> {
        let pa: Vec<&Poly> = a.iter().map(|l| &l.poly).collect();
        let pb: Vec<&Poly> = b.iter().map(|l| &l.poly).collect();
        let levels = rational_series_product(&pa, &pb, n_t, Some(prec.n_x))?;
        // Same x-precision bookkeeping as the generic loop: exact zeros on
        // the left contribute nothing, every other pair caps the level.
        let caps = (0..n_t).map(|k| {
            (0..=k)
                .filter(|&i| i < a.len() && k - i < b.len() && !a[i].is_zero())
                .map(|i| a[i].n.min(b[k - i].n))
                .fold(prec.n_x, usize::min)
        });
        Some(levels.into_iter().zip(caps).map(|(p, n)| TruncPoly::new(p, n)).collect())
    }
    fn display_terms(&self) -> Vec<(Scalar, String)> {
        <Poly as Coeff>::display_terms(&self.poly)
    }
}

fn cap(prec: &Precision) -> i64 {
    -(prec.n_x as i64)
}

impl Coeff for Laurent {
    const ZERO_IS_EXACT: bool = false;

    fn zero(field: GroundField, _: &Precision) -> Self {
        Laurent::zero(field, Laurent::EXACT)
    }
    fn constant(c: Scalar, _: &Precision) -> Self {
        Laurent::monomial(c, 0, Laurent::EXACT)
    }
    fn add(&self, o: &Self) -> Self {
        Laurent::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Laurent::sub(self, o)
    }
    fn neg(&self) -> Self {
        Laurent::neg(self)
    }
    fn scale(&self, c: &Scalar) -> Self {
        Laurent::scale(self, c)
    }
    fn mul(&self, o: &Self, prec: &Precision) -> Self {
        Laurent::mul(self, o, cap(prec))
    }
    fn is_zero(&self) -> bool {
        Laurent::is_zero(self)
    }
    fn inv(&self, prec: &Precision) -> Result<Self> {
        Laurent::inv(self, cap(prec)).map_err(|_| {
            Error::NotAUnit("the t-constant coefficient vanishes within the x-window".into())
        })
    }
    fn eq_at(&self, o: &Self) -> bool {
        Laurent::eq_at(self, o)
    }
    fn restrict(&self, prec: &Precision) -> Self {
        if self.is_exact() {
            self.clone()
        } else {
            self.with_floor_at_least(cap(prec))
        }
    }
    fn display_terms(&self) -> Vec<(Scalar, String)> {
        let mut v: Vec<_> = self.terms().map(|(e, c)| (c.clone(), x_mono(e))).collect();
        v.reverse();
        v
    }
}

/// Σ_{i<n_t} cᵢ·tⁱ with coefficients in `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct TSeries<C> {
    field: GroundField,
    prec: Precision,
    levels: Vec<C>,
}

impl<C: Coeff> TSeries<C> {
    /// Builds a series from its t-levels, padding or truncating to n_t.
    pub fn new(field: GroundField, prec: Precision, mut levels: Vec<C>) -> Self {
        levels.truncate(prec.n_t);
        let levels = levels.iter().map(|c| c.restrict(&prec)).collect::<Vec<_>>();
        let mut s = TSeries {
            field,
            prec,
            levels,
        };
        while s.levels.len() < prec.n_t {
            s.levels.push(C::zero(field, &prec));
        }
        s
    }

    pub fn zero(field: GroundField, prec: Precision) -> Self {
        Self::new(field, prec, Vec::new())
    }

    pub fn one(field: GroundField, prec: Precision) -> Self {
        Self::constant(field.one(), prec)
    }

    pub fn constant(c: Scalar, prec: Precision) -> Self {
        let field = c.field();
        Self::new(field, prec, vec![C::constant(c, &prec)])
    }

    /// c·tᵏ for a level coefficient c.
    pub fn from_level(field: GroundField, prec: Precision, c: C, k: usize) -> Self {
        let mut levels = vec![C::zero(field, &prec); k];
        levels.push(c);
        Self::new(field, prec, levels)
    }

    /// tᵏ
    pub fn t_power(field: GroundField, prec: Precision, k: usize) -> Self {
        Self::from_level(field, prec, C::constant(field.one(), &prec), k)
    }

    pub fn field(&self) -> GroundField {
        self.field
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn n_t(&self) -> usize {
        self.prec.n_t
    }

    pub fn levels(&self) -> &[C] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> &C {
        &self.levels[i]
    }

    /// Forgets everything beyond `prec`.
    pub fn restrict(&self, prec: &Precision) -> Self {
        Self::new(self.field, self.prec.meet(prec), self.levels.clone())
    }

    fn joint(&self, o: &Self) -> Precision {
        assert_eq!(self.field, o.field, "mixed ground fields");
        self.prec.meet(&o.prec)
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.joint(o);
        let levels = (0..p.n_t).map(|i| self.levels[i].add(&o.levels[i])).collect();
        Self::new(self.field, p, levels)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.joint(o);
        let levels = (0..p.n_t).map(|i| self.levels[i].sub(&o.levels[i])).collect();
        Self::new(self.field, p, levels)
    }

    pub fn neg(&self) -> Self {
        Self::new(
            self.field,
            self.prec,
            self.levels.iter().map(C::neg).collect(),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(
            self.field,
            self.prec,
            self.levels.iter().map(|l| l.scale(c)).collect(),
        )
    }

    /// Multiplies every level by a level coefficient.
    pub fn mul_level(&self, c: &C) -> Self {
        Self::new(
            self.field,
            self.prec,
            self.levels.iter().map(|l| l.mul(c, &self.prec)).collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.joint(o);
        if let Some(levels) = C::series_product(&self.levels, &o.levels, p.n_t, &p) {
            return Self::new(self.field, p, levels);
        }
        let mut levels = vec![C::zero(self.field, &p); p.n_t];
        for i in 0..p.n_t {
            if C::ZERO_IS_EXACT && self.levels[i].is_zero() {
                continue;
            }
            for j in 0..p.n_t - i {
                let prod = self.levels[i].mul(&o.levels[j], &p);
                levels[i + j] = levels[i + j].add(&prod);
            }
        }
        Self::new(self.field, p, levels)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(self.field, self.prec);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplies by tᵏ.
    pub fn shift_t(&self, k: usize) -> Self {
        let mut levels = vec![C::zero(self.field, &self.prec); k];
        levels.extend(self.levels.iter().cloned());
        Self::new(self.field, self.prec, levels)
    }

    /// Divides by tᵏ, which must divide the series; the result is known
    /// mod t^(n_t - k).
    pub fn unshift_t(&self, k: usize) -> Result<Self> {
        if k > self.prec.n_t || self.levels[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible(format!("series is not divisible by t^{k}")));
        }
        let p = self.prec.with_nt(self.prec.n_t - k);
        Ok(Self::new(self.field, p, self.levels[k..].to_vec()))
    }

    /// Re-expresses the series at a larger t-precision, padding with zero levels.
    pub fn pad_t(&self, n_t: usize) -> Self {
        Self::new(self.field, self.prec.with_nt(n_t), self.levels.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(C::is_zero)
    }

    /// The exponent of the highest power of t dividing the series.
    pub fn t_order(&self) -> Result<usize> {
        self.levels
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::PrecisionExhausted("series vanishes to full t-precision".into()))
    }

    pub fn is_unit(&self) -> bool {
        self.levels
            .first()
            .is_some_and(|c| c.inv(&self.prec).is_ok())
    }

    pub fn inverse(&self) -> Result<Self> {
        let c0 = self
            .levels
            .first()
            .ok_or_else(|| Error::NotAUnit("series has no retained t-levels".into()))?;
        let v0 = c0.inv(&self.prec)?;
        let mut inv: Vec<C> = Vec::with_capacity(self.prec.n_t);
        inv.push(v0.clone());
        for k in 1..self.prec.n_t {
            let mut acc = C::zero(self.field, &self.prec);
            for j in 1..=k {
                acc = acc.add(&self.levels[j].mul(&inv[k - j], &self.prec));
            }
            inv.push(acc.mul(&v0, &self.prec).neg());
        }
        Ok(Self::new(self.field, self.prec, inv))
    }

    /// Equality at the joint precision.
    pub fn eq_at(&self, o: &Self) -> bool {
        let p = self.joint(o);
        (0..p.n_t).all(|i| {
            self.levels[i]
                .restrict(&p)
                .eq_at(&o.levels[i].restrict(&p))
        })
    }

    /// n-th root of a series ≡ 1 mod t by Newton iteration on the inverse
    /// root s ↦ s + s(1 − u·sⁿ)/n, then r = u·s^(n−1). Each step doubles
    /// the number of correct t-levels, so it runs at that working precision.
    pub fn nth_root(&self, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::HypothesisViolated("root index must be positive".into()));
        }
        if self.field.char_divides(n) {
            return Err(Error::CharDividesN {
                n,
                p: self.field.characteristic(),
            });
        }
        let one = Self::one(self.field, self.prec);
        if self.prec.n_t == 0 || !self.levels[0].eq_at(one.level(0)) {
            return Err(Error::BadResidue("series is not congruent to 1 mod t".into()));
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let n_inv = self.field.from_i64(n as i64).inv().unwrap();
        let mut s = one.restrict(&self.prec.with_nt(1));
        let mut correct = 1;
        while correct < self.prec.n_t {
            correct = (2 * correct).min(self.prec.n_t);
            let p = self.prec.with_nt(correct);
            s = s.pad_t(correct);
            let err = one.restrict(&p).sub(&self.restrict(&p).mul(&s.pow(n)));
            s = s.add(&s.mul(&err).scale(&n_inv));
        }
        Ok(self.mul(&s.pow(n - 1)))
    }
}

impl<C: Coeff> fmt::Display for TSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, level) in self.levels.iter().enumerate() {
            let t = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            for (c, m) in level.display_terms() {
                let mono = match (t.is_empty(), m.is_empty()) {
                    (true, _) => m,
                    (false, true) => t.clone(),
                    (false, false) => format!("{t}*{m}"),
                };
                terms.push((c, mono));
            }
        }
        f.write_str(&format_terms(&terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{SeriesLaurentT, SeriesTTx, SeriesTx};

    fn q() -> GroundField {
        GroundField::Rationals
    }

    fn tx(levels: &[&[i64]], n_t: usize) -> SeriesTx {
        let p = Precision::new(n_t, 8, 4);
        SeriesTx::new(
            q(),
            p,
            levels.iter().map(|l| Poly::from_i64s(q(), l)).collect(),
        )
    }

    #[test]
    fn f5_product_wraps() {
        let f5 = GroundField::prime(5).unwrap();
        let p = Precision::new(4, 4, 2);
        let a = SeriesTx::new(f5, p, vec![Poly::from_i64s(f5, &[2]), Poly::one(f5)]);
        let b = SeriesTx::new(f5, p, vec![Poly::from_i64s(f5, &[3]), Poly::one(f5)]);
        let want = SeriesTx::new(
            f5,
            p,
            vec![Poly::one(f5), Poly::zero(f5), Poly::one(f5)],
        );
        assert_eq!(a.mul(&b), want);
    }

    #[test]
    fn identity_product() {
        let a = tx(&[&[0, 1], &[1]], 5);
        assert_eq!(a.mul(&SeriesTx::one(q(), a.precision())), a);
        assert_eq!(a.to_string(), "x + t");
    }

    #[test]
    fn geometric_inverse_in_tx() {
        let n_t = 6;
        let u = tx(&[&[1], &[0, 1]], n_t);
        let inv = u.inverse().unwrap();
        for i in 0..n_t {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            assert_eq!(inv.level(i), &Poly::monomial(q().from_i64(sign), i));
        }
        assert!(u.mul(&inv).eq_at(&SeriesTx::one(q(), u.precision())));
        assert!(inv.mul(&u).eq_at(&SeriesTx::one(q(), u.precision())));
        assert!(matches!(tx(&[&[0, 1]], 3).inverse(), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn binomial_square_root() {
        // (1 + t)^(1/2) = Σ binom(1/2, k) t^k
        let n_t = 8;
        let u = tx(&[&[1], &[1]], n_t);
        let r = u.nth_root(2).unwrap();
        let mut c = q().one();
        for k in 0..n_t {
            assert_eq!(r.level(k), &Poly::constant(c.clone()));
            let num = q().parse(&format!("{}/{}", 1 - 2 * k as i64, 2 * (k as i64 + 1))).unwrap();
            c = &c * &num;
        }
    }

    #[test]
    fn root_guards() {
        let f2 = GroundField::prime(2).unwrap();
        let p = Precision::new(3, 3, 1);
        let u = SeriesTx::new(f2, p, vec![Poly::one(f2), Poly::one(f2)]);
        assert!(matches!(u.nth_root(2), Err(Error::CharDividesN { n: 2, p: 2 })));
        let bad = tx(&[&[2], &[1]], 3);
        assert!(matches!(bad.nth_root(3), Err(Error::BadResidue(_))));
        let one = SeriesTx::one(q(), p);
        assert_eq!(one.nth_root(7).unwrap(), one);
    }

    #[test]
    fn ttx_inverse_truncates_in_x() {
        let p = Precision::new(3, 5, 0);
        let u = SeriesTTx::new(
            q(),
            p,
            vec![TruncPoly::new(Poly::from_i64s(q(), &[1, 1]), 5)],
        );
        let inv = u.inverse().unwrap();
        assert_eq!(inv.level(0).poly(), &Poly::from_i64s(q(), &[1, -1, 1, -1, 1]));
        assert!(u.mul(&inv).eq_at(&SeriesTTx::one(q(), p)));
    }

    #[test]
    fn laurent_t_unit_and_root() {
        let p = Precision::new(4, 10, 4);
        let a0 = Laurent::from_terms(q(), &[(0, q().one())], -10);
        let a1 = Laurent::from_terms(q(), &[(1, q().one()), (-1, q().from_i64(3))], -10);
        let u = SeriesLaurentT::new(q(), p, vec![a0, a1]);
        let r = u.nth_root(3).unwrap();
        assert!(r.pow(3).eq_at(&u));
        let inv = u.inverse().unwrap();
        assert!(inv.mul(&u).eq_at(&SeriesLaurentT::one(q(), p)));
    }
}
