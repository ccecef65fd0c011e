//! Square matrices over k((x⁻¹)) (one t-level) and over k((x⁻¹))[[t]].

use crate::error::{Error, Result};
use crate::field::{GroundField, Scalar};
use crate::poly::Poly;
use crate::precision::Precision;
use crate::series::{Laurent, SeriesLaurentT};

/// An n×n matrix of [`Laurent`] entries, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentMatrix {
    field: GroundField,
    n: usize,
    entries: Vec<Laurent>,
}

impl LaurentMatrix {
    pub fn new(field: GroundField, n: usize, entries: Vec<Laurent>) -> Self {
        assert_eq!(entries.len(), n * n, "entry count must be n^2");
        LaurentMatrix { field, n, entries }
    }

    pub fn from_fn(field: GroundField, n: usize, f: impl FnMut(usize, usize) -> Laurent) -> Self {
        let mut f = f;
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self::new(field, n, entries)
    }

    pub fn identity(field: GroundField, n: usize) -> Self {
        Self::from_fn(field, n, |i, j| {
            if i == j {
                Laurent::one(field, Laurent::EXACT)
            } else {
                Laurent::zero(field, Laurent::EXACT)
            }
        })
    }

    pub fn zero(field: GroundField, n: usize) -> Self {
        Self::from_fn(field, n, |_, _| Laurent::zero(field, Laurent::EXACT))
    }

    /// Diagonal matrix diag(x^e₀, x^e₁, …), exact.
    pub fn x_powers(field: GroundField, exps: &[i64]) -> Self {
        let n = exps.len();
        Self::from_fn(field, n, |i, j| {
            if i == j {
                Laurent::monomial(field.one(), exps[i], Laurent::EXACT)
            } else {
                Laurent::zero(field, Laurent::EXACT)
            }
        })
    }

    /// A polynomial matrix read exactly.
    pub fn from_polys(field: GroundField, n: usize, polys: &[Poly]) -> Self {
        Self::from_fn(field, n, |i, j| Laurent::exact_from_poly(&polys[i * n + j]))
    }

    pub fn field(&self) -> GroundField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Laurent {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[Laurent] {
        &self.entries
    }

    pub fn map(&self, f: impl Fn(&Laurent) -> Laurent) -> Self {
        Self::new(self.field, self.n, self.entries.iter().map(f).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(
            self.field,
            self.n,
            self.entries.iter().zip(&o.entries).map(|(a, b)| a.add(b)).collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(
            self.field,
            self.n,
            self.entries.iter().zip(&o.entries).map(|(a, b)| a.sub(b)).collect(),
        )
    }

    /// Multiplies every entry by xᵏ.
    pub fn shift(&self, k: i64) -> Self {
        self.map(|e| e.shift(k))
    }

    pub fn mul(&self, o: &Self, cap: i64) -> Self {
        let n = self.n;
        Self::from_fn(self.field, n, |i, j| {
            let mut acc = Laurent::zero(self.field, Laurent::EXACT);
            for k in 0..n {
                acc = acc.add(&self.get(i, k).mul(o.get(k, j), cap));
            }
            acc
        })
    }

    /// The matrix of x⁰ coefficients.
    pub fn constant_terms(&self) -> Vec<Scalar> {
        self.entries.iter().map(|e| e.coeff(0)).collect()
    }

    /// Inverse by Gauss–Jordan elimination over k((x⁻¹)), pivoting on the
    /// entry of largest x-degree to keep known terms.
    pub fn inverse(&self, cap: i64) -> Result<Self> {
        let n = self.n;
        let mut a: Vec<Vec<Laurent>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut inv: Vec<Vec<Laurent>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Laurent::one(self.field, Laurent::EXACT)
                        } else {
                            Laurent::zero(self.field, Laurent::EXACT)
                        }
                    })
                    .collect()
            })
            .collect();
        for c in 0..n {
            let pivot = (c..n)
                .filter(|&r| !a[r][c].is_zero())
                .max_by_key(|&r| (a[r][c].top().unwrap(), std::cmp::Reverse(r)))
                .ok_or(Error::NotInvertible)?;
            a.swap(c, pivot);
            inv.swap(c, pivot);
            let p_inv = a[c][c].inv(cap)?;
            for j in 0..n {
                a[c][j] = a[c][j].mul(&p_inv, cap);
                inv[c][j] = inv[c][j].mul(&p_inv, cap);
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for j in 0..n {
                    a[r][j] = a[r][j].sub(&f.mul(&a[c][j], cap));
                    inv[r][j] = inv[r][j].sub(&f.mul(&inv[c][j], cap));
                }
            }
        }
        Ok(Self::new(self.field, n, inv.into_iter().flatten().collect()))
    }

    pub fn eq_at(&self, o: &Self) -> bool {
        self.n == o.n && self.entries.iter().zip(&o.entries).all(|(a, b)| a.eq_at(b))
    }

    /// Lowest known exponent over all entries (the worst floor).
    pub fn worst_floor(&self) -> i64 {
        self.entries.iter().map(Laurent::floor).max().unwrap_or(Laurent::EXACT)
    }

    pub fn max_top(&self) -> Option<i64> {
        self.entries.iter().filter_map(Laurent::top).max()
    }

    pub fn has_no_positive_powers(&self) -> bool {
        self.entries.iter().all(Laurent::has_no_positive_powers)
    }

    pub fn is_polynomial(&self) -> bool {
        self.entries.iter().all(Laurent::is_polynomial)
    }
}

/// An n×n matrix over k((x⁻¹))[[t]].
#[derive(Clone, Debug, PartialEq)]
pub struct RingMatrix {
    field: GroundField,
    prec: Precision,
    n: usize,
    entries: Vec<SeriesLaurentT>,
}

impl RingMatrix {
    pub fn new(field: GroundField, prec: Precision, n: usize, entries: Vec<SeriesLaurentT>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidDescriptor(format!(
                "expected {} entries, found {}",
                n * n,
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::RingMismatch("matrix entries over different fields".into()));
        }
        let entries = entries.iter().map(|e| e.restrict(&prec)).collect::<Vec<_>>();
        let prec = entries.iter().fold(prec, |p, e| p.meet(&e.precision()));
        let entries = entries.iter().map(|e| e.restrict(&prec)).collect();
        Ok(RingMatrix {
            field,
            prec,
            n,
            entries,
        })
    }

    /// Assembles a matrix from its t-levels.
    pub fn from_levels(field: GroundField, prec: Precision, levels: &[LaurentMatrix]) -> Self {
        let n = levels.first().map_or(0, LaurentMatrix::n);
        let entries = (0..n * n)
            .map(|k| {
                SeriesLaurentT::new(
                    field,
                    prec,
                    levels.iter().map(|l| l.entries[k].clone()).collect(),
                )
            })
            .collect();
        RingMatrix {
            field,
            prec,
            n,
            entries,
        }
    }

    pub fn identity(field: GroundField, prec: Precision, n: usize) -> Self {
        Self::from_levels(field, prec, &[LaurentMatrix::identity(field, n)])
    }

    pub fn field(&self) -> GroundField {
        self.field
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &SeriesLaurentT {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[SeriesLaurentT] {
        &self.entries
    }

    fn cap(&self) -> i64 {
        -(self.prec.n_x as i64)
    }

    /// The coefficient matrix of tⁱ.
    pub fn level(&self, i: usize) -> LaurentMatrix {
        LaurentMatrix::new(
            self.field,
            self.n,
            self.entries.iter().map(|e| e.level(i).clone()).collect(),
        )
    }

    pub fn levels(&self) -> Vec<LaurentMatrix> {
        (0..self.prec.n_t).map(|i| self.level(i)).collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec.meet(&o.prec);
        self.zip(o, p, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.prec.meet(&o.prec);
        self.zip(o, p, |a, b| a.sub(b))
    }

    fn zip(&self, o: &Self, p: Precision, f: impl Fn(&SeriesLaurentT, &SeriesLaurentT) -> SeriesLaurentT) -> Self {
        RingMatrix {
            field: self.field,
            prec: p,
            n: self.n,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Product computed level by level on t.
    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec.meet(&o.prec);
        let cap = -(p.n_x as i64);
        let a = self.levels();
        let b = o.levels();
        let out: Vec<LaurentMatrix> = (0..p.n_t)
            .map(|k| {
                let mut acc = LaurentMatrix::zero(self.field, self.n);
                for i in 0..=k {
                    acc = acc.add(&a[i].mul(&b[k - i], cap));
                }
                acc
            })
            .collect();
        Self::from_levels(self.field, p, &out)
    }

    /// Inverse: Gauss–Jordan mod t, then Newton's iteration X ↦ X + X(I − AX),
    /// which doubles the t-precision each step.
    pub fn inverse(&self) -> Result<Self> {
        let x0 = self.level(0).inverse(self.cap())?;
        let id = Self::identity(self.field, self.prec, self.n);
        let mut x = Self::from_levels(self.field, self.prec, &[x0]);
        let mut known = 1;
        while known < self.prec.n_t {
            x = x.add(&x.mul(&id.sub(&self.mul(&x))));
            known *= 2;
        }
        Ok(x)
    }

    pub fn eq_at(&self, o: &Self) -> bool {
        self.entries.iter().zip(&o.entries).all(|(a, b)| a.eq_at(b))
    }

    /// Exponent of the highest power of t dividing self − o; n_t when they
    /// agree at the joint precision.
    pub fn agreement_order(&self, o: &Self) -> usize {
        let p = self.prec.meet(&o.prec);
        (0..p.n_t)
            .find(|&i| !self.level(i).eq_at(&o.level(i)))
            .unwrap_or(p.n_t)
    }

    /// Every entry has no positive powers of x at any t-level.
    pub fn in_p_side(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.levels().iter().all(Laurent::has_no_positive_powers))
    }

    /// Every entry has known polynomial x-coefficients at every t-level.
    pub fn in_u_side(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.levels().iter().all(Laurent::is_polynomial))
    }

    /// Invertible at precision: the reduction mod t inverts.
    pub fn is_invertible(&self) -> bool {
        self.level(0).inverse(self.cap()).is_ok()
    }

    pub fn worst_floor(&self) -> i64 {
        self.levels().iter().map(LaurentMatrix::worst_floor).max().unwrap_or(Laurent::EXACT)
    }

    pub fn max_top(&self) -> Option<i64> {
        self.levels().iter().filter_map(LaurentMatrix::max_top).max()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> Laurent {
        let f = GroundField::Prime(7);
        let t: Vec<_> = terms.iter().map(|&(e, c)| (e, f.from_i64(c))).collect();
        Laurent::exact_from_terms(f, &t)
    }

    #[test]
    fn laurent_matrix_inverse() {
        let f = GroundField::Prime(7);
        let m = LaurentMatrix::new(
            f,
            2,
            vec![lp(&[(1, 1), (0, 2)]), lp(&[(-1, 3)]), lp(&[(2, 1)]), lp(&[(0, 1), (-2, 5)])],
        );
        let inv = m.inverse(-20).unwrap();
        assert!(m.mul(&inv, -20).eq_at(&LaurentMatrix::identity(f, 2)));
        assert!(inv.mul(&m, -20).eq_at(&LaurentMatrix::identity(f, 2)));
        let sing = LaurentMatrix::new(f, 2, vec![lp(&[(1, 1)]), lp(&[(1, 2)]), lp(&[(0, 3)]), lp(&[(0, 6)])]);
        assert_eq!(sing.inverse(-20), Err(Error::NotInvertible));
    }

    #[test]
    fn ring_matrix_inverse() {
        let f = GroundField::Prime(7);
        let p = Precision::new(4, 20, 8);
        let l0 = LaurentMatrix::new(f, 2, vec![lp(&[(0, 1)]), lp(&[(1, 1)]), lp(&[]), lp(&[(0, 1)])]);
        let l1 = LaurentMatrix::new(f, 2, vec![lp(&[(-1, 2)]), lp(&[]), lp(&[(2, 1)]), lp(&[(0, 3)])]);
        let a = RingMatrix::from_levels(f, p, &[l0, l1]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).agreement_order(&RingMatrix::identity(f, p, 2)), 4);
    }
}
