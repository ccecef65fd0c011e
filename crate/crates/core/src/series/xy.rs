//! k[[x,y]] truncated by total degree.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{GroundField, Scalar};
use crate::poly::{format_terms, Poly};
use crate::precision::Precision;

/// Σ a_{ab} xᵃyᵇ over a + b < n_x. Stored by powers of y: `cols[b]` is the
/// polynomial in x multiplying yᵇ, of degree below n_x − b.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesXY {
    field: GroundField,
    prec: Precision,
    cols: Vec<Poly>,
}

impl SeriesXY {
    pub fn new(field: GroundField, prec: Precision, cols: Vec<Poly>) -> Self {
        let n = prec.n_x;
        let mut cols: Vec<Poly> = cols.into_iter().take(n).collect();
        cols.resize(n, Poly::zero(field));
        for (b, c) in cols.iter_mut().enumerate() {
            *c = c.truncate(n - b);
        }
        SeriesXY { field, prec, cols }
    }

    /// Builds Σ c·xᵃyᵇ from (a, b, c) triples.
    pub fn from_terms(field: GroundField, prec: Precision, terms: &[(usize, usize, Scalar)]) -> Self {
        let n = prec.n_x;
        let mut cols = vec![vec![field.zero(); n]; n];
        for (a, b, c) in terms {
            if a + b < n {
                cols[*b][*a] = &cols[*b][*a] + c;
            }
        }
        Self::new(
            field,
            prec,
            cols.into_iter().map(|c| Poly::new(field, c)).collect(),
        )
    }

    pub fn from_i64_terms(field: GroundField, prec: Precision, terms: &[(usize, usize, i64)]) -> Self {
        let t: Vec<_> = terms.iter().map(|&(a, b, c)| (a, b, field.from_i64(c))).collect();
        Self::from_terms(field, prec, &t)
    }

    /// A polynomial in x alone.
    pub fn from_x_poly(p: &Poly, prec: Precision) -> Self {
        Self::new(p.field(), prec, vec![p.clone()])
    }

    pub fn zero(field: GroundField, prec: Precision) -> Self {
        Self::new(field, prec, Vec::new())
    }

    pub fn one(field: GroundField, prec: Precision) -> Self {
        Self::new(field, prec, vec![Poly::one(field)])
    }

    pub fn x(field: GroundField, prec: Precision) -> Self {
        Self::new(field, prec, vec![Poly::x(field)])
    }

    pub fn y(field: GroundField, prec: Precision) -> Self {
        Self::new(field, prec, vec![Poly::zero(field), Poly::one(field)])
    }

    pub fn field(&self) -> GroundField {
        self.field
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// Total-degree bound: terms of degree ≥ n_x are unknown.
    pub fn n(&self) -> usize {
        self.prec.n_x
    }

    /// The x-polynomial multiplying yᵇ.
    pub fn y_coeff(&self, b: usize) -> &Poly {
        &self.cols[b]
    }

    pub fn coeff(&self, a: usize, b: usize) -> Scalar {
        if b >= self.cols.len() {
            return self.field.zero();
        }
        self.cols[b].coeff(a)
    }

    /// Re-expresses at a lower total-degree precision.
    pub fn restrict_degree(&self, n: usize) -> Self {
        Self::new(self.field, self.prec.with_nx(n.min(self.prec.n_x)), self.cols.clone())
    }

    fn joint(&self, o: &Self) -> Precision {
        assert_eq!(self.field, o.field, "mixed ground fields");
        self.prec.meet(&o.prec)
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.joint(o);
        let cols = (0..p.n_x).map(|b| &self.cols[b] + &o.cols[b]).collect();
        Self::new(self.field, p, cols)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.joint(o);
        let cols = (0..p.n_x).map(|b| &self.cols[b] - &o.cols[b]).collect();
        Self::new(self.field, p, cols)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.field, self.prec, self.cols.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.field, self.prec, self.cols.iter().map(|p| p.scale(c)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.joint(o);
        let n = p.n_x;
        let mut cols = vec![Poly::zero(self.field); n];
        for b1 in 0..n {
            if self.cols[b1].is_zero() {
                continue;
            }
            for b2 in 0..n - b1 {
                if o.cols[b2].is_zero() {
                    continue;
                }
                let b = b1 + b2;
                let prod = self.cols[b1].mul_trunc(&o.cols[b2], n - b);
                cols[b] = &cols[b] + &prod;
            }
        }
        Self::new(self.field, p, cols)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field, self.prec);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Poly::is_zero)
    }

    pub fn is_unit(&self) -> bool {
        !self.coeff(0, 0).is_zero()
    }

    /// Lowest total degree with a nonzero term.
    pub fn order(&self) -> Option<usize> {
        (0..self.n()).find(|&d| self.form(d).iter().any(|c| !c.is_zero()))
    }

    /// The homogeneous form of degree d as coefficients of x^(d−b)·yᵇ, b = 0..=d.
    pub fn form(&self, d: usize) -> Vec<Scalar> {
        (0..=d).map(|b| self.coeff(d - b, b)).collect()
    }

    pub fn inverse(&self) -> Result<Self> {
        let c = self
            .coeff(0, 0)
            .inv()
            .ok_or_else(|| Error::NotAUnit("constant term is zero".into()))?;
        // u = c⁻¹(1 − w) with w of order ≥ 1, so u⁻¹ = c·Σ wᵏ.
        let one = Self::one(self.field, self.prec);
        let w = one.sub(&self.scale(&c));
        let mut acc = one.clone();
        let mut wk = one;
        for _ in 1..self.n() {
            wk = wk.mul(&w);
            acc = acc.add(&wk);
        }
        Ok(acc.scale(&c))
    }

    /// Exact quotient self / g. The quotient is known to total degree
    /// n_x − ord(g); divisibility is checked up to the available degree.
    pub fn exact_div(&self, g: &SeriesXY) -> Result<SeriesXY> {
        let p = self.joint(g);
        let n = p.n_x;
        let k = g
            .order()
            .ok_or_else(|| Error::NotDivisible("divisor vanishes at this precision".into()))?;
        if (0..k).any(|d| self.form(d).iter().any(|c| !c.is_zero())) {
            return Err(Error::NotDivisible("dividend has lower order than divisor".into()));
        }
        let out_n = n - k;
        let lead = g.form(k);
        let mut quotient = SeriesXY::zero(self.field, p.with_nx(out_n));
        for d in 0..out_n {
            // residual form of degree d + k: f − g·(quotient so far)
            let done = g.mul(&quotient.widen(n));
            let target: Vec<Scalar> = self
                .form(d + k)
                .iter()
                .zip(done.form(d + k))
                .map(|(a, b)| a - &b)
                .collect();
            let q_d = solve_form_division(&lead, &target, d).ok_or_else(|| {
                Error::NotDivisible(format!("no quotient form in degree {d}"))
            })?;
            let terms: Vec<_> = q_d
                .into_iter()
                .enumerate()
                .map(|(b, c)| (d - b, b, c))
                .collect();
            quotient = quotient.add(&SeriesXY::from_terms(self.field, p.with_nx(out_n), &terms));
        }
        Ok(quotient)
    }

    /// Same coefficients at a larger total-degree bound (missing terms as zero).
    fn widen(&self, n: usize) -> Self {
        Self::new(self.field, self.prec.with_nx(n), self.cols.clone())
    }

    pub fn eq_at(&self, o: &Self) -> bool {
        let n = self.n().min(o.n());
        (0..n).all(|d| self.form(d) == o.form(d))
    }
}

/// Finds the degree-d form q with lead·q = target, where lead is a form of
/// degree k and target one of degree d + k (coefficients indexed by y-power).
fn solve_form_division(lead: &[Scalar], target: &[Scalar], d: usize) -> Option<Vec<Scalar>> {
    let k = lead.len() - 1;
    let field = lead[0].field();
    let rows = d + k + 1;
    let cols = d + 1;
    // column b of the system is lead shifted by b
    let mut m: Vec<Vec<Scalar>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Scalar> = (0..cols)
                .map(|b| {
                    if r >= b && r - b <= k {
                        lead[r - b].clone()
                    } else {
                        field.zero()
                    }
                })
                .collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inv().unwrap();
        for j in c..=cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let v = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut q = vec![field.zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        q[c] = m[i][cols].clone();
    }
    Some(q)
}

impl fmt::Display for SeriesXY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for d in 0..self.n() {
            for b in 0..=d {
                let c = self.coeff(d - b, b);
                if c.is_zero() {
                    continue;
                }
                let a = d - b;
                let xs = match a {
                    0 => String::new(),
                    1 => "x".into(),
                    _ => format!("x^{a}"),
                };
                let ys = match b {
                    0 => String::new(),
                    1 => "y".into(),
                    _ => format!("y^{b}"),
                };
                let mono = match (xs.is_empty(), ys.is_empty()) {
                    (true, _) => ys,
                    (_, true) => xs,
                    _ => format!("{xs}*{ys}"),
                };
                terms.push((c, mono));
            }
        }
        f.write_str(&format_terms(&terms))
    }
}
