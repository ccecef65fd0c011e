//! Factorization modulo t: additive splitting of k((x⁻¹)) and the
//! multiplicative splitting of an invertible matrix into a factor over
//! k[[x⁻¹]] times a factor over k[x, x⁻¹].

use crate::error::{Error, Result};
use crate::field::{GroundField, Scalar};
use crate::poly::Poly;
use crate::series::Laurent;

use super::matrix::LaurentMatrix;

/// Which summand receives the constant terms in an additive split.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstantsTo {
    PSide,
    USide,
}

/// f = f_P + f_U with f_P ∈ k[[x⁻¹]] (constants included) and f_U ∈ x·k[x].
pub fn additive_split(f: &Laurent) -> (Laurent, Laurent) {
    split_with(f, ConstantsTo::PSide)
}

/// Additive split with a chosen home for the constant term. The U-part is a
/// polynomial, exact as soon as every nonnegative power it may hold is known.
pub fn split_with(f: &Laurent, constants: ConstantsTo) -> (Laurent, Laurent) {
    let boundary = match constants {
        ConstantsTo::PSide => 1,
        ConstantsTo::USide => 0,
    };
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for (e, c) in f.terms() {
        if e < boundary {
            lo.push((e, c.clone()));
        } else {
            hi.push((e, c.clone()));
        }
    }
    let u_floor = if f.floor() <= boundary {
        Laurent::EXACT
    } else {
        f.floor()
    };
    (
        Laurent::from_terms(f.field(), &lo, f.floor()),
        Laurent::from_terms(f.field(), &hi, u_floor),
    )
}

/// ā = b̄·c̄ with b̄ ∈ k[[x⁻¹]] of constant term 1 and c̄ = c·xᵉ a monomial.
pub fn factor_mod_t_scalar(a: &Laurent, cap: i64) -> Result<(Laurent, Laurent)> {
    let e = a
        .top()
        .ok_or_else(|| Error::PrecisionExhausted("value vanishes within the x-window".into()))?;
    let c = Laurent::monomial(a.leading().unwrap().clone(), e, Laurent::EXACT);
    let b = a.mul(&c.inv(cap)?, cap);
    Ok((b, c))
}

/// Output of [`factor_mod_t_matrix`].
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixSplitting {
    /// Factor over k[[x⁻¹]] with value I at x = ∞.
    pub b: LaurentMatrix,
    /// Factor over k[x, x⁻¹]: c = L·diag(x^κ)·V⁻¹.
    pub c: LaurentMatrix,
    /// Partial indices κ.
    pub partial_indices: Vec<i64>,
    /// Unimodular polynomial matrix V with ā·V·diag(x^-κ) ∈ GL(k[[x⁻¹]]).
    pub v: Vec<Poly>,
    pub v_inv: Vec<Poly>,
    /// ā·V·diag(x^-κ), before normalizing its value at ∞.
    pub b_raw: LaurentMatrix,
}

/// ā = b̄·c̄ with b̄ invertible over k[[x⁻¹]] and c̄ invertible over
/// k[x, x⁻¹].
///
/// The known part of ā is cleared of denominators, ā = x⁻ˢ·M with M a
/// polynomial matrix, and M is column reduced by unimodular column
/// operations until its leading column coefficients form an invertible
/// matrix L. With column degrees dⱼ this gives ā = B'·diag(x^(dⱼ−s))·V⁻¹,
/// where B' is recomputed from ā with full floor tracking.
pub fn factor_mod_t_matrix(a: &LaurentMatrix, cap: i64) -> Result<MatrixSplitting> {
    let field = a.field();
    let n = a.n();
    a.inverse(cap)?;
    let s = a
        .entries()
        .iter()
        .filter_map(Laurent::bottom)
        .min()
        .map_or(0, |b| (-b).max(0));
    let m: Vec<Poly> = a
        .entries()
        .iter()
        .map(|e| {
            let top = e.top().unwrap_or(-s - 1);
            Poly::new(field, (-s..=top).map(|k| e.coeff(k)).collect())
        })
        .collect();
    let reduced = column_reduce(field, n, m)?;
    let kappa: Vec<i64> = reduced.degrees.iter().map(|&d| d as i64 - s).collect();
    let v = LaurentMatrix::from_polys(field, n, &reduced.v);
    let neg: Vec<i64> = kappa.iter().map(|k| -k).collect();
    let b_raw = a.mul(&v, cap).mul(&LaurentMatrix::x_powers(field, &neg), cap);
    if b_raw.worst_floor() > 0 || !b_raw.has_no_positive_powers() {
        return Err(Error::WindowTooSmall(format!(
            "the k[[1/x]] factor is not determined (known down to x^{})",
            b_raw.worst_floor()
        )));
    }
    let lead = LaurentMatrix::new(
        field,
        n,
        b_raw
            .constant_terms()
            .into_iter()
            .map(|c| Laurent::monomial(c, 0, Laurent::EXACT))
            .collect(),
    );
    let lead_inv = lead
        .inverse(cap)
        .map_err(|_| Error::WindowTooSmall("leading coefficient matrix is singular".into()))?;
    let b = b_raw.mul(&lead_inv, cap);
    let c = lead
        .mul(&LaurentMatrix::x_powers(field, &kappa), cap)
        .mul(&LaurentMatrix::from_polys(field, n, &reduced.v_inv), cap);
    Ok(MatrixSplitting {
        b,
        c,
        partial_indices: kappa,
        v: reduced.v,
        v_inv: reduced.v_inv,
        b_raw,
    })
}

struct ColumnReduced {
    degrees: Vec<usize>,
    v: Vec<Poly>,
    v_inv: Vec<Poly>,
}

/// Column-reduces a nonsingular polynomial matrix (row-major), tracking the
/// unimodular transform V and its inverse.
fn column_reduce(field: GroundField, n: usize, mut m: Vec<Poly>) -> Result<ColumnReduced> {
    let ident = |i: usize, j: usize| if i == j { Poly::one(field) } else { Poly::zero(field) };
    let mut v: Vec<Poly> = (0..n * n).map(|k| ident(k / n, k % n)).collect();
    let mut v_inv = v.clone();
    loop {
        let mut degrees = Vec::with_capacity(n);
        for j in 0..n {
            let d = (0..n)
                .filter_map(|i| m[i * n + j].degree())
                .max()
                .ok_or(Error::NotInvertible)?;
            degrees.push(d);
        }
        let lead: Vec<Scalar> = (0..n * n)
            .map(|k| m[k].coeff(degrees[k % n]))
            .collect();
        let Some(mut alpha) = kernel_vector(field, n, &lead) else {
            return Ok(ColumnReduced { degrees, v, v_inv });
        };
        let star = (0..n)
            .filter(|&j| !alpha[j].is_zero())
            .max_by_key(|&j| (degrees[j], std::cmp::Reverse(j)))
            .unwrap();
        let norm = alpha[star].inv().unwrap();
        for a in alpha.iter_mut() {
            *a = &*a * &norm;
        }
        let mono = |j: usize| Poly::monomial(alpha[j].clone(), degrees[star] - degrees[j]);
        for mat in [&mut m, &mut v] {
            for i in 0..n {
                let mut acc = Poly::zero(field);
                for j in 0..n {
                    if !alpha[j].is_zero() {
                        acc = &acc + &(&mono(j) * &mat[i * n + j]);
                    }
                }
                mat[i * n + star] = acc;
            }
        }
        for j in 0..n {
            if j == star || alpha[j].is_zero() {
                continue;
            }
            for c in 0..n {
                let delta = &mono(j) * &v_inv[star * n + c];
                v_inv[j * n + c] = &v_inv[j * n + c] - &delta;
            }
        }
    }
}

/// A nonzero vector α with L·α = 0, if L is singular.
fn kernel_vector(field: GroundField, n: usize, l: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut m: Vec<Vec<Scalar>> = (0..n).map(|i| l[i * n..(i + 1) * n].to_vec()).collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for j in 0..n {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..n {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..n {
                    let d = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &d;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let free = (0..n).find(|c| !pivot_cols.contains(c))?;
    let mut alpha = vec![field.zero(); n];
    alpha[free] = field.one();
    for (row, &pc) in pivot_cols.iter().enumerate() {
        alpha[pc] = -&m[row][free];
    }
    Some(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> GroundField {
        GroundField::Rationals
    }

    fn lp(terms: &[(i64, i64)]) -> Laurent {
        let t: Vec<_> = terms.iter().map(|&(e, c)| (e, q().from_i64(c))).collect();
        Laurent::exact_from_terms(q(), &t)
    }

    #[test]
    fn split_examples() {
        let (p, u) = additive_split(&lp(&[(0, 5)]));
        assert_eq!((p, u.is_zero()), (lp(&[(0, 5)]), true));
        let (p, u) = additive_split(&lp(&[(2, 1), (0, 1), (-1, 1)]));
        assert_eq!(p, lp(&[(0, 1), (-1, 1)]));
        assert_eq!(u, lp(&[(2, 1)]));
        let (p, u) = split_with(&lp(&[(0, 5), (-2, 1)]), ConstantsTo::USide);
        assert_eq!((p, u), (lp(&[(-2, 1)]), lp(&[(0, 5)])));
    }

    #[test]
    fn scalar_examples() {
        let (b, c) = factor_mod_t_scalar(&lp(&[(3, 1)]), -10).unwrap();
        assert_eq!((b, c), (lp(&[(0, 1)]), lp(&[(3, 1)])));
        let a = lp(&[(1, 2), (0, 3), (-1, 1)]);
        let (b, c) = factor_mod_t_scalar(&a, -10).unwrap();
        assert_eq!(c, lp(&[(1, 2)]));
        let half = |s: &str| q().parse(s).unwrap();
        let want = [(0, q().one()), (-1, half("3/2")), (-2, half("1/2"))];
        assert_eq!(b, Laurent::exact_from_terms(q(), &want));
        assert!(b.mul(&c, -10).eq_at(&a));
        let (b, c) = factor_mod_t_scalar(&lp(&[(-2, 1)]), -10).unwrap();
        assert_eq!((b, c), (lp(&[(0, 1)]), lp(&[(-2, 1)])));
    }

    #[test]
    fn diagonal_is_absorbed_right() {
        let a = LaurentMatrix::new(q(), 2, vec![lp(&[(1, 1)]), lp(&[]), lp(&[]), lp(&[(-1, 1)])]);
        let s = factor_mod_t_matrix(&a, -10).unwrap();
        assert!(s.b.eq_at(&LaurentMatrix::identity(q(), 2)));
        assert!(s.c.eq_at(&a));
        assert_eq!(s.partial_indices, vec![1, -1]);
    }

    #[test]
    fn needs_column_reduction() {
        // rows (x, x^2), (1, x + 1): leading column matrix is singular at first
        let a = LaurentMatrix::new(
            q(),
            2,
            vec![lp(&[(1, 1)]), lp(&[(2, 1)]), lp(&[(0, 1)]), lp(&[(1, 1), (0, 1)])],
        );
        let s = factor_mod_t_matrix(&a, -20).unwrap();
        assert!(s.b.mul(&s.c, -20).eq_at(&a));
        assert!(s.b.has_no_positive_powers());
        assert_eq!(s.partial_indices.iter().sum::<i64>(), 1);
        assert!(s.b.constant_terms().iter().enumerate().all(|(k, c)| *c == if k % 3 == 0 { q().one() } else { q().zero() }));
    }
}
