//! Factorization A = left·right over k((x⁻¹))[[t]] by successive t-adic
//! approximation, starting from the splitting modulo t.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::Laurent;

use super::birkhoff::{factor_mod_t_matrix, split_with, ConstantsTo};
use super::matrix::{LaurentMatrix, RingMatrix};

/// Which factor carries the partial indices.
///
/// `PU`: right is invertible over k[x][[t]] up to a central power of x and
/// left lies in GL over the fraction field of k[[x⁻¹]][[t]]; constants of
/// each correction go left. `PprimeUprime`: the roles are reversed, left is
/// invertible over k[[x⁻¹]][[t]] up to a central power of x and constants
/// go right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "pu")]
    PU,
    #[serde(rename = "up")]
    PprimeUprime,
}

/// Evidence attached to a factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// Partial indices of the reduction mod t.
    pub partial_indices: Vec<i64>,
    /// Exponent e such that the factor x^e was moved from left to right to
    /// make both factors side-pure.
    pub scalar_shift: i64,
    /// After step k, left·right agrees with A modulo t^(step_orders[k]).
    pub step_orders: Vec<usize>,
    /// t-order of left·right − A; equals n_t on success.
    pub residual_order: usize,
    /// Lowest x-exponent known in every entry of both factors.
    pub known_down_to: i64,
    /// Largest positive x-degree in the right factor.
    pub max_degree: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationPair {
    pub left: RingMatrix,
    pub right: RingMatrix,
    pub direction: Direction,
    pub certificate: Certificate,
}

/// A = left·right with left free of positive x-powers and right with
/// polynomial x-coefficients.
///
/// With L₀·R₀ = Ā from the splitting mod t, the higher levels solve
/// L₀Rₖ + LₖR₀ = Eₖ, where Eₖ = Aₖ − Σ_{0<i<k} LᵢR_{k−i}. Writing
/// D = L₀⁻¹EₖR₀⁻¹ = D_P + D_U (additive split) gives Lₖ = L₀D_P and
/// Rₖ = D_U·R₀; this is the update B ← B(I + tᵏD_P), C ← (I + tᵏD_U)C
/// read off one level at a time.
pub fn cartan_factor(a: &RingMatrix, direction: Direction) -> Result<FactorizationPair> {
    let field = a.field();
    let prec = a.precision();
    let n = a.n();
    let cap = -(prec.n_x as i64);
    let abar = a.level(0);
    let split = factor_mod_t_matrix(&abar, cap)?;
    let kappa = split.partial_indices.clone();
    let v = LaurentMatrix::from_polys(field, n, &split.v);
    let v_inv = LaurentMatrix::from_polys(field, n, &split.v_inv);
    let lambda = LaurentMatrix::x_powers(field, &kappa);
    let neg: Vec<i64> = kappa.iter().map(|k| -k).collect();
    let lambda_inv = LaurentMatrix::x_powers(field, &neg);

    let (left0, right0, right0_inv, shift, constants) = match direction {
        Direction::PU => {
            let tau = kappa.iter().copied().max().unwrap_or(0).max(0);
            (
                abar.mul(&v, cap).shift(-tau),
                v_inv.shift(tau),
                v.shift(-tau),
                tau,
                ConstantsTo::PSide,
            )
        }
        Direction::PprimeUprime => {
            let sigma = kappa.iter().copied().min().unwrap_or(0).min(0);
            (
                split.b_raw.shift(sigma),
                lambda.mul(&v_inv, cap).shift(-sigma),
                v.mul(&lambda_inv, cap).shift(sigma),
                -sigma,
                ConstantsTo::USide,
            )
        }
    };
    assert!(
        left0.mul(&right0, cap).eq_at(&abar),
        "mod-t factors must recompose"
    );
    let left0_inv = left0.inverse(cap)?;

    let mut ls = vec![left0.clone()];
    let mut rs = vec![right0.clone()];
    let mut step_orders = vec![1];
    for k in 1..prec.n_t {
        let mut e = a.level(k);
        for i in 1..k {
            e = e.sub(&ls[i].mul(&rs[k - i], cap));
        }
        let d = left0_inv.mul(&e, cap).mul(&right0_inv, cap);
        if d.worst_floor() > 0 {
            return Err(Error::WindowTooSmall(format!(
                "correction at t^{k} is only known down to x^{}",
                d.worst_floor()
            )));
        }
        let parts: Vec<(Laurent, Laurent)> =
            d.entries().iter().map(|x| split_with(x, constants)).collect();
        let dp = LaurentMatrix::new(field, n, parts.iter().map(|p| p.0.clone()).collect());
        let du = LaurentMatrix::new(field, n, parts.into_iter().map(|p| p.1).collect());
        let lk = left0.mul(&dp, cap);
        let rk = du.mul(&right0, cap);
        assert!(
            left0.mul(&rk, cap).add(&lk.mul(&right0, cap)).eq_at(&e),
            "level {k} of left*right must match"
        );
        ls.push(lk);
        rs.push(rk);
        step_orders.push(k + 1);
    }
    let left = RingMatrix::from_levels(field, prec, &ls);
    let right = RingMatrix::from_levels(field, prec, &rs);
    if !left.in_p_side() || !right.in_u_side() {
        return Err(Error::WindowTooSmall(
            "factors are not determined on their sides at this x-precision".into(),
        ));
    }
    let max_degree = right.max_top().unwrap_or(0);
    if max_degree > prec.m_x as i64 {
        return Err(Error::WindowTooSmall(format!(
            "right factor needs x-degree {max_degree} > m_x = {}",
            prec.m_x
        )));
    }
    let residual_order = left.mul(&right).agreement_order(a);
    let known_down_to = left.worst_floor().max(right.worst_floor());
    Ok(FactorizationPair {
        left,
        right,
        direction,
        certificate: Certificate {
            partial_indices: kappa,
            scalar_shift: shift,
            step_orders,
            residual_order,
            known_down_to,
            max_degree,
        },
    })
}

/// Adjusted bases for a free patching problem with transition matrix A.
#[derive(Clone, Debug, PartialEq)]
pub struct PatchingSolution {
    pub b: RingMatrix,
    pub c: RingMatrix,
    pub certificate: Certificate,
    /// t-order to which B⁻¹·A·C⁻¹ agrees with the identity.
    pub identity_order: usize,
}

/// Solves the patching problem: A = B·C, so after changing bases by B and
/// C the transition matrix B⁻¹·A·C⁻¹ is the identity.
pub fn solve_patching_problem(a: &RingMatrix) -> Result<PatchingSolution> {
    let pair = cartan_factor(a, Direction::PU)?;
    let adjusted = pair.left.inverse()?.mul(a).mul(&pair.right.inverse()?);
    let identity = RingMatrix::identity(a.field(), adjusted.precision(), a.n());
    let identity_order = adjusted.agreement_order(&identity);
    Ok(PatchingSolution {
        b: pair.left,
        c: pair.right,
        certificate: pair.certificate,
        identity_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::factor_mod_t_scalar;
    use crate::field::GroundField;
    use crate::precision::Precision;

    fn f7() -> GroundField {
        GroundField::Prime(7)
    }

    fn lp(terms: &[(i64, i64)]) -> Laurent {
        let t: Vec<_> = terms.iter().map(|&(e, c)| (e, f7().from_i64(c))).collect();
        Laurent::exact_from_terms(f7(), &t)
    }

    fn check(a: &RingMatrix) {
        for dir in [Direction::PU, Direction::PprimeUprime] {
            let pair = cartan_factor(a, dir).unwrap();
            assert_eq!(pair.certificate.residual_order, a.precision().n_t);
            assert!(pair.left.in_p_side() && pair.right.in_u_side());
            assert!(pair.left.mul(&pair.right).eq_at(a));
        }
    }

    #[test]
    fn identity_factors_trivially() {
        let p = Precision::new(6, 20, 10);
        let id = RingMatrix::identity(f7(), p, 2);
        let pair = cartan_factor(&id, Direction::PU).unwrap();
        assert!(pair.left.eq_at(&id) && pair.right.eq_at(&id));
        let sol = solve_patching_problem(&id).unwrap();
        assert_eq!(sol.identity_order, 6);
    }

    #[test]
    fn identity_plus_t_times_polynomial() {
        let p = Precision::new(6, 30, 30);
        let l1 = LaurentMatrix::new(
            f7(),
            2,
            vec![lp(&[(1, 1), (0, 2)]), lp(&[(-1, 3)]), lp(&[(2, 5)]), lp(&[(0, 1), (-2, 4)])],
        );
        let a = RingMatrix::from_levels(f7(), p, &[LaurentMatrix::identity(f7(), 2), l1]);
        check(&a);
        let sol = solve_patching_problem(&a).unwrap();
        assert_eq!(sol.identity_order, 6);
    }

    #[test]
    fn diagonal_x_plus_t() {
        let p = Precision::new(6, 30, 30);
        let l0 = LaurentMatrix::new(f7(), 2, vec![lp(&[(1, 1)]), lp(&[]), lp(&[]), lp(&[(0, 1)])]);
        let l1 = LaurentMatrix::new(f7(), 2, vec![lp(&[(0, 1)]), lp(&[]), lp(&[]), lp(&[])]);
        check(&RingMatrix::from_levels(f7(), p, &[l0, l1]));
    }

    #[test]
    fn scalar_case_agrees_with_scalar_split() {
        let p = Precision::new(4, 30, 30);
        let a0 = lp(&[(2, 3), (1, 1), (-1, 2)]);
        let a = RingMatrix::from_levels(
            f7(),
            p,
            &[
                LaurentMatrix::new(f7(), 1, vec![a0.clone()]),
                LaurentMatrix::new(f7(), 1, vec![lp(&[(3, 1), (-3, 1)])]),
            ],
        );
        check(&a);
        let split = crate::cartan::factor_mod_t_matrix(&a.level(0), -30).unwrap();
        let (b, c) = factor_mod_t_scalar(&a0, -30).unwrap();
        assert!(split.b.get(0, 0).eq_at(&b));
        assert!(split.c.get(0, 0).eq_at(&c));
    }
}
