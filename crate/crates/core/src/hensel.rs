//! Hensel lifting: n-th roots of units ≡ 1 mod t and square roots in k[[x]].

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::series::{AnySeries, Coeff, TSeries};

/// r with rⁿ = u at the precision of u and r ≡ 1 mod t.
pub fn hensel_nth_root<C: Coeff>(u: &TSeries<C>, n: u64) -> Result<TSeries<C>> {
    u.nth_root(n)
}

/// Dispatches [`hensel_nth_root`] over the t-graded rings.
pub fn hensel_nth_root_any(u: &AnySeries, n: u64) -> Result<AnySeries> {
    Ok(match u {
        AnySeries::Tx(s) => AnySeries::Tx(s.nth_root(n)?),
        AnySeries::TTx(s) => AnySeries::TTx(s.nth_root(n)?),
        AnySeries::LaurentT(s) => AnySeries::LaurentT(s.nth_root(n)?),
        AnySeries::XY(_) => {
            return Err(Error::RingMismatch("k[[x,y]] has no t-adic grading".into()))
        }
    })
}

/// z with z² = f mod xⁿ, for f with a nonzero square constant term.
///
/// Newton's iteration z ↦ (z + f/z)/2 doubles the number of correct
/// x-coefficients per step.
pub fn hensel_sqrt_in_x(f: &Poly, n: usize) -> Result<Poly> {
    let field = f.field();
    if field.characteristic() == 2 {
        return Err(Error::CharTwo);
    }
    let c0 = f.coeff(0);
    if c0.is_zero() {
        return Err(Error::NotASquareResidue);
    }
    let z0 = c0.sqrt().ok_or(Error::NotASquareResidue)?;
    let half = field.from_i64(2).inv().unwrap();
    let mut z = Poly::constant(z0);
    let mut known = 1;
    while known < n {
        known = (2 * known).min(n);
        let quotient = f.mul_trunc(&z.inv_trunc(known)?, known);
        z = (&z + &quotient).scale(&half).truncate(known);
    }
    Ok(z.truncate(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GroundField;

    #[test]
    fn sqrt_one_plus_x_matches_binomial_series() {
        let q = GroundField::Rationals;
        let n = 10;
        let z = hensel_sqrt_in_x(&Poly::from_i64s(q, &[1, 1]), n).unwrap();
        let mut c = q.one();
        for k in 0..n {
            assert_eq!(z.coeff(k), c);
            let step = q.parse(&format!("{}/{}", 1 - 2 * k as i64, 2 * (k as i64 + 1))).unwrap();
            c = &c * &step;
        }
        assert_eq!(z.mul_trunc(&z, n), Poly::from_i64s(q, &[1, 1]));
    }

    #[test]
    fn sqrt_guards() {
        let q = GroundField::Rationals;
        assert_eq!(hensel_sqrt_in_x(&Poly::one(q), 5).unwrap(), Poly::one(q));
        assert_eq!(hensel_sqrt_in_x(&Poly::x(q), 5), Err(Error::NotASquareResidue));
        assert_eq!(
            hensel_sqrt_in_x(&Poly::from_i64s(q, &[2, 1]), 5),
            Err(Error::NotASquareResidue)
        );
        let f3 = GroundField::prime(3).unwrap();
        assert_eq!(hensel_sqrt_in_x(&Poly::from_i64s(f3, &[2, 1]), 5), Err(Error::NotASquareResidue));
        let f2 = GroundField::prime(2).unwrap();
        assert_eq!(hensel_sqrt_in_x(&Poly::one(f2), 5), Err(Error::CharTwo));
    }

    #[test]
    fn sqrt_over_prime_field() {
        let f7 = GroundField::prime(7).unwrap();
        let f = Poly::from_i64s(f7, &[2, 3, 0, 5]);
        let z = hensel_sqrt_in_x(&f, 9).unwrap();
        assert_eq!(z.mul_trunc(&z, 9), f.truncate(9));
    }
}
