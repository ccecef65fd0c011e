//! Weierstrass division and preparation in T[[x]] and T⟨x⟩, and the scalar
//! factorizations a = b·c and a = b·cⁿ with b global and c a local unit.
//!
//! Polynomials over T are stored as [`SeriesTx`] values of bounded x-degree.

use crate::error::{Error, Result};
use crate::field::GroundField;
use crate::global::GlobalElement;
use crate::poly::Poly;
use crate::precision::Precision;
use crate::series::{Laurent, SeriesLaurentT, SeriesTTx, SeriesTx, TruncPoly};

/// input = t^m · u · g with g monic of degree d.
///
/// `g` and `unit` are known mod t^(n_t − m); the factor t^m restores the
/// full precision of the input.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassFactorization<U> {
    pub t_power: usize,
    pub degree: usize,
    pub g: SeriesTx,
    pub unit: U,
    pub input_precision: Precision,
}

impl WeierstrassFactorization<SeriesTx> {
    /// t^m·u·g at the input precision.
    pub fn recompose(&self) -> SeriesTx {
        self.unit
            .mul(&self.g)
            .pad_t(self.input_precision.n_t)
            .shift_t(self.t_power)
    }

    /// b = t^m·g as an element of F.
    pub fn global_part(&self) -> GlobalElement {
        GlobalElement::from_series(self.g.pad_t(self.input_precision.n_t).shift_t(self.t_power))
    }
}

impl WeierstrassFactorization<SeriesTTx> {
    pub fn recompose(&self) -> SeriesTTx {
        let g = tx_to_ttx(&self.g, self.unit.precision());
        self.unit
            .mul(&g)
            .pad_t(self.input_precision.n_t)
            .shift_t(self.t_power)
    }
}

/// Reads a polynomial over T as an element of T[[x]] at `prec`.
pub fn tx_to_ttx(g: &SeriesTx, prec: Precision) -> SeriesTTx {
    SeriesTTx::new(
        g.field(),
        prec,
        g.levels()
            .iter()
            .map(|p| TruncPoly::new(p.clone(), prec.n_x))
            .collect(),
    )
}

/// True when g is monic of degree d with g ≡ xᵈ mod t.
pub fn is_distinguished(g: &SeriesTx, d: usize) -> bool {
    let field = g.field();
    g.levels().first() == Some(&Poly::monomial(field.one(), d))
        && g.levels()[1..].iter().all(|c| c.degree().is_none_or(|k| k < d))
}

/// f = q·g + r with deg_x r < d, for g distinguished of degree d.
///
/// Each pass splits the residual as (residual div xᵈ)·xᵈ + (residual mod xᵈ);
/// subtracting q·g + r leaves a residual divisible by one more power of t, so
/// n_t passes suffice. The known part of f is treated as an exact polynomial,
/// which keeps every intermediate degree below n_x.
pub fn weierstrass_divide_local(f: &SeriesTTx, g: &SeriesTx) -> Result<(SeriesTTx, SeriesTx)> {
    let field = f.field();
    if g.field() != field {
        return Err(Error::RingMismatch("divisor over a different field".into()));
    }
    let d = g
        .levels()
        .first()
        .and_then(Poly::degree)
        .ok_or_else(|| Error::NotDistinguished("divisor vanishes mod t".into()))?;
    if !is_distinguished(g, d) {
        return Err(Error::NotDistinguished(
            "divisor must be monic with reduction x^d mod t".into(),
        ));
    }
    let prec = f.precision().meet(&g.precision());
    let n_t = prec.n_t;
    let xd = Poly::monomial(field.one(), d);
    let g = g.restrict(&prec);
    let mut residual = SeriesTx::new(
        field,
        prec,
        f.levels().iter().map(|c| c.poly().clone()).collect(),
    );
    let mut q = SeriesTx::zero(field, prec);
    let mut r = SeriesTx::zero(field, prec);
    for _ in 0..n_t {
        let mut ql = Vec::with_capacity(n_t);
        let mut rl = Vec::with_capacity(n_t);
        for c in residual.levels() {
            let (qq, rr) = c.div_rem(&xd);
            ql.push(qq);
            rl.push(rr);
        }
        let dq = SeriesTx::new(field, prec, ql);
        let dr = SeriesTx::new(field, prec, rl);
        residual = residual.sub(&dq.mul(&g)).sub(&dr);
        q = q.add(&dq);
        r = r.add(&dr);
    }
    debug_assert!(residual.is_zero());
    Ok((tx_to_ttx(&q, prec), r))
}

/// Restricted preparation in T⟨x⟩: a = t^m·u·g with g monic of degree
/// deg(a/t^m mod t) and u a unit (its reduction mod t a nonzero constant).
pub fn prepare_restricted(a: &SeriesTx) -> Result<WeierstrassFactorization<SeriesTx>> {
    let field = a.field();
    let m = a.t_order()?;
    let a1 = a.unshift_t(m)?;
    let prec = a1.precision();
    let abar = a1.level(0);
    let d = abar.degree().expect("lowest level is nonzero");
    let lead = abar.leading().unwrap().clone();
    let lead_inv = lead.inv().unwrap();
    let g0 = abar.scale(&lead_inv);
    let mut u: Vec<Poly> = vec![Poly::constant(lead)];
    let mut g: Vec<Poly> = vec![g0.clone()];
    for k in 1..prec.n_t {
        let mut e = a1.level(k).clone();
        for i in 1..k {
            e = &e - &(&u[i] * &g[k - i]);
        }
        let (du, rem) = e.div_rem(&g0);
        u.push(du);
        g.push(rem.scale(&lead_inv));
    }
    Ok(WeierstrassFactorization {
        t_power: m,
        degree: d,
        g: SeriesTx::new(field, prec, g),
        unit: SeriesTx::new(field, prec, u),
        input_precision: a.precision(),
    })
}

/// Local preparation in T[[x]]: f = t^m·u·g with g ≡ x^d mod t monic of
/// degree d = x-order of (f/t^m mod t), and u a unit of T[[x]].
///
/// The known part of f is read as an exact polynomial and the lifting runs
/// with x-precision n_x + n_t·d, since each t-level costs d x-coefficients.
/// Outputs are truncated back to n_x.
pub fn prepare_local(f: &SeriesTTx) -> Result<WeierstrassFactorization<SeriesTTx>> {
    let field = f.field();
    let m = f.t_order()?;
    let f1 = f.unshift_t(m)?;
    let prec = f1.precision();
    let n_x = prec.n_x;
    let fbar = f1.level(0).poly();
    let d = fbar.order().expect("lowest level is nonzero");
    let work = n_x + prec.n_t * d;
    let e0 = fbar.shift_down(d);
    let e0_inv = e0.inv_trunc(work)?;
    let mut u: Vec<Poly> = vec![e0.clone()];
    let mut g: Vec<Poly> = vec![Poly::monomial(field.one(), d)];
    for k in 1..prec.n_t {
        let mut e = f1.level(k).poly().clone();
        for i in 1..k {
            e = &e - &u[i].mul_trunc(&g[k - i], work);
        }
        let w = e.mul_trunc(&e0_inv, work);
        let gk = w.truncate(d);
        let uk = e0.mul_trunc(&(&w - &gk).shift_down(d), work);
        u.push(uk);
        g.push(gk);
    }
    let unit = SeriesTTx::new(
        field,
        prec,
        u.into_iter().map(|p| TruncPoly::new(p, n_x)).collect(),
    );
    Ok(WeierstrassFactorization {
        t_power: m,
        degree: d,
        g: SeriesTx::new(field, prec, g),
        unit,
        input_precision: f.precision(),
    })
}

/// a = b·c with b = t^m ∈ F and c a unit of k((x⁻¹))[[t]].
#[derive(Clone, Debug, PartialEq)]
pub struct BranchFactorization {
    pub t_power: usize,
    pub b: GlobalElement,
    pub c: SeriesLaurentT,
}

/// Splits off the power of the uniformizer t. The zero element factors as
/// b = 0, c = 1.
pub fn factor_branch(a: &SeriesLaurentT) -> Result<BranchFactorization> {
    let field = a.field();
    let prec = a.precision();
    if a.is_zero() {
        return Ok(BranchFactorization {
            t_power: 0,
            b: GlobalElement::from_series(SeriesTx::zero(field, prec)),
            c: SeriesLaurentT::one(field, prec),
        });
    }
    let m = a.t_order()?;
    Ok(BranchFactorization {
        t_power: m,
        b: GlobalElement::from_series(SeriesTx::t_power(field, prec, m)),
        c: a.unshift_t(m)?,
    })
}

/// a = b·cⁿ with b ∈ F and c a unit.
#[derive(Clone, Debug, PartialEq)]
pub struct NthPowerNormalForm<S> {
    pub global_part: GlobalElement,
    pub root_part: S,
    pub exponent: u64,
}

impl NthPowerNormalForm<SeriesTx> {
    pub fn recompose(&self) -> SeriesTx {
        let n_t = self.global_part.num().n_t();
        self.global_part
            .num()
            .mul(&self.root_part.pad_t(n_t).pow(self.exponent))
    }
}

impl NthPowerNormalForm<SeriesLaurentT> {
    pub fn recompose(&self, prec: Precision) -> Result<SeriesLaurentT> {
        let b = self.global_part.to_laurent(prec)?;
        Ok(b.mul(&self.root_part.pad_t(prec.n_t).pow(self.exponent)))
    }
}

fn nth_power_guards(field: GroundField, n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::HypothesisViolated("exponent must be positive".into()));
    }
    if field.char_divides(n) {
        return Err(Error::CharDividesN {
            n,
            p: field.characteristic(),
        });
    }
    Ok(())
}

/// a = b·cⁿ in T⟨x⟩: prepare a = t^m·u·g, pull out the constant ū of u mod
/// t, and take the n-th root of u/ū ≡ 1 mod t. Then b = t^m·ū·g.
pub fn factor_mod_nth_power_tx(a: &SeriesTx, n: u64) -> Result<NthPowerNormalForm<SeriesTx>> {
    nth_power_guards(a.field(), n)?;
    let w = prepare_restricted(a)?;
    let ubar = w.unit.level(0).coeff(0);
    let ratio = w.unit.scale(&ubar.inv().unwrap());
    let c = ratio.nth_root(n)?;
    let b = w.global_part().num().scale(&ubar);
    Ok(NthPowerNormalForm {
        global_part: GlobalElement::from_series(b),
        root_part: c,
        exponent: n,
    })
}

/// a = b·cⁿ in k((x⁻¹))[[t]]: split off t^m, lift the reduction c̄ of the
/// remaining unit to the Laurent polynomial formed by its known terms, and
/// take the n-th root of the quotient.
pub fn factor_mod_nth_power_laurent(
    a: &SeriesLaurentT,
    n: u64,
) -> Result<NthPowerNormalForm<SeriesLaurentT>> {
    let field = a.field();
    let prec = a.precision();
    nth_power_guards(field, n)?;
    if a.is_zero() {
        return Err(Error::PrecisionExhausted("series vanishes to full t-precision".into()));
    }
    let split = factor_branch(a)?;
    let unit = split.c;
    let cbar = unit.level(0).clone();
    let shift = (-cbar.bottom().unwrap()).max(0);
    let lifted_num = Poly::new(
        field,
        (0..=cbar.top().unwrap() + shift)
            .map(|j| cbar.coeff(j - shift))
            .collect(),
    );
    let floor = -(prec.n_x as i64);
    let lift = SeriesLaurentT::from_level(
        field,
        unit.precision(),
        Laurent::from_poly(&lifted_num, floor).shift(-shift).with_floor_at_least(floor),
        0,
    );
    let ratio = unit.mul(&lift.inverse()?);
    let c = ratio.nth_root(n)?;
    let num = SeriesTx::from_level(field, prec, lifted_num, split.t_power);
    let den = SeriesTx::from_level(field, prec, Poly::monomial(field.one(), shift as usize), 0);
    Ok(NthPowerNormalForm {
        global_part: GlobalElement::new(num, den)?,
        root_part: c,
        exponent: n,
    })
}
