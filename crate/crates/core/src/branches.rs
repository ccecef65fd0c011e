//! Branches of a split node t = F(x, y) in k[[x,y]]: parametrizations
//! y = φ(x), branch valuations, and the equal-valuation obstruction for
//! writing an element as (global) × (unit).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{GroundField, Scalar};
use crate::poly::Poly;
use crate::precision::Precision;
use crate::series::SeriesXY;

/// k[[x,y]] with a distinguished element t whose zero locus is a split node.
#[derive(Clone, Debug, PartialEq)]
pub struct NodalLocalRing {
    t_element: SeriesXY,
    /// Tangent slopes λ of the two branches y ≈ λx.
    slopes: [Scalar; 2],
}

impl NodalLocalRing {
    /// Checks that t has a split node at the origin: no constant or linear
    /// part, and a quadratic part αx² + βxy + γy² with γ ≠ 0 and nonzero
    /// square discriminant.
    pub fn new(t_element: SeriesXY) -> Result<Self> {
        let field = t_element.field();
        if field.characteristic() == 2 {
            return Err(Error::CharTwo);
        }
        if t_element.n() < 3 {
            return Err(Error::PrecisionExhausted("need total degree at least 3".into()));
        }
        if (0..2).any(|d| t_element.form(d).iter().any(|c| !c.is_zero())) {
            return Err(Error::NotSplitNode("t has a constant or linear term".into()));
        }
        let q = t_element.form(2);
        let (alpha, beta, gamma) = (&q[0], &q[1], &q[2]);
        let disc = &(beta * beta) - &(&field.from_i64(4) * &(alpha * gamma));
        if disc.is_zero() {
            return Err(Error::NotSplitNode("tangent cone is degenerate".into()));
        }
        let root = disc
            .sqrt()
            .ok_or_else(|| Error::NotSplitNode(format!("tangent cone is irreducible over {field}")))?;
        if gamma.is_zero() {
            return Err(Error::VerticalTangent);
        }
        let denom = (&field.from_i64(2) * gamma).inv().unwrap();
        let slopes = [
            &(&(-beta) + &root) * &denom,
            &(&(-beta) - &root) * &denom,
        ];
        Ok(NodalLocalRing { t_element, slopes })
    }

    pub fn t_element(&self) -> &SeriesXY {
        &self.t_element
    }

    pub fn field(&self) -> GroundField {
        self.t_element.field()
    }

    pub fn precision(&self) -> Precision {
        self.t_element.precision()
    }
}

/// One branch y = φ(x) of the node.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchData {
    pub label: String,
    pub slope: Scalar,
    /// φ, known modulo x^(n_x − 1).
    pub parametrization: Poly,
    /// y − φ(x)
    pub generator: SeriesXY,
    pub component_id: usize,
}

/// The two branches, in the order of the tangent slopes (−β ± √disc)/2γ.
pub fn branch_decompose(ring: &NodalLocalRing) -> Result<Vec<BranchData>> {
    let t = ring.t_element();
    let field = ring.field();
    let prec = ring.precision();
    let n = t.n();
    let q = t.form(2);
    let mut out = Vec::with_capacity(2);
    for (idx, lambda) in ring.slopes.iter().enumerate() {
        // F(x, φ + c·xʲ) gains c·(β + 2γλ)·x^(j+1) at lowest order.
        let deriv = &q[1] + &(&field.from_i64(2) * &(&q[2] * lambda));
        let deriv_inv = deriv.inv().expect("split node has simple tangents");
        let mut phi = Poly::monomial(lambda.clone(), 1);
        for j in 2..n - 1 {
            let value = substitute(t, &phi, n);
            let c = -(&value.coeff(j + 1) * &deriv_inv);
            phi = &phi + &Poly::monomial(c, j);
        }
        let generator = SeriesXY::y(field, prec).sub(&SeriesXY::from_x_poly(&phi, prec));
        out.push(BranchData {
            label: format!("branch{idx}"),
            slope: lambda.clone(),
            parametrization: phi,
            generator,
            component_id: 0,
        });
    }
    Ok(out)
}

/// F(x, φ(x)) mod xⁿ.
fn substitute(f: &SeriesXY, phi: &Poly, n: usize) -> Poly {
    let mut acc = Poly::zero(f.field());
    for b in (0..f.n()).rev() {
        acc = &acc.mul_trunc(phi, n) + f.y_coeff(b);
    }
    acc.truncate(n)
}

/// a(x, φ(x) + ε) = Σⱼ aⱼ(x)·εʲ by Horner's rule in y, truncating in x
/// after every step.
fn expand_along(a: &SeriesXY, phi: &Poly) -> Vec<Poly> {
    let n = a.n();
    let field = a.field();
    let mut r: Vec<Poly> = Vec::new();
    for b in (0..n).rev() {
        let mut next = vec![Poly::zero(field); r.len() + 1];
        for (j, c) in r.iter().enumerate() {
            next[j] = &next[j] + &c.mul_trunc(phi, n);
            next[j + 1] = &next[j + 1] + c;
        }
        next[0] = &next[0] + a.y_coeff(b);
        r = next;
    }
    r
}

/// v_β(a) = min{ j : aⱼ ≠ 0 } in the expansion a(x, φ + ε) = Σ aⱼ(x)εʲ.
///
/// Coefficient aⱼ is known modulo x^(n_x − 1 − j) (the total-degree
/// truncation and the precision of φ both cost x-adic digits); if none of
/// the known parts is nonzero the valuation is out of reach.
pub fn branch_valuation(a: &SeriesXY, branch: &BranchData) -> Result<usize> {
    let n = a.n().min(branch.generator.n());
    let a = a.restrict_degree(n);
    let expansion = expand_along(&a, &branch.parametrization);
    for (j, aj) in expansion.iter().enumerate() {
        let known = (n - 1).saturating_sub(j);
        if !aj.truncate(known).is_zero() {
            return Ok(j);
        }
    }
    Err(Error::PrecisionExhausted(format!(
        "valuation along {} exceeds the available precision",
        branch.label
    )))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub branches: [String; 2],
    pub v: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    /// (branch label, valuation) in branch order.
    pub valuations: Vec<(String, usize)>,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

/// Passes iff branches on a common component see the same valuation of a.
/// `component_map[i]` is the component of branch i; `None` puts every
/// branch on one component.
pub fn obstruction_check(
    a: &SeriesXY,
    ring: &NodalLocalRing,
    component_map: Option<&[usize]>,
) -> Result<ObstructionReport> {
    let mut branches = branch_decompose(ring)?;
    if let Some(map) = component_map {
        if map.len() != branches.len() {
            return Err(Error::InvalidDescriptor(format!(
                "component map has {} entries for {} branches",
                map.len(),
                branches.len()
            )));
        }
        for (b, &c) in branches.iter_mut().zip(map) {
            b.component_id = c;
        }
    }
    let vals = branches
        .iter()
        .map(|b| branch_valuation(a, b))
        .collect::<Result<Vec<_>>>()?;
    let mut witness = None;
    'outer: for i in 0..branches.len() {
        for j in i + 1..branches.len() {
            if branches[i].component_id == branches[j].component_id && vals[i] != vals[j] {
                witness = Some(Witness {
                    branches: [branches[i].label.clone(), branches[j].label.clone()],
                    v: [vals[i], vals[j]],
                });
                break 'outer;
            }
        }
    }
    Ok(ObstructionReport {
        valuations: branches.iter().map(|b| b.label.clone()).zip(vals).collect(),
        verdict: if witness.is_some() { Verdict::Fail } else { Verdict::Pass },
        witness,
    })
}

/// a = t^m·a′ where m is the common branch valuation (all branches on one
/// component); a′ then has valuation 0 on every branch. Each division by t
/// costs two degrees of total-degree precision.
pub fn normalize_valuations(
    a: &SeriesXY,
    ring: &NodalLocalRing,
) -> Result<(usize, SeriesXY, ObstructionReport)> {
    let report = obstruction_check(a, ring, None)?;
    if let Some(w) = &report.witness {
        return Err(Error::ObstructionFails(format!(
            "v({}) = {} but v({}) = {}",
            w.branches[0], w.v[0], w.branches[1], w.v[1]
        )));
    }
    let m = report.valuations.first().map_or(0, |(_, v)| *v);
    let mut quotient = a.clone();
    for _ in 0..m {
        quotient = quotient.exact_div(ring.t_element())?;
    }
    Ok((m, quotient, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hensel::hensel_sqrt_in_x;

    fn q() -> GroundField {
        GroundField::Rationals
    }

    fn nodal_cubic(n: usize) -> NodalLocalRing {
        let p = Precision::new(1, n, 0);
        NodalLocalRing::new(SeriesXY::from_i64_terms(q(), p, &[(0, 2, 1), (2, 0, -1), (3, 0, -1)])).unwrap()
    }

    #[test]
    fn branches_of_nodal_cubic_are_plus_minus_xz() {
        let n = 12;
        let ring = nodal_cubic(n);
        let br = branch_decompose(&ring).unwrap();
        let z = hensel_sqrt_in_x(&Poly::from_i64s(q(), &[1, 1]), n).unwrap();
        let xz = z.shift(1);
        assert_eq!(br[0].parametrization, xz.truncate(n - 1));
        assert_eq!(br[1].parametrization, (-&xz).truncate(n - 1));
    }

    #[test]
    fn valuations_at_the_node() {
        let n = 12;
        let ring = nodal_cubic(n);
        let br = branch_decompose(&ring).unwrap();
        let a = br[0].generator.clone();
        assert_eq!(branch_valuation(&a, &br[0]).unwrap(), 1);
        assert_eq!(branch_valuation(&a, &br[1]).unwrap(), 0);
        for b in &br {
            assert_eq!(branch_valuation(ring.t_element(), b).unwrap(), 1);
        }
        let report = obstruction_check(&a, &ring, None).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        assert_eq!(report.witness.unwrap().v, [1, 0]);
        let split = obstruction_check(&a, &ring, Some(&[0, 1])).unwrap();
        assert_eq!(split.verdict, Verdict::Pass);
        assert!(matches!(normalize_valuations(&a, &ring), Err(Error::ObstructionFails(_))));
    }

    #[test]
    fn normalization_divides_out_t() {
        let n = 12;
        let ring = nodal_cubic(n);
        let t = ring.t_element().clone();
        let (m, rest, _) = normalize_valuations(&t, &ring).unwrap();
        assert_eq!(m, 1);
        assert!(rest.eq_at(&SeriesXY::one(q(), t.precision())));
        let unit = SeriesXY::from_x_poly(&Poly::from_i64s(q(), &[1, 1]), t.precision());
        let a = t.mul(&t).mul(&unit);
        let (m, rest, _) = normalize_valuations(&a, &ring).unwrap();
        assert_eq!(m, 2);
        assert_eq!(rest.n(), n - 4);
        assert!(rest.eq_at(&unit));
    }

    #[test]
    fn guards() {
        let p = Precision::new(1, 6, 0);
        let ell = SeriesXY::from_i64_terms(q(), p, &[(0, 2, 1), (2, 0, 1)]);
        assert!(matches!(NodalLocalRing::new(ell), Err(Error::NotSplitNode(_))));
        let cusp = SeriesXY::from_i64_terms(q(), p, &[(0, 2, 1), (3, 0, -1)]);
        assert!(matches!(NodalLocalRing::new(cusp), Err(Error::NotSplitNode(_))));
        let vertical = SeriesXY::from_i64_terms(q(), p, &[(1, 1, 1), (2, 0, 1)]);
        assert_eq!(NodalLocalRing::new(vertical), Err(Error::VerticalTangent));
        let f3 = GroundField::prime(3).unwrap();
        let lines = SeriesXY::from_i64_terms(f3, p, &[(0, 2, 1), (2, 0, -1)]);
        assert!(NodalLocalRing::new(lines).is_ok());
        let f2 = GroundField::prime(2).unwrap();
        let lines = SeriesXY::from_i64_terms(f2, p, &[(0, 2, 1), (1, 1, 1)]);
        assert_eq!(NodalLocalRing::new(lines), Err(Error::CharTwo));
    }
}
