//! Truncated rings over k[[t]].
//!
//! Three of the rings are graded by powers of t and share one generic
//! container, [`TSeries`], whose t-levels live in a coefficient ring:
//!
//! * [`SeriesTx`]: T⟨x⟩, levels are exact polynomials in x;
//! * [`SeriesTTx`]: T[[x]], levels are power series in x known mod xⁿ;
//! * [`SeriesLaurentT`]: k((x⁻¹))[[t]], levels are [`Laurent`] series in x⁻¹.
//!
//! The fourth, [`SeriesXY`] for k[[x,y]], has no t-grading.

mod laurent;
mod tseries;
mod xy;

pub use laurent::Laurent;
pub use tseries::{Coeff, TSeries, TruncPoly};
pub use xy::SeriesXY;

use crate::error::{Error, Result};
use crate::field::GroundField;
use crate::poly::Poly;
use crate::precision::Precision;

pub type SeriesTx = TSeries<Poly>;
pub type SeriesTTx = TSeries<TruncPoly>;
pub type SeriesLaurentT = TSeries<Laurent>;

/// The ring a series lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Tx,
    TTx,
    LaurentT,
    XY,
}

impl RingKind {
    pub fn name(&self) -> &'static str {
        match self {
            RingKind::Tx => "Tx",
            RingKind::TTx => "TTx",
            RingKind::LaurentT => "LaurentT",
            RingKind::XY => "XY",
        }
    }

    pub fn parse(s: &str) -> Result<RingKind> {
        match s {
            "Tx" => Ok(RingKind::Tx),
            "TTx" => Ok(RingKind::TTx),
            "LaurentT" => Ok(RingKind::LaurentT),
            "XY" => Ok(RingKind::XY),
            other => Err(Error::Parse(format!("unknown ring {other:?}"))),
        }
    }
}

/// A series in any of the four rings.
#[derive(Clone, Debug, PartialEq)]
pub enum AnySeries {
    Tx(SeriesTx),
    TTx(SeriesTTx),
    LaurentT(SeriesLaurentT),
    XY(SeriesXY),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl AnySeries {
    pub fn kind(&self) -> RingKind {
        match self {
            AnySeries::Tx(_) => RingKind::Tx,
            AnySeries::TTx(_) => RingKind::TTx,
            AnySeries::LaurentT(_) => RingKind::LaurentT,
            AnySeries::XY(_) => RingKind::XY,
        }
    }

    pub fn field(&self) -> GroundField {
        match self {
            AnySeries::Tx(s) => s.field(),
            AnySeries::TTx(s) => s.field(),
            AnySeries::LaurentT(s) => s.field(),
            AnySeries::XY(s) => s.field(),
        }
    }

    pub fn precision(&self) -> Precision {
        match self {
            AnySeries::Tx(s) => s.precision(),
            AnySeries::TTx(s) => s.precision(),
            AnySeries::LaurentT(s) => s.precision(),
            AnySeries::XY(s) => s.precision(),
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            AnySeries::Tx(s) => s.is_unit(),
            AnySeries::TTx(s) => s.is_unit(),
            AnySeries::LaurentT(s) => s.is_unit(),
            AnySeries::XY(s) => s.is_unit(),
        }
    }

    pub fn invert_unit(&self) -> Result<AnySeries> {
        Ok(match self {
            AnySeries::Tx(s) => AnySeries::Tx(s.inverse()?),
            AnySeries::TTx(s) => AnySeries::TTx(s.inverse()?),
            AnySeries::LaurentT(s) => AnySeries::LaurentT(s.inverse()?),
            AnySeries::XY(s) => AnySeries::XY(s.inverse()?),
        })
    }
}

impl std::fmt::Display for AnySeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AnySeries::Tx(s) => s.fmt(f),
            AnySeries::TTx(s) => s.fmt(f),
            AnySeries::LaurentT(s) => s.fmt(f),
            AnySeries::XY(s) => s.fmt(f),
        }
    }
}

/// Adds, subtracts or multiplies two series of the same ring and field.
pub fn ring_arith(a: &AnySeries, b: &AnySeries, op: ArithOp) -> Result<AnySeries> {
    if a.field() != b.field() {
        return Err(Error::RingMismatch(format!(
            "ground fields {} and {}",
            a.field(),
            b.field()
        )));
    }
    macro_rules! apply {
        ($x:expr, $y:expr) => {
            match op {
                ArithOp::Add => $x.add($y),
                ArithOp::Sub => $x.sub($y),
                ArithOp::Mul => $x.mul($y),
            }
        };
    }
    Ok(match (a, b) {
        (AnySeries::Tx(x), AnySeries::Tx(y)) => AnySeries::Tx(apply!(x, y)),
        (AnySeries::TTx(x), AnySeries::TTx(y)) => AnySeries::TTx(apply!(x, y)),
        (AnySeries::LaurentT(x), AnySeries::LaurentT(y)) => AnySeries::LaurentT(apply!(x, y)),
        (AnySeries::XY(x), AnySeries::XY(y)) => AnySeries::XY(apply!(x, y)),
        _ => {
            return Err(Error::RingMismatch(format!(
                "{} and {}",
                a.kind().name(),
                b.kind().name()
            )))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mismatched_rings_are_rejected() {
        let p = Precision::new(3, 4, 2);
        let q = GroundField::Rationals;
        let a = AnySeries::Tx(SeriesTx::one(q, p));
        let b = AnySeries::TTx(SeriesTTx::one(q, p));
        assert!(matches!(ring_arith(&a, &b, ArithOp::Add), Err(Error::RingMismatch(_))));
        let c = AnySeries::Tx(SeriesTx::one(GroundField::Prime(5), p));
        assert!(matches!(ring_arith(&a, &c, ArithOp::Mul), Err(Error::RingMismatch(_))));
        assert!(ring_arith(&a, &a, ArithOp::Mul).is_ok());
    }
}
