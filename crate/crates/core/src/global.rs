//! Elements of the function field F = K(x), held as a ratio of T⟨x⟩ values.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::series::{Laurent, SeriesLaurentT, SeriesTx};

/// num / den with den nonzero at the stated precision.
#[derive(Clone, Debug, PartialEq)]
pub struct GlobalElement {
    num: SeriesTx,
    den: SeriesTx,
}

impl GlobalElement {
    pub fn new(num: SeriesTx, den: SeriesTx) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(GlobalElement { num, den })
    }

    /// num / 1
    pub fn from_series(num: SeriesTx) -> Self {
        let den = SeriesTx::one(num.field(), num.precision());
        GlobalElement { num, den }
    }

    pub fn num(&self) -> &SeriesTx {
        &self.num
    }

    pub fn den(&self) -> &SeriesTx {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The image in k((x⁻¹))[[t]], the completion at x = ∞. Requires the
    /// denominator to be a unit there.
    pub fn to_laurent(&self, prec: crate::Precision) -> Result<SeriesLaurentT> {
        let lift = |s: &SeriesTx| {
            let floor = -(prec.n_x as i64);
            SeriesLaurentT::new(
                s.field(),
                prec.meet(&s.precision()),
                s.levels().iter().map(|p: &Poly| Laurent::from_poly(p, floor)).collect(),
            )
        };
        Ok(lift(&self.num).mul(&lift(&self.den).inverse()?))
    }
}

impl fmt::Display for GlobalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = SeriesTx::one(self.den.field(), self.den.precision());
        if self.den == one {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
