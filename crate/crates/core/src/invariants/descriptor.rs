//! Symbolic descriptions of the field towers the bound engine reasons about.

use std::fmt;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::is_prime;

/// One constructor in a tower, innermost first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum TowerStep {
    AlgClosed,
    Finite,
    Cd {
        d: u32,
    },
    SepClosedAwayFromP,
    BrauerDim {
        d: u32,
        #[serde(default = "yes")]
        away_from_p: bool,
    },
    ExplicitU {
        u: u64,
        u_s: u64,
    },
    /// Fraction field of a complete discrete valuation ring whose residue
    /// field is the previous step.
    CompleteDV,
    /// Rational function field k(u) over the previous step.
    RationalFunctionField,
    /// A finite separable extension of k((x,t)) over the current k.
    TwoDimLocal,
    /// A patch field F_ξ of a normal model over T with residue field k.
    ModelPoint,
}

fn yes() -> bool {
    true
}

impl TowerStep {
    pub fn is_base(&self) -> bool {
        matches!(
            self,
            TowerStep::AlgClosed
                | TowerStep::Finite
                | TowerStep::Cd { .. }
                | TowerStep::SepClosedAwayFromP
                | TowerStep::BrauerDim { .. }
                | TowerStep::ExplicitU { .. }
        )
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self, TowerStep::TwoDimLocal | TowerStep::ModelPoint)
    }
}

/// Characteristic of the residue field k: zero, an unspecified p, or a
/// concrete prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Characteristic {
    Zero,
    Symbolic,
    Prime(u64),
}

/// Result of evaluating a guard that may depend on an unknown characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Guard {
    Pass,
    Fail,
    Unknown,
}

impl Characteristic {
    pub fn not_two(self) -> Guard {
        match self {
            Characteristic::Zero => Guard::Pass,
            Characteristic::Prime(2) => Guard::Fail,
            Characteristic::Prime(_) => Guard::Pass,
            Characteristic::Symbolic => Guard::Unknown,
        }
    }

    pub fn positive(self) -> bool {
        !matches!(self, Characteristic::Zero)
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Characteristic::Zero => f.write_str("0"),
            Characteristic::Symbolic => f.write_str("p"),
            Characteristic::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Characteristic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Characteristic::Prime(p) => s.serialize_u64(*p),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Characteristic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Str(String),
        }
        let n = match Raw::deserialize(d)? {
            Raw::Str(s) if s == "p" => return Ok(Characteristic::Symbolic),
            Raw::Str(s) => s
                .parse::<u64>()
                .map_err(|_| de::Error::custom(format!("bad characteristic {s:?}")))?,
            Raw::Int(n) => n,
        };
        match n {
            0 => Ok(Characteristic::Zero),
            p if is_prime(p) => Ok(Characteristic::Prime(p)),
            p => Err(de::Error::custom(format!("characteristic {p} is not prime"))),
        }
    }
}

/// A residue-field tower: one base, then residue steps, then at most one
/// terminal constructor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub tower: Vec<TowerStep>,
    #[serde(rename = "char")]
    pub characteristic: Characteristic,
    /// Whether the periods under consideration are prime to the residue
    /// characteristic.
    #[serde(default = "yes")]
    pub period_prime_to_p: bool,
}

impl FieldDescriptor {
    pub fn new(tower: Vec<TowerStep>, characteristic: Characteristic) -> Result<Self> {
        let d = FieldDescriptor {
            tower,
            characteristic,
            period_prime_to_p: true,
        };
        d.check()?;
        Ok(d)
    }

    /// Base, `m` complete discretely valued steps, then `terminal` if given.
    pub fn m_local(base: TowerStep, m: usize, terminal: Option<TowerStep>, characteristic: Characteristic) -> Result<Self> {
        let mut tower = vec![base];
        tower.extend(std::iter::repeat_n(TowerStep::CompleteDV, m));
        tower.extend(terminal);
        Self::new(tower, characteristic)
    }

    pub fn parse_json(s: &str) -> Result<Self> {
        let d: FieldDescriptor = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        d.check()?;
        Ok(d)
    }

    pub fn check(&self) -> Result<()> {
        let base = self
            .tower
            .first()
            .ok_or_else(|| Error::InvalidDescriptor("empty tower".into()))?;
        if !base.is_base() {
            return Err(Error::InvalidDescriptor("tower must start with a base field".into()));
        }
        for (i, step) in self.tower.iter().enumerate().skip(1) {
            if step.is_base() {
                return Err(Error::InvalidDescriptor("only the first step may be a base field".into()));
            }
            if step.is_terminal() && i + 1 != self.tower.len() {
                return Err(Error::InvalidDescriptor("a two-dimensional step must come last".into()));
            }
        }
        if *base == TowerStep::Finite && self.characteristic == Characteristic::Zero {
            return Err(Error::InvalidDescriptor("a finite field has positive characteristic".into()));
        }
        if let TowerStep::Cd { d: 0 } = base {
            return Err(Error::InvalidDescriptor("C_d requires d > 0".into()));
        }
        if let TowerStep::ExplicitU { u, u_s } = base {
            if u > u_s {
                return Err(Error::InvalidDescriptor("u(k) cannot exceed u_s(k)".into()));
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &TowerStep {
        &self.tower[0]
    }

    pub fn terminal(&self) -> Option<&TowerStep> {
        self.tower.last().filter(|s| s.is_terminal())
    }

    /// The residue steps (base first), without the terminal constructor.
    pub fn residue_levels(&self) -> &[TowerStep] {
        match self.terminal() {
            Some(_) => &self.tower[..self.tower.len() - 1],
            None => &self.tower,
        }
    }

    /// Number of discretely valued steps when the residue tower is an
    /// m-local field over its base.
    pub fn m_local_depth(&self) -> Option<usize> {
        let steps = &self.residue_levels()[1..];
        steps
            .iter()
            .all(|s| *s == TowerStep::CompleteDV)
            .then_some(steps.len())
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self
            .tower
            .iter()
            .map(|s| match s {
                TowerStep::Cd { d } => format!("C_{d}"),
                TowerStep::BrauerDim { d, .. } => format!("BrauerDim({d})"),
                TowerStep::ExplicitU { u, u_s } => format!("ExplicitU({u},{u_s})"),
                other => format!("{other:?}"),
            })
            .collect();
        write!(f, "{} (char {})", names.join(" / "), self.characteristic)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let s = r#"{"tower":[{"kind":"Finite"},{"kind":"CompleteDV"},{"kind":"TwoDimLocal"}],"char":"p"}"#;
        let d = FieldDescriptor::parse_json(s).unwrap();
        assert_eq!(d.m_local_depth(), Some(1));
        assert_eq!(d.characteristic, Characteristic::Symbolic);
        let back = FieldDescriptor::parse_json(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(back, d);
        let c: FieldDescriptor = serde_json::from_str(r#"{"tower":[{"kind":"Cd","d":2}],"char":7}"#).unwrap();
        assert_eq!(c.characteristic, Characteristic::Prime(7));
    }

    #[test]
    fn malformed_towers_rejected() {
        let bad = [
            r#"{"tower":[],"char":"0"}"#,
            r#"{"tower":[{"kind":"CompleteDV"}],"char":"0"}"#,
            r#"{"tower":[{"kind":"AlgClosed"},{"kind":"TwoDimLocal"},{"kind":"CompleteDV"}],"char":"0"}"#,
            r#"{"tower":[{"kind":"Finite"}],"char":"0"}"#,
            r#"{"tower":[{"kind":"AlgClosed"}],"char":4}"#,
        ];
        for s in bad {
            assert!(FieldDescriptor::parse_json(s).is_err(), "{s}");
        }
    }
}
