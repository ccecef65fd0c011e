use thiserror::Error;

/// Errors raised by the series, factorization, graph and bound engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("invalid ground field: {0}")]
    InvalidField(String),
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("bad residue: {0}")]
    BadResidue(String),
    #[error("characteristic {p} divides n = {n}")]
    CharDividesN { n: u64, p: u64 },
    #[error("constant term is not a nonzero square in the ground field")]
    NotASquareResidue,
    #[error("characteristic two is not supported here")]
    CharTwo,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("divisor is not distinguished: {0}")]
    NotDistinguished(String),
    #[error("matrix is not invertible at the available precision")]
    NotInvertible,
    #[error("x-window too small: {0}")]
    WindowTooSmall(String),
    #[error("not a split node: {0}")]
    NotSplitNode(String),
    #[error("a tangent line of the node is vertical (x = 0); swap the coordinates")]
    VerticalTangent,
    #[error("branch valuations disagree on a common component: {0}")]
    ObstructionFails(String),
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("no two-cycle images were supplied; use the trivial cover")]
    EmptyInput,
    #[error("cycle rank is zero")]
    RankZero,
    #[error("no seed rule applies: {0}")]
    UnknownBase(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Coarse error classes, used by front-ends to choose exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Precondition,
    Precision,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse(_) => ErrorClass::Parse,
            Error::PrecisionExhausted(_) | Error::WindowTooSmall(_) => ErrorClass::Precision,
            _ => ErrorClass::Precondition,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
