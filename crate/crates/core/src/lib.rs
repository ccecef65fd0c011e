//! Exact, finite-precision algebra over complete discrete valuation rings
//! k[[t]]: truncated series rings, Weierstrass preparation, matrix
//! factorization for patching, branch valuations at nodes, split covers of
//! reduction graphs, and a rule engine for u-invariant and period-index
//! bounds.

pub mod branches;
pub mod cartan;
pub mod error;
pub mod expr;
pub mod field;
pub mod global;
pub mod graphs;
pub mod hensel;
pub mod invariants;
pub mod json;
pub mod poly;
pub mod precision;
pub mod series;
pub mod weierstrass;

pub use error::{Error, ErrorClass, Result};
pub use field::{GroundField, Scalar};
pub use poly::Poly;
pub use precision::Precision;
