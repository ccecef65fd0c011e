//! Symbolic field towers and a rule engine deriving bounds on the
//! u-invariant and on the period-index exponent, with a citation trace.

mod descriptor;
mod engine;

pub use descriptor::{Characteristic, FieldDescriptor, Guard, TowerStep};
pub use engine::{
    compute_per_ind, compute_u_bounds, explain, rule_names, BoundResult, Engine, Quantity, TraceStep,
};
