//! Matrix factorization over k((x⁻¹))[[t]] into a factor with no positive
//! powers of x and a factor with polynomial x-coefficients, as needed to
//! solve patching problems on the projective line with the point at ∞
//! singled out.

mod birkhoff;
mod factor;
mod matrix;

pub use birkhoff::{
    additive_split, factor_mod_t_matrix, factor_mod_t_scalar, split_with, ConstantsTo,
    MatrixSplitting,
};
pub use factor::{cartan_factor, solve_patching_problem, Certificate, Direction, FactorizationPair, PatchingSolution};
pub use matrix::{LaurentMatrix, RingMatrix};
