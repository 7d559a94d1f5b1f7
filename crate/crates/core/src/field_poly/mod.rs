//! Exact scalars over Q or F_p and dense univariate polynomials over them.

mod polynomial;
mod scalar;

pub use polynomial::{poly_arith, poly_gcd, poly_xgcd, PolyOp, PolyResult, Polynomial};
pub use scalar::{Field, Scalar};
