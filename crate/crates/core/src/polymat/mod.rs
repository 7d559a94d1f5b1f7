//! Matrices over k[x]: arithmetic, Smith normal form, solving, kernels, and graded maps.

mod graded;
mod matrix;
mod snf;

pub use graded::{free_alive, graded_check, GradedMatrix, GradingViolation};
pub use matrix::PolyMatrix;
pub use snf::{kernel_basis, snf, solve_right, solve_with, Snf};
