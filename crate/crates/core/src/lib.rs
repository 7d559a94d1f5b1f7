//! Graded matrix factorizations of `x^d` over `k[x]` and chains of monomorphisms of
//! graded `k[x]/(x^d)`-modules, with the cokernel functor relating them.

pub mod additive;
pub mod cli;
pub mod equivalence_harness;
pub mod error;
pub mod factorization;
pub mod field_poly;
pub mod functors;
pub mod hypersurface_module;
pub mod json;
pub mod linalg;
pub mod monochain;
pub mod polymat;

pub use error::{AlgebraError, InvalidFactorization, Result};
