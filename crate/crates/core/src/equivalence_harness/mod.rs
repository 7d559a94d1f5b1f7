//! Enumeration, random generation and the factorization/chain comparison census.

mod census;
mod enumerate;
pub mod random;

pub use census::*;
pub use enumerate::{
    chain_indecomposable_classes, enumerate_chains, enumerate_factorizations, fac_indecomposable_classes, has_trivial_summand,
    map_from_free, submodules, CensusBounds,
};
