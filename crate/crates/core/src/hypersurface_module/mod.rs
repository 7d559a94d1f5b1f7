//! Finitely generated graded modules over `R = k[x]/(x^d)` and their maps.

mod map;
mod module;
mod ops;
mod presentation;
pub(crate) mod realize;

pub use map::ModuleMap;
pub use module::{module_iso, DirectSum, HypersurfaceConfig, RModule};
pub use ops::{
    bar_p_epic, hom_basis, is_mono_epi, lift_along_epi, map_ker_cok_im, projective_cover, stable_hom_dim, KerCokIm,
};
pub use presentation::{module_from_presentation, Presentation};
