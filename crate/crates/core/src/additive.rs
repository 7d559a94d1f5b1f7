//! Hom-space algorithms shared by modules, chains and factorizations.

use crate::field_poly::{Field, Scalar};
use crate::linalg::{span_rank, FieldMatrix};

/// A k-linear category whose hom spaces come with explicit bases and coordinates.
pub trait Additive {
    type Map: Clone;

    fn field(&self) -> Field;
    fn hom_basis(&self, other: &Self) -> Vec<Self::Map>;
    fn identity(&self) -> Self::Map;
    /// `g ∘ f`.
    fn compose(g: &Self::Map, f: &Self::Map) -> Self::Map;
    /// Coordinates in a fixed ambient space determined by source and target.
    fn coords(f: &Self::Map) -> Vec<Scalar>;
}

/// Dimension of `{p ∘ g : g ∈ Hom(a, c)}` inside `Hom(a, b)` for a fixed `p: c → b`.
pub fn factoring_dim<T: Additive>(a: &T, c: &T, p: &T::Map) -> usize {
    let images: Vec<Vec<Scalar>> = a.hom_basis(c).iter().map(|g| T::coords(&T::compose(p, g))).collect();
    let len = images.first().map_or(0, Vec::len);
    span_rank(a.field(), len, &images)
}

/// `dim Hom(a, b)` minus the maps factoring through `p: c → b`.
pub fn stable_dim<T: Additive>(a: &T, b: &T, c: &T, p: &T::Map) -> usize {
    a.hom_basis(b).len() - factoring_dim(a, c, p)
}

/// Whether `id_c` lies in the span of composites `c → y → c`, i.e. `c` is a summand of `y`
/// when `c` is indecomposable (its endomorphism ring is local).
pub fn is_summand<T: Additive>(c: &T, y: &T) -> bool {
    let id = T::coords(&c.identity());
    if id.iter().all(Scalar::is_zero) {
        return true;
    }
    let there = c.hom_basis(y);
    let back = y.hom_basis(c);
    if there.is_empty() || back.is_empty() {
        return false;
    }
    let mut loops = Vec::with_capacity(there.len() * back.len());
    for g in &back {
        for f in &there {
            loops.push(T::coords(&T::compose(g, f)));
        }
    }
    FieldMatrix::from_columns(c.field(), id.len(), &loops).solve(&id).is_some()
}

/// Isomorphism test for two objects known to be indecomposable.
pub fn indecomposables_isomorphic<T: Additive>(a: &T, b: &T) -> bool {
    is_summand(a, b) && is_summand(b, a)
}
