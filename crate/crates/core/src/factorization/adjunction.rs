//! The bijections `Hom(ν^l A, X) ≅ Hom(A, X^0)`, `Hom(ν^(k-1) A, X) ≅ Hom(τA, X^k)`
//! and `Hom(X, ν^k B) ≅ Hom(X^k, B)`.

use crate::error::{AlgebraError, Result};
use crate::polymat::GradedMatrix;

use super::hom::FacMap;
use super::Factorization;

fn check_range(k: usize, lo: usize, l: usize) -> Result<()> {
    if k < lo || k > l {
        return Err(AlgebraError::Range(format!("position {k} outside {lo}..={l}")));
    }
    Ok(())
}

fn component(g: &FacMap, k: usize) -> Result<GradedMatrix> {
    g.components().get(k).cloned().ok_or_else(|| AlgebraError::Range(format!("no component {k}")))
}

fn expect_labels(what: &str, got: &[i64], want: &[i64]) -> Result<()> {
    if got != want {
        return Err(AlgebraError::DegreeMismatch(format!("{what}: labels {got:?}, expected {want:?}")));
    }
    Ok(())
}

/// `g ↦ g^0` for `g: ν^l(A) → X`.
pub fn nu_l_left_transport(g: &FacMap) -> Result<GradedMatrix> {
    component(g, 0)
}

/// `h: A → X^0` ↦ the morphism `ν^l(A) → X` with `g^j = A^(j-1)⋯A^0 h`.
pub fn nu_l_left_inverse(x: &Factorization, h: &GradedMatrix) -> Result<FacMap> {
    expect_labels("target of h", h.tgt(), &x.labels(0))?;
    Ok(FacMap::new_unchecked((0..=x.l()).map(|j| x.composite(0, j).compose(h)).collect()))
}

/// `g ↦ g^k` for `g: ν^(k-1)(A) → X`, `1 <= k <= l`.
pub fn nu_k_left_transport(g: &FacMap, k: usize) -> Result<GradedMatrix> {
    component(g, k)
}

/// `h: τA → X^k` ↦ the morphism `ν^(k-1)(A) → X` with `g^k = h`,
/// `g^0 = τ^-1(A^l A^(l-1)⋯A^k h)` and `g^j = A^(j-1) g^(j-1)` elsewhere.
pub fn nu_k_left_inverse(x: &Factorization, k: usize, h: &GradedMatrix) -> Result<FacMap> {
    let l = x.l();
    check_range(k, 1, l)?;
    expect_labels("target of h", h.tgt(), &x.labels(k))?;
    let d = x.d() as i64;
    let mut comps: Vec<Option<GradedMatrix>> = vec![None; l + 1];
    comps[k] = Some(h.clone());
    for j in k + 1..=l {
        comps[j] = Some(x.map(j - 1).compose(comps[j - 1].as_ref().expect("filled")));
    }
    comps[0] = Some(x.closing().compose(&x.composite(k, l)).compose(h).shifted(-d));
    for j in 1..k {
        comps[j] = Some(x.map(j - 1).compose(comps[j - 1].as_ref().expect("filled")));
    }
    Ok(FacMap::new_unchecked(comps.into_iter().map(|c| c.expect("filled")).collect()))
}

/// `g ↦ g^k` for `g: X → ν^k(B)`.
pub fn nu_k_right_transport(g: &FacMap, k: usize) -> Result<GradedMatrix> {
    component(g, k)
}

/// `h: X^k → B` ↦ the morphism `X → ν^k(B)` with `g^j = h A^(k-1)⋯A^j` for `j <= k`
/// and `g^j = τ(h A^(k-1)⋯A^0) A^l A^(l-1)⋯A^j` for `j > k`.
pub fn nu_k_right_inverse(x: &Factorization, k: usize, h: &GradedMatrix) -> Result<FacMap> {
    let l = x.l();
    check_range(k, 0, l)?;
    expect_labels("source of h", h.src(), &x.labels(k))?;
    let d = x.d() as i64;
    let comps = (0..=l)
        .map(|j| {
            if j <= k {
                h.compose(&x.composite(j, k))
            } else {
                h.compose(&x.composite(0, k)).shifted(d).compose(&x.closing()).compose(&x.composite(j, l))
            }
        })
        .collect();
    Ok(FacMap::new_unchecked(comps))
}
