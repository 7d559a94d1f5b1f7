use crate::additive::{stable_dim, Additive};
use crate::error::{AlgebraError, Result};
use crate::field_poly::{Field, Scalar};
use crate::linalg::FieldMatrix;
use crate::polymat::GradedMatrix;

use super::resolution::nu_cover;
use super::Factorization;

/// A morphism of factorizations: components `f^k: X^k → Y^k` commuting with every `A^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FacMap {
    components: Vec<GradedMatrix>,
}

impl FacMap {
    /// Checks labels and every square, including the closing one.
    pub fn new(x: &Factorization, y: &Factorization, components: Vec<GradedMatrix>) -> Result<FacMap> {
        let l = x.l();
        if y.l() != l || components.len() != l + 1 {
            return Err(AlgebraError::DimensionMismatch("morphism of the wrong length".into()));
        }
        for (k, f) in components.iter().enumerate() {
            if f.src() != x.labels(k).as_slice() || f.tgt() != y.labels(k).as_slice() {
                return Err(AlgebraError::DegreeMismatch(format!("component {k} has the wrong labels")));
            }
        }
        let map = FacMap { components };
        if let Some(k) = map.failing_square(x, y) {
            return Err(AlgebraError::InvalidMap(format!("square {k} does not commute")));
        }
        Ok(map)
    }

    pub(crate) fn new_unchecked(components: Vec<GradedMatrix>) -> FacMap {
        FacMap { components }
    }

    /// First square that fails to commute; index `l` is the closing square.
    pub fn failing_square(&self, x: &Factorization, y: &Factorization) -> Option<usize> {
        let l = x.l();
        let d = x.d() as i64;
        let f = &self.components;
        for k in 0..l {
            if y.map(k).compose(&f[k]) != f[k + 1].compose(&x.map(k)) {
                return Some(k);
            }
        }
        (y.closing().compose(&f[l]) != f[0].shifted(d).compose(&x.closing())).then_some(l)
    }

    pub fn identity(x: &Factorization) -> FacMap {
        FacMap { components: (0..=x.l()).map(|k| GradedMatrix::identity(x.field(), &x.labels(k))).collect() }
    }

    pub fn zero(x: &Factorization, y: &Factorization) -> FacMap {
        FacMap {
            components: (0..=x.l()).map(|k| GradedMatrix::zero(x.field(), &x.labels(k), &y.labels(k))).collect(),
        }
    }

    pub fn components(&self) -> &[GradedMatrix] {
        &self.components
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &FacMap) -> FacMap {
        FacMap { components: self.components.iter().zip(&f.components).map(|(g, f)| g.compose(f)).collect() }
    }

    pub fn add(&self, other: &FacMap) -> FacMap {
        FacMap { components: self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &FacMap) -> FacMap {
        FacMap { components: self.components.iter().zip(&other.components).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> FacMap {
        FacMap { components: self.components.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(GradedMatrix::is_zero)
    }

    /// Scalar coefficients of every entry of every component, row-major.
    pub fn coords(&self) -> Vec<Scalar> {
        let mut out = Vec::new();
        for f in &self.components {
            for j in 0..f.rows() {
                for i in 0..f.cols() {
                    out.push(f.coefficient(j, i));
                }
            }
        }
        out
    }

    /// Whether every component is invertible over `k[x]`.
    pub fn is_iso(&self) -> bool {
        self.components.iter().all(|f| f.rows() == f.cols() && f.det().is_ok_and(|p| p.is_unit()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "components": self.components.iter().map(GradedMatrix::to_json).collect::<Vec<_>>(),
        })
    }
}

/// A basis of `Hom(X, Y)`: each component entry is one scalar times a fixed power of `x`,
/// so the commuting squares form a finite linear system in those scalars.
pub fn fac_hom_basis(x: &Factorization, y: &Factorization) -> Vec<FacMap> {
    assert_eq!(x.l(), y.l(), "factorizations with different l");
    assert_eq!(x.cfg(), y.cfg(), "factorizations over different rings");
    let field = x.field();
    let l = x.l();
    let src: Vec<Vec<i64>> = (0..=l).map(|k| x.labels(k)).collect();
    let tgt: Vec<Vec<i64>> = (0..=l).map(|k| y.labels(k)).collect();

    // Unknown (k, j, i): coefficient of entry (j, i) of f^k, when its degree is nonnegative.
    let mut index = vec![Vec::new(); l + 1];
    let mut n = 0usize;
    for k in 0..=l {
        index[k] = vec![vec![None; src[k].len()]; tgt[k].len()];
        for j in 0..tgt[k].len() {
            for i in 0..src[k].len() {
                if tgt[k][j] >= src[k][i] {
                    index[k][j][i] = Some(n);
                    n += 1;
                }
            }
        }
    }
    if n == 0 {
        return Vec::new();
    }

    let xa: Vec<GradedMatrix> = (0..l).map(|k| x.map(k)).collect();
    let ya: Vec<GradedMatrix> = (0..l).map(|k| y.map(k)).collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    // Y.A^k f^k - f^(k+1) X.A^k = 0, entry (r, i).
    for k in 0..l {
        for r in 0..tgt[k + 1].len() {
            for i in 0..src[k].len() {
                if tgt[k + 1][r] < src[k][i] {
                    continue;
                }
                let mut row = vec![field.zero(); n];
                let mut nonzero = false;
                for j in 0..tgt[k].len() {
                    if let Some(u) = index[k][j][i] {
                        let c = ya[k].coefficient(r, j);
                        if !c.is_zero() {
                            row[u] = &row[u] + &c;
                            nonzero = true;
                        }
                    }
                }
                for j in 0..src[k + 1].len() {
                    if let Some(u) = index[k + 1][r][j] {
                        let c = xa[k].coefficient(j, i);
                        if !c.is_zero() {
                            row[u] = &row[u] - &c;
                            nonzero = true;
                        }
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        FieldMatrix::identity(field, n).columns()
    } else {
        FieldMatrix::from_rows(field, n, &rows).kernel()
    };
    kernel
        .iter()
        .map(|sol| {
            let components = (0..=l)
                .map(|k| {
                    GradedMatrix::from_coefficients(field, &src[k], &tgt[k], |j, i| {
                        index[k][j][i].map_or_else(|| field.zero(), |u| sol[u].clone())
                    })
                })
                .collect();
            FacMap { components }
        })
        .collect()
}

/// `dim Hom(X, Y)` minus the maps factoring through the projective ν-resolution of `Y`.
pub fn fac_stable_hom_dim(x: &Factorization, y: &Factorization) -> usize {
    let (object, map, _) = nu_cover(y);
    stable_dim(x, y, &object, &map)
}

/// Whether the identity factors through a projective.
pub fn fac_projective_test(x: &Factorization) -> bool {
    fac_stable_hom_dim(x, x) == 0
}

impl Additive for Factorization {
    type Map = FacMap;

    fn field(&self) -> Field {
        self.cfg().field
    }

    fn hom_basis(&self, other: &Self) -> Vec<FacMap> {
        fac_hom_basis(self, other)
    }

    fn identity(&self) -> FacMap {
        FacMap::identity(self)
    }

    fn compose(g: &FacMap, f: &FacMap) -> FacMap {
        g.compose(f)
    }

    fn coords(f: &FacMap) -> Vec<Scalar> {
        f.coords()
    }
}
