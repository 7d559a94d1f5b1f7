//! Factorizations `X^0 → X^1 → … → X^l → τX^0` of multiplication by `x^d`
//! through graded free `k[x]`-modules, and their morphisms.

mod adjunction;
mod hom;
mod resolution;

use std::fmt;

use crate::error::{AlgebraError, InvalidFactorization, Result};
use crate::field_poly::{Field, Polynomial};
use crate::hypersurface_module::HypersurfaceConfig;
use crate::polymat::{graded_check, solve_right, GradedMatrix, PolyMatrix};

pub use adjunction::{
    nu_k_left_inverse, nu_k_left_transport, nu_k_right_inverse, nu_k_right_transport, nu_l_left_inverse,
    nu_l_left_transport,
};
pub use hom::{fac_hom_basis, fac_projective_test, fac_stable_hom_dim, FacMap};
pub use resolution::{nu_resolution, NuResolution, Side};

/// An `(l+1)`-fold factorization of `x^d`.
///
/// `degs[k]` are the labels of `X^k` before the formal twist; the object itself has
/// labels `degs[k] + twist·d`. `phase` counts rotations since the last wrap, so that
/// `l + 1` rotations return the original matrices with `twist + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    cfg: HypersurfaceConfig,
    degs: Vec<Vec<i64>>,
    maps: Vec<GradedMatrix>,
    closing: GradedMatrix,
    twist: i64,
    phase: usize,
}

fn shape(msg: impl Into<String>) -> InvalidFactorization {
    InvalidFactorization::Shape(msg.into())
}

/// Validates raw matrices against chosen degree vectors and computes the closing map.
pub fn fac_validate(
    maps: &[PolyMatrix],
    degs: &[Vec<i64>],
    cfg: HypersurfaceConfig,
) -> std::result::Result<Factorization, InvalidFactorization> {
    let l = maps.len();
    if l == 0 {
        return Err(shape("at least one map is required"));
    }
    if degs.len() != l + 1 {
        return Err(shape(format!("{l} maps need {} degree vectors, got {}", l + 1, degs.len())));
    }
    let m = degs[0].len();
    if degs.iter().any(|v| v.len() != m) {
        return Err(shape("degree vectors of different lengths"));
    }
    let mut graded = Vec::with_capacity(l);
    for (k, a) in maps.iter().enumerate() {
        if a.rows() != m || a.cols() != m {
            return Err(shape(format!("map {k} is {}x{}, expected {m}x{m}", a.rows(), a.cols())));
        }
        if a.field() != cfg.field {
            return Err(shape(format!("map {k} is over {}, expected {}", a.field(), cfg.field)));
        }
        graded_check(a, &degs[k], &degs[k + 1]).map_err(|v| InvalidFactorization::GradingViolation {
            map: k,
            row: v.row,
            col: v.col,
            expected: v.expected,
        })?;
        graded.push(GradedMatrix::new_unchecked(a.clone(), degs[k].clone(), degs[k + 1].clone()));
    }
    Factorization::from_graded_parts(graded, degs.to_vec(), cfg)
}

impl Factorization {
    /// Builds a factorization from graded maps `X^k → X^(k+1)`.
    pub fn from_graded(maps: Vec<GradedMatrix>, cfg: HypersurfaceConfig) -> std::result::Result<Factorization, InvalidFactorization> {
        let first = maps.first().ok_or_else(|| shape("at least one map is required"))?;
        let mut degs = vec![first.src().to_vec()];
        for (k, a) in maps.iter().enumerate() {
            if a.src() != degs[k].as_slice() {
                return Err(shape(format!("map {k} does not start where map {} ends", k.wrapping_sub(1))));
            }
            degs.push(a.tgt().to_vec());
        }
        Factorization::from_graded_parts(maps, degs, cfg)
    }

    fn from_graded_parts(
        maps: Vec<GradedMatrix>,
        degs: Vec<Vec<i64>>,
        cfg: HypersurfaceConfig,
    ) -> std::result::Result<Factorization, InvalidFactorization> {
        let field = cfg.field;
        let l = maps.len();
        let m = degs[0].len();
        for (k, a) in maps.iter().enumerate() {
            if a.rows() != m || a.cols() != m {
                return Err(shape(format!("map {k} is not {m}x{m}")));
            }
            if !a.is_injective_square() {
                return Err(InvalidFactorization::NonMonic(k));
            }
        }
        let mut product = GradedMatrix::identity(field, &degs[0]);
        for a in &maps {
            product = a.compose(&product);
        }
        let target = PolyMatrix::scalar_diag(field, m, &Polynomial::x_pow(field, cfg.d));
        let closing = solve_right(product.mat(), &target)
            .map_err(|e| shape(e.to_string()))?
            .ok_or(InvalidFactorization::NoClosing)?;
        let tau0: Vec<i64> = degs[0].iter().map(|n| n + cfg.d as i64).collect();
        graded_check(&closing, &degs[l], &tau0).map_err(|v| InvalidFactorization::GradingViolation {
            map: l,
            row: v.row,
            col: v.col,
            expected: v.expected,
        })?;
        let closing = GradedMatrix::new_unchecked(closing, degs[l].clone(), tau0);
        Ok(Factorization { cfg, degs, maps, closing, twist: 0, phase: 0 })
    }

    /// The zero factorization with `l` maps.
    pub fn zero(cfg: HypersurfaceConfig, l: usize) -> Factorization {
        nu(cfg, &[], l, l).expect("rank zero")
    }

    pub fn cfg(&self) -> HypersurfaceConfig {
        self.cfg
    }

    pub fn field(&self) -> Field {
        self.cfg.field
    }

    pub fn d(&self) -> usize {
        self.cfg.d
    }

    pub fn l(&self) -> usize {
        self.maps.len()
    }

    /// Common rank of the free modules.
    pub fn rank(&self) -> usize {
        self.degs[0].len()
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    /// Stored degree vectors, before the twist is applied.
    pub fn base_degs(&self) -> &[Vec<i64>] {
        &self.degs
    }

    /// Stored maps, before the twist is applied.
    pub fn base_maps(&self) -> &[GradedMatrix] {
        &self.maps
    }

    pub fn base_closing(&self) -> &GradedMatrix {
        &self.closing
    }

    fn offset(&self) -> i64 {
        self.twist * self.cfg.d as i64
    }

    /// Labels of `X^k`, `0 <= k <= l`.
    pub fn labels(&self, k: usize) -> Vec<i64> {
        self.degs[k].iter().map(|n| n + self.offset()).collect()
    }

    /// `A^k: X^k → X^(k+1)`.
    pub fn map(&self, k: usize) -> GradedMatrix {
        self.maps[k].shifted(self.offset())
    }

    /// `A^l: X^l → τX^0`.
    pub fn closing(&self) -> GradedMatrix {
        self.closing.shifted(self.offset())
    }

    /// `A^(to-1) ⋯ A^from: X^from → X^to`.
    pub fn composite(&self, from: usize, to: usize) -> GradedMatrix {
        let mut acc = GradedMatrix::identity(self.field(), &self.labels(from));
        for k in from..to {
            acc = self.map(k).compose(&acc);
        }
        acc
    }

    /// `deg det(X^0 → X^l)`, which is the `k`-dimension of its cokernel.
    pub fn cokernel_dim(&self) -> usize {
        self.composite(0, self.l()).det().ok().and_then(|p| p.degree()).unwrap_or(0)
    }

    /// The same object with the twist folded into the degree vectors.
    pub fn normalized(&self) -> Factorization {
        let t = self.offset();
        Factorization {
            cfg: self.cfg,
            degs: self.degs.iter().map(|v| v.iter().map(|n| n + t).collect()).collect(),
            maps: self.maps.iter().map(|a| a.shifted(t)).collect(),
            closing: self.closing.shifted(t),
            twist: 0,
            phase: 0,
        }
    }

    /// Uniform translation of every label by `t`.
    pub fn shifted(&self, t: i64) -> Factorization {
        Factorization {
            degs: self.degs.iter().map(|v| v.iter().map(|n| n + t).collect()).collect(),
            maps: self.maps.iter().map(|a| a.shifted(t)).collect(),
            closing: self.closing.shifted(t),
            ..self.clone()
        }
    }

    /// `τ^n`, recorded in the twist.
    pub fn tau(&self, n: i64) -> Factorization {
        Factorization { twist: self.twist + n, ..self.clone() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "d": self.cfg.d,
            "l": self.l(),
            "m": self.rank(),
            "degs": self.degs,
            "maps": self.maps.iter().map(GradedMatrix::to_json).collect::<Vec<_>>(),
            "closing": self.closing.to_json(),
            "twist": self.twist,
            "phase": self.phase,
        })
    }

    /// Restores a rotation phase after parsing.
    pub(crate) fn with_twist_phase(mut self, twist: i64, phase: usize) -> Result<Factorization> {
        if phase > self.l() {
            return Err(AlgebraError::Range(format!("phase {phase} exceeds l = {}", self.l())));
        }
        self.twist = twist;
        self.phase = phase;
        Ok(self)
    }

    pub fn phase(&self) -> usize {
        self.phase
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "factorization of x^{} with {} maps, rank {}, twist {}", self.d(), self.l(), self.rank(), self.twist)?;
        for (k, a) in self.maps.iter().enumerate() {
            writeln!(f, "A^{k} {:?} -> {:?}:\n{a}", a.src(), a.tgt())?;
        }
        write!(f, "closing {:?} -> {:?}:\n{}", self.closing.src(), self.closing.tgt(), self.closing)
    }
}

/// Checks `τ(A^(k-1)⋯A^0) ∘ A^l ∘ A^(l-1)⋯A^k = x^d` on `X^k` for every `k < l`;
/// reports the first failing `k`.
pub fn zigzag_check(x: &Factorization) -> std::result::Result<(), usize> {
    let d = x.d();
    let l = x.l();
    let closing = x.closing();
    for k in 0..l {
        let tail = x.composite(k, l);
        let head = x.composite(0, k).shifted(d as i64);
        let lhs = head.mat_mul(&closing.compose(&tail));
        let rhs = GradedMatrix::x_pow(x.field(), &x.labels(k), d);
        if lhs.ok().as_ref() != Some(&rhs) {
            return Err(k);
        }
    }
    Ok(())
}

/// `ν^k(A)` on the free module with the given labels: identities everywhere except
/// `x^d` at position `k`; for `k = l` the closing map carries `x^d`.
pub fn nu(cfg: HypersurfaceConfig, labels: &[i64], k: usize, l: usize) -> Result<Factorization> {
    if l == 0 || k > l {
        return Err(AlgebraError::Range(format!("nu^{k} needs 0 <= k <= l and l >= 1, got l = {l}")));
    }
    let field = cfg.field;
    let d = cfg.d as i64;
    let raised: Vec<i64> = labels.iter().map(|n| n + d).collect();
    let degs: Vec<Vec<i64>> = (0..=l).map(|j| if j <= k { labels.to_vec() } else { raised.clone() }).collect();
    let maps: Vec<GradedMatrix> = (0..l)
        .map(|j| {
            if j == k {
                GradedMatrix::x_pow(field, labels, cfg.d)
            } else {
                GradedMatrix::identity(field, &degs[j])
            }
        })
        .collect();
    let closing = if k == l {
        GradedMatrix::x_pow(field, labels, cfg.d)
    } else {
        GradedMatrix::identity(field, &raised)
    };
    Ok(Factorization { cfg, degs, maps, closing, twist: 0, phase: 0 })
}

/// The rotation `Θ` (or its inverse).
pub fn rotate(x: &Factorization, inverse: bool) -> Factorization {
    let d = x.d() as i64;
    let l = x.l();
    let bump = |v: &Vec<i64>, t: i64| v.iter().map(|n| n + t).collect::<Vec<_>>();
    let mut out = if !inverse {
        let mut degs: Vec<Vec<i64>> = x.degs[1..].to_vec();
        degs.push(bump(&x.degs[0], d));
        let mut maps: Vec<GradedMatrix> = x.maps[1..].to_vec();
        maps.push(x.closing.clone());
        Factorization {
            degs,
            maps,
            closing: x.maps[0].shifted(d),
            phase: x.phase + 1,
            ..x.clone()
        }
    } else {
        let mut degs = vec![bump(&x.degs[l], -d)];
        degs.extend(x.degs[..l].iter().cloned());
        let mut maps = vec![x.closing.shifted(-d)];
        maps.extend(x.maps[..l - 1].iter().cloned());
        Factorization {
            degs,
            maps,
            closing: x.maps[l - 1].clone(),
            phase: x.phase,
            ..x.clone()
        }
    };
    if !inverse && out.phase == l + 1 {
        out = Factorization { phase: 0, twist: out.twist + 1, ..out.shifted(-d) };
    } else if inverse {
        if x.phase == 0 {
            out = Factorization { phase: l, twist: out.twist - 1, ..out.shifted(d) };
        } else {
            out.phase -= 1;
        }
    }
    out
}

/// Blockwise direct sum; operands with different twists are normalized first.
pub fn direct_sum(x: &Factorization, y: &Factorization) -> Result<Factorization> {
    if x.l() != y.l() || x.cfg != y.cfg {
        return Err(AlgebraError::DimensionMismatch("direct sum of factorizations of different shape".into()));
    }
    let (x, y) = if (x.twist, x.phase) == (y.twist, y.phase) {
        (x.clone(), y.clone())
    } else {
        (x.normalized(), y.normalized())
    };
    Ok(Factorization {
        cfg: x.cfg,
        degs: x.degs.iter().zip(&y.degs).map(|(a, b)| [a.as_slice(), b.as_slice()].concat()).collect(),
        maps: x.maps.iter().zip(&y.maps).map(|(a, b)| a.block_diag(b)).collect(),
        closing: x.closing.block_diag(&y.closing),
        twist: x.twist,
        phase: x.phase,
    })
}

/// Direct sum of any number of factorizations with the same `l`.
pub fn direct_sum_all(cfg: HypersurfaceConfig, l: usize, parts: &[Factorization]) -> Result<Factorization> {
    parts.iter().try_fold(Factorization::zero(cfg, l), |acc, p| direct_sum(&acc, p))
}

/// The contraction to `l = 1`: `X^0 → X^l` by the composite, same closing.
pub fn contract(x: &Factorization) -> Factorization {
    let x = x.normalized();
    let l = x.l();
    Factorization {
        cfg: x.cfg,
        degs: vec![x.degs[0].clone(), x.degs[l].clone()],
        maps: vec![x.composite(0, l)],
        closing: x.closing.clone(),
        twist: 0,
        phase: 0,
    }
}

#[cfg(test)]
mod tests;
