use std::fmt;

use super::module::RModule;
use crate::error::{AlgebraError, Result};
use crate::field_poly::Scalar;
use crate::linalg::FieldMatrix;

/// Degree-0 `R`-linear map. Block `(u, t)` is the coefficient `c` in
/// `g_t ↦ Σ_u c·x^(s_t - s_u) g_u`; blocks whose term is necessarily zero are stored as 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    src: RModule,
    tgt: RModule,
    blocks: FieldMatrix,
}

/// Whether block `(u, t)` can carry a nonzero term.
fn block_live(src: &RModule, tgt: &RModule, u: usize, t: usize) -> bool {
    let (_, st) = src.summands()[t];
    let (eu, su) = tgt.summands()[u];
    st >= su && st - su < eu as i64
}

impl ModuleMap {
    /// Builds a map from blocks and checks that it commutes with `x`.
    pub fn new(src: RModule, tgt: RModule, blocks: FieldMatrix) -> Result<ModuleMap> {
        if src.cfg() != tgt.cfg() {
            return Err(AlgebraError::InvalidMap("source and target over different rings".into()));
        }
        if blocks.rows() != tgt.num_summands() || blocks.cols() != src.num_summands() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "block matrix {}x{} for {} target and {} source summands",
                blocks.rows(),
                blocks.cols(),
                tgt.num_summands(),
                src.num_summands()
            )));
        }
        let f = ModuleMap::from_blocks_unchecked(src, tgt, blocks);
        if !f.is_valid() {
            return Err(AlgebraError::InvalidMap("blocks do not define an x-equivariant map".into()));
        }
        Ok(f)
    }

    pub(crate) fn from_blocks_unchecked(src: RModule, tgt: RModule, mut blocks: FieldMatrix) -> ModuleMap {
        let zero = src.field().zero();
        for u in 0..tgt.num_summands() {
            for t in 0..src.num_summands() {
                if !block_live(&src, &tgt, u, t) {
                    blocks.set(u, t, zero.clone());
                }
            }
        }
        ModuleMap { src, tgt, blocks }
    }

    pub fn zero(src: &RModule, tgt: &RModule) -> ModuleMap {
        let b = FieldMatrix::zeros(src.field(), tgt.num_summands(), src.num_summands());
        ModuleMap { src: src.clone(), tgt: tgt.clone(), blocks: b }
    }

    pub fn identity(m: &RModule) -> ModuleMap {
        let b = FieldMatrix::identity(m.field(), m.num_summands());
        ModuleMap { src: m.clone(), tgt: m.clone(), blocks: b }
    }

    pub fn src(&self) -> &RModule {
        &self.src
    }

    pub fn tgt(&self) -> &RModule {
        &self.tgt
    }

    pub fn blocks(&self) -> &FieldMatrix {
        &self.blocks
    }

    /// The realized linear map `M_deg → N_deg`.
    pub fn linear_at(&self, deg: i64) -> FieldMatrix {
        let field = self.src.field();
        let src_alive = self.src.alive_at(deg);
        let tgt_alive = self.tgt.alive_at(deg);
        let mut m = FieldMatrix::zeros(field, tgt_alive.len(), src_alive.len());
        for (c, &t) in src_alive.iter().enumerate() {
            for (r, &u) in tgt_alive.iter().enumerate() {
                if block_live(&self.src, &self.tgt, u, t) {
                    m.set(r, c, self.blocks.get(u, t).clone());
                }
            }
        }
        m
    }

    pub fn apply(&self, deg: i64, v: &[Scalar]) -> Vec<Scalar> {
        self.linear_at(deg).mul_vec(v)
    }

    fn joint_range(&self) -> Option<(i64, i64)> {
        match (self.src.degree_range(), self.tgt.degree_range()) {
            (Some(a), Some(b)) => Some((a.0.min(b.0), a.1.max(b.1))),
            (Some(a), None) | (None, Some(a)) => Some(a),
            (None, None) => None,
        }
    }

    /// The realized map commutes with `x` in every degree.
    pub fn is_valid(&self) -> bool {
        let Some((lo, hi)) = self.joint_range() else {
            return true;
        };
        let m = self.src.realize_on(lo, hi);
        let n = self.tgt.realize_on(lo, hi);
        (lo..hi).all(|deg| n.x_at(deg).mul(&self.linear_at(deg)) == self.linear_at(deg + 1).mul(&m.x_at(deg)))
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &ModuleMap) -> Result<ModuleMap> {
        if f.tgt != self.src {
            return Err(AlgebraError::InvalidMap(format!(
                "cannot compose: target {} differs from source {}",
                f.tgt, self.src
            )));
        }
        Ok(ModuleMap::from_blocks_unchecked(
            f.src.clone(),
            self.tgt.clone(),
            self.blocks.mul(&f.blocks),
        ))
    }

    /// Composite of maps already known to chain.
    pub fn then(&self, g: &ModuleMap) -> ModuleMap {
        g.compose(self).expect("composable module maps")
    }

    fn same_shape(&self, other: &ModuleMap) {
        assert!(self.src == other.src && self.tgt == other.tgt, "module maps of different shape");
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        self.same_shape(other);
        ModuleMap { blocks: self.blocks.add(&other.blocks), ..self.clone() }
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        self.same_shape(other);
        ModuleMap { blocks: self.blocks.sub(&other.blocks), ..self.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMap {
        ModuleMap { blocks: self.blocks.scale(c), ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_zero()
    }

    /// Block coefficients flattened row by row; a faithful coordinate system on maps.
    pub fn coords(&self) -> Vec<Scalar> {
        (0..self.blocks.rows())
            .flat_map(|u| (0..self.blocks.cols()).map(move |t| (u, t)))
            .map(|(u, t)| self.blocks.get(u, t).clone())
            .collect()
    }

    /// Linear combination of maps of one shape.
    pub fn combination(src: &RModule, tgt: &RModule, coeffs: &[Scalar], maps: &[ModuleMap]) -> ModuleMap {
        let mut acc = ModuleMap::zero(src, tgt);
        for (c, f) in coeffs.iter().zip(maps) {
            if !c.is_zero() {
                acc = acc.add(&f.scale(c));
            }
        }
        acc
    }

    /// Moves source and target up by `t` degrees.
    pub fn shifted(&self, t: i64) -> ModuleMap {
        ModuleMap {
            src: self.src.shifted(t),
            tgt: self.tgt.shifted(t),
            blocks: self.blocks.clone(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = (0..self.blocks.rows())
            .map(|u| serde_json::Value::Array((0..self.blocks.cols()).map(|t| self.blocks.get(u, t).to_json()).collect()))
            .collect();
        serde_json::json!({
            "src": self.src.to_json(),
            "tgt": self.tgt.to_json(),
            "blocks": rows,
        })
    }
}

impl fmt::Display for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} ", self.src, self.tgt)?;
        write!(f, "[")?;
        for u in 0..self.blocks.rows() {
            if u > 0 {
                write!(f, "; ")?;
            }
            for t in 0..self.blocks.cols() {
                if t > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.blocks.get(u, t))?;
            }
        }
        write!(f, "]")
    }
}
