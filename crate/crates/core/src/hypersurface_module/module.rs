use std::fmt;

use super::map::ModuleMap;
use super::realize::GradedRep;
use crate::error::{AlgebraError, Result};
use crate::field_poly::{Field, Scalar};
use crate::linalg::FieldMatrix;

/// The ring `R = k[x]/(x^d)` over a chosen field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HypersurfaceConfig {
    pub d: usize,
    pub field: Field,
}

impl HypersurfaceConfig {
    pub fn new(d: usize, field: Field) -> Result<HypersurfaceConfig> {
        if d == 0 {
            return Err(AlgebraError::Range("d must be at least 1".into()));
        }
        Ok(HypersurfaceConfig { d, field })
    }
}

/// Graded `R`-module `⊕_t (R/x^e_t)(-s_t)`: summand `(e, s)` is cyclic of length `e`
/// with its generator in degree `s`. Summands are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RModule {
    cfg: HypersurfaceConfig,
    summands: Vec<(usize, i64)>,
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: RModule,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

impl RModule {
    pub fn new(cfg: HypersurfaceConfig, summands: Vec<(usize, i64)>) -> Result<RModule> {
        Ok(RModule::with_order(cfg, summands)?.0)
    }

    /// Normal form plus, for each input summand, its position in the normal form.
    pub fn with_order(cfg: HypersurfaceConfig, summands: Vec<(usize, i64)>) -> Result<(RModule, Vec<usize>)> {
        if let Some(&(e, s)) = summands.iter().find(|(e, _)| *e == 0 || *e > cfg.d) {
            return Err(AlgebraError::Range(format!(
                "summand ({e}, {s}) needs 1 <= e <= d = {}",
                cfg.d
            )));
        }
        let mut order: Vec<usize> = (0..summands.len()).collect();
        order.sort_by_key(|&i| (summands[i], i));
        let mut position = vec![0; summands.len()];
        for (pos, &i) in order.iter().enumerate() {
            position[i] = pos;
        }
        let sorted = order.iter().map(|&i| summands[i]).collect();
        Ok((RModule { cfg, summands: sorted }, position))
    }

    pub fn zero(cfg: HypersurfaceConfig) -> RModule {
        RModule { cfg, summands: Vec::new() }
    }

    /// Free module with generators in the given degrees.
    pub fn free(cfg: HypersurfaceConfig, gen_degrees: &[i64]) -> RModule {
        RModule::new(cfg, gen_degrees.iter().map(|&s| (cfg.d, s)).collect()).expect("free summands are in range")
    }

    pub fn cfg(&self) -> HypersurfaceConfig {
        self.cfg
    }

    pub fn field(&self) -> Field {
        self.cfg.field
    }

    pub fn summands(&self) -> &[(usize, i64)] {
        &self.summands
    }

    pub fn num_summands(&self) -> usize {
        self.summands.len()
    }

    /// Total dimension over the ground field.
    pub fn dim(&self) -> usize {
        self.summands.iter().map(|s| s.0).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.summands.iter().all(|s| s.0 == self.cfg.d)
    }

    /// Moves every generator up by `t` degrees.
    pub fn shifted(&self, t: i64) -> RModule {
        RModule {
            cfg: self.cfg,
            summands: self.summands.iter().map(|&(e, s)| (e, s + t)).collect(),
        }
    }

    pub fn direct_sum(parts: &[&RModule]) -> Result<DirectSum> {
        let cfg = parts.first().map(|p| p.cfg).ok_or_else(|| AlgebraError::Range("empty direct sum".into()))?;
        if parts.iter().any(|p| p.cfg != cfg) {
            return Err(AlgebraError::InvalidMap("direct sum of modules over different rings".into()));
        }
        let all: Vec<(usize, i64)> = parts.iter().flat_map(|p| p.summands.iter().copied()).collect();
        let (module, position) = RModule::with_order(cfg, all)?;
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        let mut offset = 0;
        for p in parts {
            let n = p.num_summands();
            let mut inj = FieldMatrix::zeros(cfg.field, module.num_summands(), n);
            for t in 0..n {
                inj.set(position[offset + t], t, cfg.field.one());
            }
            projections.push(ModuleMap::from_blocks_unchecked(module.clone(), (*p).clone(), inj.transpose()));
            injections.push(ModuleMap::from_blocks_unchecked((*p).clone(), module.clone(), inj));
            offset += n;
        }
        Ok(DirectSum { module, injections, projections })
    }

    /// Degrees `lo..=hi` where the module can be nonzero; `None` for the zero module.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = self.summands.iter().map(|s| s.1).min()?;
        let hi = self.summands.iter().map(|&(e, s)| s + e as i64 - 1).max()?;
        Some((lo, hi))
    }

    /// Summands alive in degree `deg`, in order; their positions index the basis of `M_deg`.
    pub(crate) fn alive_at(&self, deg: i64) -> Vec<usize> {
        (0..self.summands.len())
            .filter(|&t| {
                let (e, s) = self.summands[t];
                s <= deg && deg < s + e as i64
            })
            .collect()
    }

    pub(crate) fn dim_at(&self, deg: i64) -> usize {
        self.alive_at(deg).len()
    }

    /// Position of `x^i g_t` in the basis of its degree.
    pub(crate) fn basis_index(&self, t: usize, i: usize) -> Option<usize> {
        let (e, s) = self.summands[t];
        if i >= e {
            return None;
        }
        self.alive_at(s + i as i64).iter().position(|&u| u == t)
    }

    /// Realization over `lo..=hi`, padded with zero spaces outside the module's own range.
    pub(crate) fn realize_on(&self, lo: i64, hi: i64) -> GradedRep {
        let field = self.cfg.field;
        if hi < lo {
            return GradedRep::empty(field);
        }
        let alive: Vec<Vec<usize>> = (lo..=hi).map(|deg| self.alive_at(deg)).collect();
        let dims: Vec<usize> = alive.iter().map(Vec::len).collect();
        let mut x = Vec::new();
        for i in 0..dims.len().saturating_sub(1) {
            let mut m = FieldMatrix::zeros(field, dims[i + 1], dims[i]);
            for (c, &t) in alive[i].iter().enumerate() {
                if let Some(r) = alive[i + 1].iter().position(|&u| u == t) {
                    m.set(r, c, field.one());
                }
            }
            x.push(m);
        }
        GradedRep { field, lo, dims, x }
    }

    pub(crate) fn realize(&self) -> GradedRep {
        match self.degree_range() {
            Some((lo, hi)) => self.realize_on(lo, hi),
            None => GradedRep::empty(self.cfg.field),
        }
    }

    /// Coefficients of `v ∈ M_deg` on the elements `x^(deg - s_u) g_u`, one per summand.
    pub(crate) fn element_to_blocks(&self, deg: i64, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.cfg.field.zero(); self.num_summands()];
        for (c, &u) in self.alive_at(deg).iter().enumerate() {
            out[u] = v[c].clone();
        }
        out
    }

    /// Inverse of [`element_to_blocks`](Self::element_to_blocks); dead summands are ignored.
    pub(crate) fn blocks_to_element(&self, deg: i64, c: &[Scalar]) -> Vec<Scalar> {
        self.alive_at(deg).iter().map(|&u| c[u].clone()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "d": self.cfg.d,
            "summands": self.summands.iter().map(|&(e, s)| vec![e as i64, s]).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for RModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, s)) in self.summands.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "R/x^{e}({})", -s)?;
        }
        Ok(())
    }
}

/// Sorted summand multisets agree.
pub fn module_iso(m: &RModule, n: &RModule) -> bool {
    m.cfg == n.cfg && m.summands == n.summands
}
