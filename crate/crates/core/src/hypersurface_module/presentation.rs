use super::map::ModuleMap;
use super::module::{HypersurfaceConfig, RModule};
use super::realize::{decompose, GradedRep, QuotientRep, Strand};
use crate::error::{AlgebraError, Result};
use crate::field_poly::{Polynomial, Scalar};
use crate::linalg::FieldMatrix;
use crate::polymat::{free_alive, solve_right, GradedMatrix, PolyMatrix};

/// A module in normal form together with chosen generators inside some realization.
#[derive(Clone, Debug)]
pub(crate) struct Decomposed {
    pub module: RModule,
    pub gens: Vec<Vec<Scalar>>,
    pub rep: GradedRep,
}

impl Decomposed {
    pub fn new(cfg: HypersurfaceConfig, rep: GradedRep, strands: Vec<Strand>) -> Result<Decomposed> {
        let (module, position) = RModule::with_order(cfg, strands.iter().map(|s| (s.e, s.s)).collect())?;
        let mut gens = vec![Vec::new(); strands.len()];
        for (i, st) in strands.into_iter().enumerate() {
            gens[position[i]] = st.gen;
        }
        Ok(Decomposed { module, gens, rep })
    }

    /// Coefficients of `v ∈ rep_deg` on the strings `x^(deg - s_t) h_t`, one per summand.
    pub fn coords(&self, deg: i64, v: &[Scalar]) -> Vec<Scalar> {
        let field = self.rep.field;
        let alive = self.module.alive_at(deg);
        let mut out = vec![field.zero(); self.module.num_summands()];
        if alive.is_empty() {
            debug_assert!(v.iter().all(Scalar::is_zero));
            return out;
        }
        let cols: Vec<Vec<Scalar>> = alive
            .iter()
            .map(|&t| {
                let s = self.module.summands()[t].1;
                self.rep.apply_x_pow(s, (deg - s) as usize, &self.gens[t])
            })
            .collect();
        let c = FieldMatrix::from_columns(field, v.len(), &cols)
            .solve(v)
            .expect("element lies in the decomposed subspace");
        for (k, &t) in alive.iter().enumerate() {
            out[t] = c[k].clone();
        }
        out
    }
}

/// Realization of the graded free module `⊕S(labels)` over `lo..=hi`.
pub(crate) fn free_rep(labels: &[i64], lo: i64, hi: i64, cfg: HypersurfaceConfig) -> GradedRep {
    let field = cfg.field;
    if hi < lo {
        return GradedRep::empty(field);
    }
    let alive: Vec<Vec<usize>> = (lo..=hi).map(|deg| free_alive(labels, deg)).collect();
    let dims = alive.iter().map(Vec::len).collect::<Vec<_>>();
    let x = (0..dims.len().saturating_sub(1))
        .map(|i| {
            let mut m = FieldMatrix::zeros(field, dims[i + 1], dims[i]);
            for (c, j) in alive[i].iter().enumerate() {
                let r = alive[i + 1].iter().position(|k| k == j).expect("free modules are torsion-free");
                m.set(r, c, field.one());
            }
            m
        })
        .collect();
    GradedRep { field, lo, dims, x }
}

/// `cok(A)` for a graded free presentation `A`, with the data needed to push free
/// elements into the normal-form module and to lift its generators back.
#[derive(Clone, Debug)]
pub struct Presentation {
    labels: Vec<i64>,
    quotient: QuotientRep,
    decomposed: Decomposed,
}

impl Presentation {
    pub fn new(a: &GradedMatrix, cfg: HypersurfaceConfig) -> Result<Presentation> {
        let field = cfg.field;
        if a.field() != field {
            return Err(AlgebraError::FieldMismatch(field, a.field()));
        }
        let n = a.rows();
        let xd = PolyMatrix::scalar_diag(field, n, &Polynomial::x_pow(field, cfg.d));
        if solve_right(a.mat(), &xd)?.is_none() {
            return Err(AlgebraError::NotAnnihilated(cfg.d));
        }
        let labels = a.tgt().to_vec();
        let (lo, hi) = match (labels.iter().map(|l| -l).min(), labels.iter().map(|l| -l).max()) {
            (Some(lo), Some(top)) => (lo, top + cfg.d as i64 - 1),
            _ => (0, -1),
        };
        let ambient = free_rep(&labels, lo, hi, cfg);
        let image = |deg: i64| -> Vec<Vec<Scalar>> { a.linear_at(deg).column_space() };
        let quotient = QuotientRep::new(&ambient, &image);
        let whole = |deg: i64| -> Vec<Vec<Scalar>> {
            let k = quotient.rep.dim(deg);
            FieldMatrix::identity(field, k).columns()
        };
        let strands = decompose(&quotient.rep, &whole);
        let decomposed = Decomposed::new(cfg, quotient.rep.clone(), strands)?;
        Ok(Presentation { labels, quotient, decomposed })
    }

    pub fn module(&self) -> &RModule {
        &self.decomposed.module
    }

    /// Labels of the free module being presented.
    pub fn free_labels(&self) -> &[i64] {
        &self.labels
    }

    /// Image of `v ∈ F_deg` in the realization of [`module`](Self::module).
    pub fn free_to_module(&self, deg: i64, v: &[Scalar]) -> Vec<Scalar> {
        let q = self.quotient.project(deg, v);
        if q.is_empty() {
            return Vec::new();
        }
        let c = self.decomposed.coords(deg, &q);
        self.module().blocks_to_element(deg, &c)
    }

    /// Free preimage of the `t`-th generator, in the degree of that generator.
    pub fn generator_lift(&self, t: usize) -> (i64, Vec<Scalar>) {
        let s = self.module().summands()[t].1;
        (s, self.quotient.lift(s, &self.decomposed.gens[t]))
    }

    /// The map `module → target` induced by a degree-preserving map `phi` on free elements,
    /// assumed to kill the relations.
    pub fn induced_map(&self, target: &RModule, phi: &dyn Fn(i64, &[Scalar]) -> Vec<Scalar>) -> ModuleMap {
        let field = target.field();
        let m = self.module();
        let mut blocks = FieldMatrix::zeros(field, target.num_summands(), m.num_summands());
        for t in 0..m.num_summands() {
            let (deg, v) = self.generator_lift(t);
            let w = phi(deg, &v);
            for (u, c) in target.element_to_blocks(deg, &w).into_iter().enumerate() {
                blocks.set(u, t, c);
            }
        }
        ModuleMap::from_blocks_unchecked(m.clone(), target.clone(), blocks)
    }

    /// The projection from the reduced free module `⊕R(labels)` onto the presented module.
    pub fn reduction_map(&self, cfg: HypersurfaceConfig) -> (RModule, ModuleMap) {
        let gens: Vec<i64> = self.labels.iter().map(|l| -l).collect();
        let (free, position) = RModule::with_order(cfg, gens.iter().map(|&s| (cfg.d, s)).collect())
            .expect("free summands are in range");
        let field = cfg.field;
        let target = self.module();
        let mut blocks = FieldMatrix::zeros(field, target.num_summands(), free.num_summands());
        for (j, &g) in gens.iter().enumerate() {
            let alive = free_alive(&self.labels, g);
            let mut e = vec![field.zero(); alive.len()];
            e[alive.iter().position(|&k| k == j).expect("generator alive")] = field.one();
            let w = self.free_to_module(g, &e);
            for (u, c) in target.element_to_blocks(g, &w).into_iter().enumerate() {
                blocks.set(u, position[j], c);
            }
        }
        let map = ModuleMap::from_blocks_unchecked(free.clone(), target.clone(), blocks);
        (free, map)
    }
}

/// Normal form of `cok(A)` for a graded presentation annihilated by `x^d`.
pub fn module_from_presentation(a: &GradedMatrix, cfg: HypersurfaceConfig) -> Result<RModule> {
    Ok(Presentation::new(a, cfg)?.module().clone())
}
