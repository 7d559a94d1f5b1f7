use super::map::ModuleMap;
use super::module::RModule;
use super::presentation::{Decomposed, Presentation};
use super::realize::{decompose, QuotientRep};
use crate::additive::{stable_dim, Additive};
use crate::error::{AlgebraError, Result};
use crate::field_poly::Scalar;
use crate::linalg::FieldMatrix;
use crate::polymat::GradedMatrix;

/// A basis of `Hom_R(M, N)` in degree 0, found by solving the commuting system
/// `x·f_D = f_{D+1}·x` on the realizations.
pub fn hom_basis(m: &RModule, n: &RModule) -> Vec<ModuleMap> {
    assert_eq!(m.cfg(), n.cfg(), "hom between modules over different rings");
    let (Some(rm), Some(rn)) = (m.degree_range(), n.degree_range()) else {
        return Vec::new();
    };
    let (lo, hi) = (rm.0.min(rn.0), rm.1.max(rn.1));
    let field = m.field();
    let rep_m = m.realize_on(lo, hi);
    let rep_n = n.realize_on(lo, hi);
    // Unknown offsets: f_D occupies dim N_D × dim M_D entries, row-major.
    let mut offsets = Vec::new();
    let mut total = 0;
    for deg in lo..=hi {
        offsets.push(total);
        total += rep_m.dim(deg) * rep_n.dim(deg);
    }
    let at = |deg: i64, r: usize, c: usize| offsets[(deg - lo) as usize] + r * rep_m.dim(deg) + c;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for deg in lo..hi {
        let xm = rep_m.x_at(deg);
        let xn = rep_n.x_at(deg);
        for r in 0..rep_n.dim(deg + 1) {
            for c in 0..rep_m.dim(deg) {
                let mut eq = vec![field.zero(); total];
                for k in 0..rep_n.dim(deg) {
                    let a = xn.get(r, k);
                    if !a.is_zero() {
                        let i = at(deg, k, c);
                        eq[i] = &eq[i] + a;
                    }
                }
                for k in 0..rep_m.dim(deg + 1) {
                    let b = xm.get(k, c);
                    if !b.is_zero() {
                        let i = at(deg + 1, r, k);
                        eq[i] = &eq[i] - b;
                    }
                }
                if eq.iter().any(|e| !e.is_zero()) {
                    rows.push(eq);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        FieldMatrix::identity(field, total).columns()
    } else {
        FieldMatrix::from_rows(field, total, &rows).kernel()
    };
    kernel
        .iter()
        .map(|sol| {
            let mut blocks = FieldMatrix::zeros(field, n.num_summands(), m.num_summands());
            for (t, &(_, s)) in m.summands().iter().enumerate() {
                let c = m.basis_index(t, 0).expect("generator is alive");
                let col: Vec<Scalar> = (0..rep_n.dim(s)).map(|r| sol[at(s, r, c)].clone()).collect();
                for (u, v) in n.element_to_blocks(s, &col).into_iter().enumerate() {
                    blocks.set(u, t, v);
                }
            }
            ModuleMap::from_blocks_unchecked(m.clone(), n.clone(), blocks)
        })
        .collect()
}

/// Kernel, cokernel and image of a module map, each in normal form.
#[derive(Clone, Debug)]
pub struct KerCokIm {
    pub ker: RModule,
    pub ker_inclusion: ModuleMap,
    pub cok: RModule,
    pub cok_projection: ModuleMap,
    pub im: RModule,
    pub im_inclusion: ModuleMap,
}

pub fn map_ker_cok_im(f: &ModuleMap) -> KerCokIm {
    let (m, n) = (f.src(), f.tgt());
    let cfg = m.cfg();
    let field = cfg.field;

    let rep_m = m.realize();
    let ker_sub = |deg: i64| f.linear_at(deg).kernel();
    let ker = Decomposed::new(cfg, rep_m, decompose(&m.realize(), &ker_sub)).expect("lengths bounded by d");
    let ker_inclusion = inclusion(&ker, m);

    let rep_n = n.realize();
    let im_sub = |deg: i64| f.linear_at(deg).column_space();
    let im = Decomposed::new(cfg, rep_n.clone(), decompose(&rep_n, &im_sub)).expect("lengths bounded by d");
    let im_inclusion = inclusion(&im, n);

    let quotient = QuotientRep::new(&rep_n, &im_sub);
    let whole = |deg: i64| FieldMatrix::identity(field, quotient.rep.dim(deg)).columns();
    let cok = Decomposed::new(cfg, quotient.rep.clone(), decompose(&quotient.rep, &whole)).expect("lengths bounded by d");
    let mut blocks = FieldMatrix::zeros(field, cok.module.num_summands(), n.num_summands());
    for (u, &(_, s)) in n.summands().iter().enumerate() {
        let mut e = vec![field.zero(); n.dim_at(s)];
        e[n.basis_index(u, 0).expect("generator is alive")] = field.one();
        let c = cok.coords(s, &quotient.project(s, &e));
        for (t, v) in c.into_iter().enumerate() {
            blocks.set(t, u, v);
        }
    }
    let cok_projection = ModuleMap::from_blocks_unchecked(n.clone(), cok.module.clone(), blocks);

    KerCokIm {
        ker: ker.module,
        ker_inclusion,
        cok: cok.module,
        cok_projection,
        im: im.module,
        im_inclusion,
    }
}

/// Inclusion of a decomposed subspace of `ambient`'s own realization.
fn inclusion(sub: &Decomposed, ambient: &RModule) -> ModuleMap {
    let field = ambient.field();
    let mut blocks = FieldMatrix::zeros(field, ambient.num_summands(), sub.module.num_summands());
    for (t, &(_, s)) in sub.module.summands().iter().enumerate() {
        for (u, v) in ambient.element_to_blocks(s, &sub.gens[t]).into_iter().enumerate() {
            blocks.set(u, t, v);
        }
    }
    ModuleMap::from_blocks_unchecked(sub.module.clone(), ambient.clone(), blocks)
}

/// `(mono, epi)` from the ranks of the realized map.
pub fn is_mono_epi(f: &ModuleMap) -> (bool, bool) {
    let rank: usize = match (f.src().degree_range(), f.tgt().degree_range()) {
        (Some(a), Some(b)) => (a.0.min(b.0)..=a.1.max(b.1)).map(|deg| f.linear_at(deg).rank()).sum(),
        _ => 0,
    };
    (rank == f.src().dim(), rank == f.tgt().dim())
}

/// One free summand `R(-s_t)` per summand of `M`, mapping generator to generator.
pub fn projective_cover(m: &RModule) -> (RModule, ModuleMap) {
    let cfg = m.cfg();
    let (p, position) =
        RModule::with_order(cfg, m.summands().iter().map(|&(_, s)| (cfg.d, s)).collect()).expect("free summands are in range");
    let mut blocks = FieldMatrix::zeros(cfg.field, m.num_summands(), p.num_summands());
    for t in 0..m.num_summands() {
        blocks.set(t, position[t], cfg.field.one());
    }
    let map = ModuleMap::from_blocks_unchecked(p.clone(), m.clone(), blocks);
    (p, map)
}

/// The epic `P/x^d P ↠ M` for the graded free `S`-module `P` on the generators of `M`,
/// built by presenting `P/x^d P` as the cokernel of `x^d` on `P`.
pub fn bar_p_epic(m: &RModule) -> (RModule, ModuleMap) {
    let cfg = m.cfg();
    let labels: Vec<i64> = m.summands().iter().map(|&(_, s)| -s).collect();
    let below: Vec<i64> = labels.iter().map(|l| l - cfg.d as i64).collect();
    let pres = Presentation::new(&GradedMatrix::x_pow(cfg.field, &below, cfg.d), cfg)
        .expect("x^d presents a module killed by x^d");
    let field = cfg.field;
    let phi = |deg: i64, v: &[Scalar]| -> Vec<Scalar> {
        // e_t ↦ g_t, extended x-linearly into M_deg.
        let alive = crate::polymat::free_alive(&labels, deg);
        let mut out = vec![field.zero(); m.dim_at(deg)];
        for (c, &t) in alive.iter().enumerate() {
            let s = m.summands()[t].1;
            if let Some(i) = m.basis_index(t, (deg - s) as usize) {
                out[i] = &out[i] + &v[c];
            }
        }
        out
    };
    let pbar = pres.module().clone();
    let map = pres.induced_map(m, &phi);
    (pbar, map)
}

/// Some `g` with `p ∘ g = f`, or `None`.
pub fn lift_along_epi(p: &ModuleMap, f: &ModuleMap) -> Result<Option<ModuleMap>> {
    if p.tgt() != f.tgt() {
        return Err(AlgebraError::InvalidMap("lift: targets differ".into()));
    }
    let basis = hom_basis(f.src(), p.src());
    let images: Vec<Vec<Scalar>> = basis.iter().map(|g| p.compose(g).expect("chains").coords()).collect();
    let target = f.coords();
    if basis.is_empty() {
        return Ok(f.is_zero().then(|| ModuleMap::zero(f.src(), p.src())));
    }
    let sys = FieldMatrix::from_columns(f.src().field(), target.len(), &images);
    Ok(sys
        .solve(&target)
        .map(|c| ModuleMap::combination(f.src(), p.src(), &c, &basis)))
}

/// `dim Hom(M, N)` minus the maps that factor through the projective cover of `N`.
pub fn stable_hom_dim(m: &RModule, n: &RModule) -> usize {
    let (p, cover) = projective_cover(n);
    stable_dim(m, n, &p, &cover)
}

impl Additive for RModule {
    type Map = ModuleMap;

    fn field(&self) -> crate::field_poly::Field {
        RModule::field(self)
    }

    fn hom_basis(&self, other: &Self) -> Vec<ModuleMap> {
        hom_basis(self, other)
    }

    fn identity(&self) -> ModuleMap {
        ModuleMap::identity(self)
    }

    fn compose(g: &ModuleMap, f: &ModuleMap) -> ModuleMap {
        g.compose(f).expect("composable module maps")
    }

    fn coords(f: &ModuleMap) -> Vec<Scalar> {
        f.coords()
    }
}
