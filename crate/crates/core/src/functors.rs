//! The cokernel functor from factorizations to chains of monomorphisms, and its
//! inverse construction by preimages of a free cover.

use crate::error::{AlgebraError, Result};
use crate::factorization::{nu, FacMap, Factorization};
use crate::field_poly::Scalar;
use crate::hypersurface_module::{is_mono_epi, HypersurfaceConfig, ModuleMap, Presentation, RModule};
use crate::linalg::{span_rank, FieldMatrix};
use crate::monochain::{ChainMap, MonoChain};
use crate::polymat::{free_alive, solve_right, GradedMatrix};

/// `cok(X)` together with the presentations `X^k ↠ U^k` it was read off from.
#[derive(Clone, Debug)]
pub struct CokData {
    pub chain: MonoChain,
    /// Presentation of `U^k` by `A^(k-1)⋯A^0`, for `k = 1..=l`.
    pub presentations: Vec<Presentation>,
}

/// Degree range on which the presented module can be nonzero.
fn presentation_range(p: &Presentation, d: usize) -> Option<(i64, i64)> {
    let gens = p.free_labels().iter().map(|n| -n);
    let lo = gens.clone().min()?;
    let hi = gens.max()? + d as i64 - 1;
    Some((lo, hi))
}

/// Whether the composite of `a` with the presentation is zero.
fn presentation_kills(p: &Presentation, a: &GradedMatrix, d: usize) -> bool {
    let Some((lo, hi)) = presentation_range(p, d) else {
        return true;
    };
    (lo..=hi).all(|deg| {
        let m = a.linear_at(deg);
        m.columns().iter().all(|c| p.free_to_module(deg, c).iter().all(Scalar::is_zero))
    })
}

/// Builds `cok(X)` with its presentations.
pub fn cok_data(x: &Factorization) -> Result<CokData> {
    let cfg = x.cfg();
    let l = x.l();
    let presentations: Vec<Presentation> =
        (1..=l).map(|k| Presentation::new(&x.composite(0, k), cfg)).collect::<Result<_>>()?;
    let maps = (1..l)
        .map(|k| {
            let a = x.map(k);
            let next = &presentations[k];
            presentations[k - 1].induced_map(next.module(), &|deg, v| next.free_to_module(deg, &a.linear_at(deg).mul_vec(v)))
        })
        .collect();
    let objects = presentations.iter().map(|p| p.module().clone()).collect();
    let chain = MonoChain::new(objects, maps)
        .map_err(|e| AlgebraError::Internal(format!("induced map on cokernels: {e}")))?;
    Ok(CokData { chain, presentations })
}

/// The chain `U^1 ↣ … ↣ U^l` with `U^k = cok(A^(k-1)⋯A^0)`.
pub fn cok(x: &Factorization) -> Result<MonoChain> {
    Ok(cok_data(x)?.chain)
}

/// The chain map induced on cokernels by `f: X → Y`.
pub fn cok_map(x: &CokData, y: &CokData, f: &FacMap) -> ChainMap {
    let components = x
        .presentations
        .iter()
        .zip(&y.presentations)
        .enumerate()
        .map(|(i, (px, py))| {
            let fk = &f.components()[i + 1];
            px.induced_map(py.module(), &|deg, v| py.free_to_module(deg, &fk.linear_at(deg).mul_vec(v)))
        })
        .collect();
    ChainMap::new_unchecked(components)
}

/// The sequence `ν^l(X^0) → X ↠ (0, U^1, …, U^l)`, componentwise.
#[derive(Clone, Debug)]
pub struct JqSequence {
    pub source: Factorization,
    /// Components `A^(k-1)⋯A^0`.
    pub j: FacMap,
    /// `q^k: X^k / x^d ↠ U^k` for `k = 1..=l`; `q^0` is zero.
    pub q: Vec<ModuleMap>,
    /// Every component is short exact.
    pub exact: bool,
}

pub fn jq_sequence(x: &Factorization) -> Result<JqSequence> {
    let cfg = x.cfg();
    let l = x.l();
    let data = cok_data(x)?;
    let source = nu(cfg, &x.labels(0), l, l)?;
    let j = FacMap::new(&source, x, (0..=l).map(|k| x.composite(0, k)).collect())?;
    let q: Vec<ModuleMap> = data.presentations.iter().map(|p| p.reduction_map(cfg).1).collect();
    let exact = (1..=l).all(|k| {
        let jk = &j.components()[k];
        let p = &data.presentations[k - 1];
        jk.is_injective_square()
            && is_mono_epi(&q[k - 1]).1
            && presentation_kills(p, jk, cfg.d)
            && jk.det().ok().and_then(|p| p.degree()) == Some(p.module().dim())
    });
    Ok(JqSequence { source, j, q, exact })
}

/// `(X^0 ↣ X^l ↠ U^l, cok X)`.
#[derive(Clone, Debug)]
pub struct LDiagram {
    pub iota: GradedMatrix,
    pub rho: ModuleMap,
    pub chain: MonoChain,
    presentation: Presentation,
    d: usize,
}

impl LDiagram {
    /// `iota` is injective, `rho` surjective, `rho ∘ iota = 0`, and the cokernel of
    /// `iota` has the dimension of `U^l`.
    pub fn is_short_exact(&self) -> bool {
        self.iota.is_injective_square()
            && is_mono_epi(&self.rho).1
            && presentation_kills(&self.presentation, &self.iota, self.d)
            && self.iota.det().ok().and_then(|p| p.degree()) == Some(self.rho.tgt().dim())
            && self.chain.top() == self.rho.tgt()
    }
}

pub fn to_ldiagram(x: &Factorization) -> Result<LDiagram> {
    let cfg = x.cfg();
    let mut data = cok_data(x)?;
    let presentation = data.presentations.pop().expect("l >= 1");
    let rho = presentation.reduction_map(cfg).1;
    Ok(LDiagram { iota: x.composite(0, x.l()), rho, chain: data.chain, presentation, d: cfg.d })
}

/// `ρ_D`: the degree-`D` part of the cover `⊕S(-s_t) ↠ top`, on the monomial basis.
fn cover_at(top: &RModule, labels: &[i64], deg: i64) -> FieldMatrix {
    let field = top.field();
    let cols = free_alive(labels, deg);
    let rows = top.alive_at(deg);
    let mut m = FieldMatrix::zeros(field, rows.len(), cols.len());
    for (c, &j) in cols.iter().enumerate() {
        if let Some(r) = rows.iter().position(|&t| t == j) {
            m.set(r, c, field.one());
        }
    }
    m
}

/// Basis of `{v : rho v ∈ span(sub)}`.
fn preimage(rho: &FieldMatrix, sub: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let field = rho.field();
    let n = rho.cols();
    if n == 0 {
        return Vec::new();
    }
    let mut cols = rho.columns();
    cols.extend(sub.iter().map(|v| v.iter().map(|c| -c).collect::<Vec<_>>()));
    let stacked = FieldMatrix::from_columns(field, rho.rows(), &cols);
    let heads: Vec<Vec<Scalar>> = stacked.kernel().into_iter().map(|v| v[..n].to_vec()).collect();
    if heads.is_empty() {
        return Vec::new();
    }
    FieldMatrix::from_columns(field, n, &heads).column_space()
}

/// Minimal homogeneous generators of a graded submodule of `⊕S(labels)` given degreewise
/// on `lo..=hi`, as the columns of an inclusion matrix.
fn generators(
    cfg: HypersurfaceConfig,
    labels: &[i64],
    lo: i64,
    hi: i64,
    part: &dyn Fn(i64) -> Vec<Vec<Scalar>>,
) -> GradedMatrix {
    let field = cfg.field;
    let mut gen_labels = Vec::new();
    let mut gen_cols: Vec<(i64, Vec<Scalar>)> = Vec::new();
    let mut prev: Vec<Vec<Scalar>> = Vec::new();
    for deg in lo..=hi {
        let alive = free_alive(labels, deg);
        let before = free_alive(labels, deg - 1);
        let mut span: Vec<Vec<Scalar>> = prev
            .iter()
            .map(|v| {
                let mut w = vec![field.zero(); alive.len()];
                for (c, j) in before.iter().enumerate() {
                    let r = alive.iter().position(|a| a == j).expect("alive sets grow");
                    w[r] = v[c].clone();
                }
                w
            })
            .collect();
        let here = part(deg);
        let mut rank = span_rank(field, alive.len(), &span);
        for v in &here {
            span.push(v.clone());
            let next = span_rank(field, alive.len(), &span);
            if next > rank {
                rank = next;
                gen_labels.push(-deg);
                let mut full = vec![field.zero(); labels.len()];
                for (c, &j) in alive.iter().enumerate() {
                    full[j] = v[c].clone();
                }
                gen_cols.push((deg, full));
            } else {
                span.pop();
            }
        }
        prev = here;
    }
    GradedMatrix::from_coefficients(field, &gen_labels, labels, |j, i| gen_cols[i].1[j].clone())
}

/// A factorization whose cokernel chain is isomorphic to `U`, built on the minimal free
/// cover of the top module.
pub fn reconstruct(u: &MonoChain) -> Result<Factorization> {
    let cfg = u.cfg();
    let l = u.len();
    let top = u.top();
    if top.is_zero() {
        return Ok(Factorization::zero(cfg, l));
    }
    let labels: Vec<i64> = top.summands().iter().map(|&(_, s)| -s).collect();
    let m = labels.len();
    let (smin, smax) = top.summands().iter().fold((i64::MAX, i64::MIN), |(a, b), &(_, s)| (a.min(s), b.max(s)));
    let (lo, hi) = (smin, smax + cfg.d as i64);

    let mut inclusions = Vec::with_capacity(l + 1);
    let kernel_part = |deg: i64| -> Vec<Vec<Scalar>> {
        let rho = cover_at(top, &labels, deg);
        preimage(&rho, &[])
    };
    inclusions.push(generators(cfg, &labels, lo, hi, &kernel_part));
    for k in 0..l - 1 {
        let into_top = u.composite(k, l - 1);
        let part = |deg: i64| -> Vec<Vec<Scalar>> {
            let rho = cover_at(top, &labels, deg);
            let image = into_top.linear_at(deg).column_space();
            preimage(&rho, &image)
        };
        inclusions.push(generators(cfg, &labels, lo, hi, &part));
    }
    inclusions.push(GradedMatrix::identity(cfg.field, &labels));
    if let Some(k) = inclusions.iter().position(|g| g.cols() != m) {
        return Err(AlgebraError::Internal(format!("preimage {k} has {} generators, expected {m}", inclusions[k].cols())));
    }
    let maps = (0..l)
        .map(|k| {
            let a = solve_right(inclusions[k + 1].mat(), inclusions[k].mat())?
                .ok_or_else(|| AlgebraError::Internal(format!("preimage {k} is not contained in preimage {}", k + 1)))?;
            GradedMatrix::new(a, inclusions[k].src().to_vec(), inclusions[k + 1].src().to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Factorization::from_graded(maps, cfg)?)
}

/// A sequence `X ↣ Y ↠ Z` of factorizations that is split exact in every position.
#[derive(Clone, Debug)]
pub struct FacSes {
    pub x: Factorization,
    pub y: Factorization,
    pub z: Factorization,
    pub inc: FacMap,
    pub proj: FacMap,
}

impl FacSes {
    /// Checks the morphisms and termwise split exactness.
    pub fn validate(&self) -> Result<()> {
        FacMap::new(&self.x, &self.y, self.inc.components().to_vec())?;
        FacMap::new(&self.y, &self.z, self.proj.components().to_vec())?;
        let field = self.y.field();
        for (k, (i, p)) in self.inc.components().iter().zip(self.proj.components()).enumerate() {
            let bad = || AlgebraError::InvalidMap(format!("position {k} is not split exact"));
            if !p.compose(i).is_zero() || i.cols() + p.rows() != i.rows() {
                return Err(bad());
            }
            let id = crate::polymat::PolyMatrix::identity(field, p.rows());
            let s = solve_right(p.mat(), &id)?.ok_or_else(bad)?;
            let mut square = crate::polymat::PolyMatrix::zeros(field, i.rows(), i.rows());
            square.paste(0, 0, i.mat());
            square.paste(0, i.cols(), &s);
            if !square.det()?.is_unit() {
                return Err(bad());
            }
        }
        Ok(())
    }
}

/// Whether `cok X ↣ cok Y ↠ cok Z` is short exact in every position.
pub fn cok_exactness_check(ses: &FacSes) -> Result<bool> {
    ses.validate()?;
    let (cx, cy, cz) = (cok_data(&ses.x)?, cok_data(&ses.y)?, cok_data(&ses.z)?);
    let i = cok_map(&cx, &cy, &ses.inc);
    let p = cok_map(&cy, &cz, &ses.proj);
    Ok((0..ses.x.l()).all(|k| {
        let (ik, pk) = (&i.components()[k], &p.components()[k]);
        is_mono_epi(ik).0
            && is_mono_epi(pk).1
            && ik.then(pk).is_zero()
            && cy.chain.objects()[k].dim() == cx.chain.objects()[k].dim() + cz.chain.objects()[k].dim()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::{direct_sum, fac_validate, zigzag_check};
    use crate::field_poly::Field;
    use crate::hypersurface_module::hom_basis;
    use crate::monochain::{chain_iso_test, mu_trivial};
    use crate::polymat::PolyMatrix;

    fn cfg(d: usize) -> HypersurfaceConfig {
        HypersurfaceConfig::new(d, Field::Prime(5)).unwrap()
    }

    fn monomial_chain(c: HypersurfaceConfig, exps: &[usize]) -> Factorization {
        let mut degs = vec![vec![0i64]];
        let mut maps = Vec::new();
        for &a in exps {
            let mut coeffs = vec![0i64; a + 1];
            coeffs[a] = 1;
            maps.push(PolyMatrix::from_i64s(c.field, &[&[&coeffs]]));
            let last = degs.last().unwrap()[0];
            degs.push(vec![last + a as i64]);
        }
        fac_validate(&maps, &degs, c).unwrap()
    }

    #[test]
    fn cok_examples() {
        for d in 2..=4 {
            for i in 0..=d {
                let u = cok(&monomial_chain(cfg(d), &[i])).unwrap();
                assert_eq!(u.len(), 1);
                let expected = if i == 0 { RModule::zero(cfg(d)) } else { RModule::new(cfg(d), vec![(i, -(i as i64))]).unwrap() };
                assert_eq!(u.objects()[0], expected);
            }
        }
        for l in 1..=3 {
            let z = cok(&nu(cfg(2), &[0, 1], l, l).unwrap()).unwrap();
            assert!(z.is_zero());
        }
        let c = cok(&nu(cfg(2), &[-2], 0, 2).unwrap()).unwrap();
        let r = RModule::new(cfg(2), vec![(2, 0)]).unwrap();
        assert_eq!(c, mu_trivial(&r, 2, 2).unwrap());
        let mid = cok(&nu(cfg(2), &[-2], 1, 2).unwrap()).unwrap();
        assert_eq!(mid, mu_trivial(&r, 1, 2).unwrap());
    }

    #[test]
    fn cok_of_sum_is_sum() {
        let a = monomial_chain(cfg(3), &[1, 1]);
        let b = monomial_chain(cfg(3), &[2, 0]).shifted(2);
        let lhs = cok(&direct_sum(&a, &b).unwrap()).unwrap();
        let rhs = cok(&a).unwrap().direct_sum(&cok(&b).unwrap()).unwrap();
        assert!(chain_iso_test(&lhs, &rhs));
    }

    #[test]
    fn jq_and_ldiagram_examples() {
        let c = cfg(2);
        let x = monomial_chain(c, &[1]);
        let jq = jq_sequence(&x).unwrap();
        assert!(jq.exact);
        assert_eq!(jq.j.components()[1], GradedMatrix::x_pow(c.field, &[0], 1));
        let ld = to_ldiagram(&x).unwrap();
        assert!(ld.is_short_exact());
        assert_eq!(ld.iota, GradedMatrix::x_pow(c.field, &[0], 1));
        assert_eq!(ld.rho.tgt(), &RModule::new(c, vec![(1, -1)]).unwrap());

        let n = nu(c, &[0], 1, 1).unwrap();
        let jq = jq_sequence(&n).unwrap();
        assert!(jq.exact && jq.j.is_iso());
        assert!(jq.q.iter().all(ModuleMap::is_zero));
        let ld = to_ldiagram(&n).unwrap();
        assert!(ld.is_short_exact() && ld.chain.is_zero());
        assert_eq!(ld.iota, GradedMatrix::identity(c.field, &[0]));
    }

    #[test]
    fn reconstruct_examples() {
        let c = cfg(2);
        let k = RModule::new(c, vec![(1, 0)]).unwrap();
        let x = reconstruct(&MonoChain::single(k.clone())).unwrap();
        assert_eq!(x.labels(0), vec![-1]);
        assert_eq!(x.labels(1), vec![0]);
        assert_eq!(x.map(0).mat(), GradedMatrix::x_pow(c.field, &[-1], 1).mat());
        assert!(chain_iso_test(&cok(&x).unwrap(), &MonoChain::single(k)));

        let z = reconstruct(&MonoChain::zero(c, 2)).unwrap();
        assert_eq!(z.rank(), 0);
        assert_eq!(z.l(), 2);

        let r = RModule::free(c, &[0]);
        let free = mu_trivial(&r, 2, 2).unwrap();
        let x = reconstruct(&free).unwrap();
        assert_eq!(x.composite(0, 2), GradedMatrix::x_pow(c.field, &[-2], 2));
        assert_eq!(cok(&x).unwrap(), free);

        let socle = {
            let k1 = RModule::new(c, vec![(1, 1)]).unwrap();
            let inc = hom_basis(&k1, &r).remove(0);
            MonoChain::new(vec![k1, r.clone()], vec![inc]).unwrap()
        };
        let x = reconstruct(&socle).unwrap();
        assert_eq!(zigzag_check(&x), Ok(()));
        assert!(chain_iso_test(&cok(&x).unwrap(), &socle));
    }

    #[test]
    fn exactness_examples() {
        let c = cfg(3);
        let x = monomial_chain(c, &[1, 1]);
        let z = nu(c, &[1], 0, 2).unwrap();
        let y = direct_sum(&x, &z).unwrap();
        let inc = FacMap::new(
            &x,
            &y,
            (0..=2)
                .map(|k| {
                    GradedMatrix::from_coefficients(c.field, &x.labels(k), &y.labels(k), |j, i| {
                        if i == j { c.field.one() } else { c.field.zero() }
                    })
                })
                .collect(),
        )
        .unwrap();
        let proj = FacMap::new(
            &y,
            &z,
            (0..=2)
                .map(|k| {
                    GradedMatrix::from_coefficients(c.field, &y.labels(k), &z.labels(k), |j, i| {
                        if i == j + 1 { c.field.one() } else { c.field.zero() }
                    })
                })
                .collect(),
        )
        .unwrap();
        let ses = FacSes { x: x.clone(), y: y.clone(), z: z.clone(), inc: inc.clone(), proj: proj.clone() };
        assert!(cok_exactness_check(&ses).unwrap());
        let broken = FacSes { x: x.clone(), y, z, inc: inc.scale(&c.field.zero()), proj };
        assert!(cok_exactness_check(&broken).is_err());
    }
}
