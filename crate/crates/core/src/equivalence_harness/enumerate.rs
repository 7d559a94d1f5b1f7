//! Exhaustive lists of small indecomposable objects on both sides, up to uniform shift.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::additive::is_summand;
use crate::error::{AlgebraError, Result};
use crate::factorization::{fac_stable_hom_dim, nu, Factorization};
use crate::field_poly::{Field, Polynomial, Scalar};
use crate::hypersurface_module::{map_ker_cok_im, HypersurfaceConfig, ModuleMap, RModule};
use crate::linalg::{canonical_span, FieldMatrix};
use crate::monochain::{chain_stable_hom_dim, MonoChain};
use crate::polymat::{free_alive, solve_right, GradedMatrix, PolyMatrix};

/// Size limits for enumeration.
///
/// `m` bounds the rank of a factorization and the number of summands of the top module of
/// a chain; `dim` bounds `deg det(X^0 → X^l)`, equivalently `dim_k` of the top module; the
/// labels of `X^l` (generator degrees of the top module) span at most `window`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CensusBounds {
    pub m: usize,
    pub dim: usize,
    pub window: i64,
}

fn require_prime(cfg: HypersurfaceConfig) -> Result<u32> {
    match cfg.field {
        Field::Prime(p) => Ok(p),
        Field::Rational => Err(AlgebraError::Range("enumeration needs a finite field".into())),
    }
}

/// Nonincreasing label vectors of length `m` with entries in `lo..=hi`.
fn multisets(m: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    fn go(m: usize, lo: i64, hi: i64, acc: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if acc.len() == m {
            out.push(acc.clone());
            return;
        }
        let top = acc.last().copied().unwrap_or(hi);
        for v in (lo..=top).rev() {
            acc.push(v);
            go(m, lo, hi, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(m, lo, hi, &mut Vec::new(), &mut out);
    out
}

/// Whether some cyclic composite of `l` consecutive maps has a unit entry, which happens
/// exactly when a trivial factorization splits off.
pub fn has_trivial_summand(x: &Factorization) -> bool {
    let l = x.l();
    let mut cycle: Vec<PolyMatrix> = (0..l).map(|k| x.map(k).mat().clone()).collect();
    cycle.push(x.closing().mat().clone());
    (0..=l).any(|start| {
        let mut acc = PolyMatrix::identity(x.field(), x.rank());
        for k in 0..l {
            acc = cycle[(start + k) % (l + 1)].mul(&acc);
        }
        (0..acc.rows()).any(|i| (0..acc.cols()).any(|j| acc.get(i, j).degree() == Some(0)))
    })
}

/// Every scalar grid over `F_p` on the given number of slots.
fn grids(p: u32, slots: usize) -> impl Iterator<Item = Vec<i64>> {
    let total = (p as u64).checked_pow(slots as u32).expect("grid count fits") as usize;
    (0..total).map(move |mut n| {
        (0..slots)
            .map(|_| {
                let v = (n % p as usize) as i64;
                n /= p as usize;
                v
            })
            .collect()
    })
}

fn alive_count(labels: &[i64], deg: i64) -> usize {
    free_alive(labels, deg).len()
}

/// Reduced factorizations of exact rank `m` with the composite in diagonal form
/// `diag(x^(c_i))` from `top - c` to `top`.
fn fac_candidates(cfg: HypersurfaceConfig, l: usize, m: usize, bounds: &CensusBounds) -> Result<Vec<Factorization>> {
    let p = require_prime(cfg)?;
    let field = cfg.field;
    let d = cfg.d as i64;
    let w = bounds.window;
    let mut shapes: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    for top in multisets(m, -w, 0).into_iter().filter(|t| t.first() == Some(&0)) {
        for cs in grids(cfg.d as u32, m) {
            let c: Vec<i64> = cs.iter().map(|v| v + 1).collect();
            if c.iter().sum::<i64>() as usize > bounds.dim {
                continue;
            }
            // Equal top labels: only nondecreasing exponents.
            if (1..m).any(|i| top[i] == top[i - 1] && c[i] < c[i - 1]) {
                continue;
            }
            let bottom: Vec<i64> = top.iter().zip(&c).map(|(t, c)| t - c).collect();
            shapes.push((bottom, top.clone()));
        }
    }
    let lo = -w - d;
    let (dlo, dhi) = (-1, w + 2 * d);
    let middles = multisets(m, lo, 0);
    let found: Vec<Vec<Factorization>> = shapes
        .par_iter()
        .map(|(bottom, top)| {
            let diag: Vec<Polynomial> = top.iter().zip(bottom).map(|(t, b)| Polynomial::x_pow(field, (t - b) as usize)).collect();
            let product = GradedMatrix::new(PolyMatrix::diag(field, &diag), bottom.clone(), top.clone()).expect("diagonal is graded");
            let mut out = Vec::new();
            let mut stack: Vec<Vec<Vec<i64>>> = vec![vec![bottom.clone()]];
            // Intermediate label vectors, constrained degreewise between bottom and top.
            let mut label_chains = Vec::new();
            while let Some(chain) = stack.pop() {
                if chain.len() == l {
                    let mut full = chain.clone();
                    full.push(top.clone());
                    label_chains.push(full);
                    continue;
                }
                let prev = chain.last().expect("nonempty");
                for mid in &middles {
                    let ok = (dlo..=dhi).all(|deg| {
                        let (a, b, c) = (alive_count(prev, deg), alive_count(mid, deg), alive_count(top, deg));
                        a <= b && b <= c
                    });
                    if ok && mid.iter().sum::<i64>() >= prev.iter().sum::<i64>() {
                        let mut next = chain.clone();
                        next.push(mid.clone());
                        stack.push(next);
                    }
                }
            }
            label_chains.sort();
            for degs in label_chains {
                free_maps(field, p, &degs, 0, &mut Vec::new(), &product, cfg, &mut out);
            }
            out
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// Recursively chooses `A^k` for `k < l - 1` and solves for the last map.
#[allow(clippy::too_many_arguments)]
fn free_maps(
    field: Field,
    p: u32,
    degs: &[Vec<i64>],
    k: usize,
    chosen: &mut Vec<GradedMatrix>,
    product: &GradedMatrix,
    cfg: HypersurfaceConfig,
    out: &mut Vec<Factorization>,
) {
    let l = degs.len() - 1;
    if k + 1 == l {
        let mut partial = GradedMatrix::identity(field, &degs[0]);
        for a in chosen.iter() {
            partial = a.compose(&partial);
        }
        let Ok(Some(t)) = solve_right(&partial.mat().transpose(), &product.mat().transpose()) else {
            return;
        };
        let Ok(last) = GradedMatrix::new(t.transpose(), degs[l - 1].clone(), degs[l].clone()) else {
            return;
        };
        let mut maps = chosen.clone();
        maps.push(last);
        if let Ok(x) = Factorization::from_graded(maps, cfg) {
            if !has_trivial_summand(&x) {
                out.push(x);
            }
        }
        return;
    }
    let (src, tgt) = (&degs[k], &degs[k + 1]);
    let slots: Vec<(usize, usize)> =
        (0..tgt.len()).flat_map(|j| (0..src.len()).map(move |i| (j, i))).filter(|&(j, i)| tgt[j] >= src[i]).collect();
    for g in grids(p, slots.len()) {
        let a = GradedMatrix::from_coefficients(field, src, tgt, |j, i| {
            slots.iter().position(|&s| s == (j, i)).map_or_else(|| field.zero(), |n| field.from_i64(g[n]))
        });
        if !a.is_injective_square() {
            continue;
        }
        chosen.push(a);
        free_maps(field, p, degs, k + 1, chosen, product, cfg, out);
        chosen.pop();
    }
}

/// Uniform shifts `t` that send the multiset `small` into the multiset `big`.
fn embedding_shifts(small: &[i64], big: &[i64]) -> Vec<i64> {
    let Some(&first) = small.first() else {
        return vec![0];
    };
    let mut ts: Vec<i64> = big.iter().map(|b| b - first).collect();
    ts.sort();
    ts.dedup();
    ts.retain(|t| {
        let mut pool = big.to_vec();
        small.iter().all(|s| match pool.iter().position(|b| *b == s + t) {
            Some(i) => {
                pool.swap_remove(i);
                true
            }
            None => false,
        })
    });
    ts
}

fn fac_fingerprint(x: &Factorization) -> Vec<Vec<i64>> {
    (0..=x.l())
        .map(|k| {
            let mut v = x.labels(k);
            v.sort();
            v
        })
        .collect()
}

/// Indecomposable nonprojective factorizations within the bounds, one per class up to
/// uniform shift, normalized so that the largest label of `X^l` is 0.
pub fn fac_indecomposable_classes(cfg: HypersurfaceConfig, l: usize, bounds: &CensusBounds) -> Result<Vec<Factorization>> {
    let mut classes: Vec<Factorization> = Vec::new();
    for m in 1..=bounds.m {
        let pool: Vec<Factorization> = classes.clone();
        let candidates = fac_candidates(cfg, l, m, bounds)?;
        let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::new();
        let mut fresh: Vec<Factorization> = Vec::new();
        for x in candidates {
            let key = fac_fingerprint(&x);
            if seen.contains(&key) && fresh.iter().any(|c| fac_fingerprint(c) == key && is_summand(c, &x)) {
                continue;
            }
            let top = x.labels(l);
            let decomposable = m > 1
                && pool.iter().any(|c| {
                    embedding_shifts(&c.labels(l), &top).into_iter().any(|t| is_summand(&c.shifted(t), &x))
                });
            if decomposable || fac_stable_hom_dim(&x, &x) == 0 {
                continue;
            }
            seen.insert(key);
            fresh.push(x);
        }
        classes.extend(fresh);
    }
    Ok(classes)
}

/// Indecomposable factorizations up to shift (trivial ones included) with rank at most
/// `m_max` and `X^l` labels spanning at most `window`.
pub fn enumerate_factorizations(cfg: HypersurfaceConfig, l: usize, m_max: usize, window: i64) -> Result<Vec<Factorization>> {
    require_prime(cfg)?;
    if m_max == 0 {
        return Ok(Vec::new());
    }
    let mut out: Vec<Factorization> = (0..=l).map(|k| nu(cfg, &[-(cfg.d as i64)], k, l)).collect::<Result<_>>()?;
    for x in out.iter_mut() {
        let top = x.labels(l)[0];
        *x = x.shifted(-top);
    }
    let bounds = CensusBounds { m: m_max, dim: m_max * cfg.d, window };
    out.extend(fac_indecomposable_classes(cfg, l, &bounds)?);
    Ok(out)
}

/// Modules with at most `m` summands, `dim <= dim`, lowest generator in degree 0 and
/// generator degrees spanning at most `window`.
fn top_modules(cfg: HypersurfaceConfig, bounds: &CensusBounds) -> Vec<RModule> {
    let mut out = Vec::new();
    for n in 1..=bounds.m {
        let mut acc: Vec<(usize, i64)> = Vec::new();
        tops_rec(cfg, n, bounds, &mut acc, &mut out);
    }
    out
}

fn tops_rec(cfg: HypersurfaceConfig, n: usize, bounds: &CensusBounds, acc: &mut Vec<(usize, i64)>, out: &mut Vec<RModule>) {
    if acc.len() == n {
        if acc.iter().any(|s| s.1 == 0) {
            out.push(RModule::new(cfg, acc.clone()).expect("in range"));
        }
        return;
    }
    let used: usize = acc.iter().map(|s| s.0).sum();
    for e in 1..=cfg.d {
        for s in 0..=bounds.window {
            if used + e > bounds.dim || acc.last().is_some_and(|&last| (e, s) < last) {
                continue;
            }
            acc.push((e, s));
            tops_rec(cfg, n, bounds, acc, out);
            acc.pop();
        }
    }
}

/// Nonzero vectors of length `n` over `F_p` whose first nonzero entry is 1.
fn projective_points(field: Field, p: u32, n: usize) -> Vec<Vec<Scalar>> {
    grids(p, n)
        .filter(|v| v.iter().find(|&&c| c != 0) == Some(&1))
        .map(|v| v.into_iter().map(|c| field.from_i64(c)).collect())
        .collect()
}

/// The map `⊕R(-deg_i) → U` sending the i-th generator to the element `v_i ∈ U_(deg_i)`.
pub fn map_from_free(u: &RModule, gens: &[(i64, Vec<Scalar>)]) -> Result<ModuleMap> {
    let cfg = u.cfg();
    let (free, position) = RModule::with_order(cfg, gens.iter().map(|g| (cfg.d, g.0)).collect())?;
    let mut blocks = FieldMatrix::zeros(cfg.field, u.num_summands(), free.num_summands());
    for (i, (deg, v)) in gens.iter().enumerate() {
        for (t, c) in u.element_to_blocks(*deg, v).into_iter().enumerate() {
            blocks.set(t, position[i], c);
        }
    }
    ModuleMap::new(free, u.clone(), blocks)
}

type SubspaceKey = Vec<Vec<Vec<Scalar>>>;

/// Every graded submodule of `U` with its inclusion, each listed once.
pub fn submodules(u: &RModule) -> Result<Vec<(RModule, ModuleMap)>> {
    let cfg = u.cfg();
    let p = require_prime(cfg)?;
    let Some((lo, hi)) = u.degree_range() else {
        return Ok(vec![(u.clone(), ModuleMap::identity(u))]);
    };
    let elements: Vec<(i64, Vec<Scalar>)> = (lo..=hi)
        .flat_map(|deg| projective_points(cfg.field, p, u.dim_at(deg)).into_iter().map(move |v| (deg, v)))
        .collect();
    let mut seen: HashSet<SubspaceKey> = HashSet::new();
    let mut out = Vec::new();
    let mut choose: Vec<usize> = Vec::new();
    let max_gens = u.num_summands();
    subsets(elements.len(), max_gens, 0, &mut choose, &mut |idx| {
        let gens: Vec<(i64, Vec<Scalar>)> = idx.iter().map(|&i| elements[i].clone()).collect();
        let Ok(f) = map_from_free(u, &gens) else {
            return;
        };
        let key: SubspaceKey =
            (lo..=hi).map(|deg| canonical_span(cfg.field, u.dim_at(deg), &f.linear_at(deg).columns())).collect();
        if seen.insert(key) {
            let kci = map_ker_cok_im(&f);
            out.push((kci.im, kci.im_inclusion));
        }
    });
    Ok(out)
}

fn subsets(n: usize, max: usize, start: usize, acc: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    visit(acc);
    if acc.len() == max {
        return;
    }
    for i in start..n {
        acc.push(i);
        subsets(n, max, i + 1, acc, visit);
        acc.pop();
    }
}

/// Chains `U^1 ⊂ … ⊂ U^l = top` of submodules, one per choice of subspaces.
fn chains_with_top(top: &RModule, l: usize) -> Result<Vec<MonoChain>> {
    if l == 1 {
        return Ok(vec![MonoChain::single(top.clone())]);
    }
    let mut out = Vec::new();
    for (sub, inc) in submodules(top)? {
        for lower in chains_with_top(&sub, l - 1)? {
            let mut objects = lower.objects().to_vec();
            objects.push(top.clone());
            let mut maps = lower.maps().to_vec();
            maps.push(inc.clone());
            out.push(MonoChain::new(objects, maps)?);
        }
    }
    Ok(out)
}

fn chain_fingerprint(u: &MonoChain) -> Vec<RModule> {
    u.objects().to_vec()
}

/// Indecomposable chains within the bounds, up to uniform shift, with a flag telling
/// whether each is projective.
pub fn chain_indecomposable_classes(cfg: HypersurfaceConfig, l: usize, bounds: &CensusBounds) -> Result<Vec<(MonoChain, bool)>> {
    let tops = top_modules(cfg, bounds);
    let mut classes: Vec<(MonoChain, bool)> = Vec::new();
    for n in 1..=bounds.m {
        let pool: Vec<MonoChain> = classes.iter().map(|c| c.0.clone()).collect();
        let level: Vec<&RModule> = tops.iter().filter(|t| t.num_summands() == n).collect();
        let candidates: Vec<Vec<MonoChain>> = level.par_iter().map(|t| chains_with_top(t, l)).collect::<Result<_>>()?;
        let mut fresh: Vec<MonoChain> = Vec::new();
        for u in candidates.into_iter().flatten() {
            let key = chain_fingerprint(&u);
            if fresh.iter().any(|c| chain_fingerprint(c) == key && is_summand(c, &u)) {
                continue;
            }
            let top: Vec<i64> = u.top().summands().iter().map(|s| s.1).collect();
            let decomposable = n > 1
                && pool.iter().any(|c| {
                    let small: Vec<i64> = c.top().summands().iter().map(|s| s.1).collect();
                    embedding_shifts(&small, &top).into_iter().any(|t| is_summand(&c.shifted(t), &u))
                });
            if !decomposable {
                fresh.push(u);
            }
        }
        classes.extend(fresh.into_iter().map(|u| {
            let projective = chain_stable_hom_dim(&u, &u) == 0;
            (u, projective)
        }));
    }
    Ok(classes)
}

/// Indecomposable chains (projective ones included) with top dimension at most `dim_max`;
/// for `dim_max = 0` the zero chain alone.
pub fn enumerate_chains(cfg: HypersurfaceConfig, l: usize, dim_max: usize, window: i64) -> Result<Vec<MonoChain>> {
    require_prime(cfg)?;
    if dim_max == 0 {
        return Ok(vec![MonoChain::zero(cfg, l)]);
    }
    let bounds = CensusBounds { m: dim_max, dim: dim_max, window };
    Ok(chain_indecomposable_classes(cfg, l, &bounds)?.into_iter().map(|c| c.0).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(d: usize) -> HypersurfaceConfig {
        HypersurfaceConfig::new(d, Field::Prime(5)).unwrap()
    }

    #[test]
    fn multiset_listing() {
        assert_eq!(multisets(2, -1, 0), vec![vec![0, 0], vec![0, -1], vec![-1, -1]]);
        assert_eq!(embedding_shifts(&[0], &[0, -2]), vec![-2, 0]);
        assert_eq!(embedding_shifts(&[0, 0], &[0, -2]), Vec::<i64>::new());
    }

    #[test]
    fn rank_one_listing() {
        let two = enumerate_factorizations(cfg(2), 1, 1, 2).unwrap();
        assert_eq!(two.len(), 3);
        let three = enumerate_factorizations(cfg(3), 1, 1, 3).unwrap();
        assert_eq!(three.len(), 4);
        assert!(enumerate_factorizations(cfg(2), 1, 0, 2).unwrap().is_empty());
        let q = HypersurfaceConfig::new(2, Field::Rational).unwrap();
        assert!(enumerate_factorizations(q, 1, 1, 2).is_err());
    }

    #[test]
    fn chain_listing() {
        let c = cfg(2);
        let l1 = enumerate_chains(c, 1, 2, 2).unwrap();
        let tops: Vec<RModule> = l1.iter().map(|u| u.top().clone()).collect();
        assert_eq!(tops, vec![RModule::new(c, vec![(1, 0)]).unwrap(), RModule::new(c, vec![(2, 0)]).unwrap()]);
        let zero = enumerate_chains(c, 2, 0, 2).unwrap();
        assert_eq!(zero, vec![MonoChain::zero(c, 2)]);
        // 0 ⊂ k, k = k, k ⊂ R, 0 ⊂ R, R = R.
        assert_eq!(enumerate_chains(c, 2, 2, 2).unwrap().len(), 5);
    }

    #[test]
    fn submodule_listing() {
        let c = cfg(3);
        let r = RModule::new(c, vec![(3, 0)]).unwrap();
        assert_eq!(submodules(&r).unwrap().len(), 4);
        let kk = RModule::new(c, vec![(1, 0), (1, 0)]).unwrap();
        // 0, six lines of F_5^2, everything.
        assert_eq!(submodules(&kk).unwrap().len(), 8);
    }
}
