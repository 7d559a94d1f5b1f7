//! Seeded random objects for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::factorization::{direct_sum_all, fac_hom_basis, nu_resolution, FacMap, Factorization, Side};
use crate::field_poly::{Field, Polynomial, Scalar};
use crate::functors::{reconstruct, FacSes};
use crate::hypersurface_module::{map_ker_cok_im, HypersurfaceConfig, RModule};
use crate::monochain::{chain_hom_basis, random_combination, ChainMap, MonoChain};
use crate::polymat::{GradedMatrix, PolyMatrix};

use super::enumerate::map_from_free;

pub fn random_scalar<R: Rng>(rng: &mut R, field: Field) -> Scalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
        Field::Rational => field.from_i64(rng.gen_range(-3..=3)),
    }
}

fn random_unit<R: Rng>(rng: &mut R, field: Field) -> Scalar {
    loop {
        let c = random_scalar(rng, field);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A graded matrix with independent random coefficients in every admissible slot.
pub fn random_graded_matrix<R: Rng>(rng: &mut R, field: Field, src: &[i64], tgt: &[i64]) -> GradedMatrix {
    let mut grid = vec![vec![field.zero(); src.len()]; tgt.len()];
    for row in grid.iter_mut() {
        for c in row.iter_mut() {
            *c = random_scalar(rng, field);
        }
    }
    GradedMatrix::from_coefficients(field, src, tgt, |j, i| grid[j][i].clone())
}

/// A random degree-0 automorphism of `⊕S(labels)` and its inverse, as a product of
/// elementary and diagonal factors.
pub fn random_automorphism<R: Rng>(rng: &mut R, field: Field, labels: &[i64]) -> (GradedMatrix, GradedMatrix) {
    let n = labels.len();
    let mut g = GradedMatrix::identity(field, labels);
    let mut inv = g.clone();
    for _ in 0..2 * n {
        if n < 2 || rng.gen_bool(0.25) {
            let i = rng.gen_range(0..n.max(1));
            if n == 0 {
                break;
            }
            let c = random_unit(rng, field);
            let ci = c.inv().expect("unit");
            let diag = |s: &Scalar| {
                GradedMatrix::from_coefficients(field, labels, labels, |a, b| {
                    if a != b {
                        field.zero()
                    } else if a == i {
                        s.clone()
                    } else {
                        field.one()
                    }
                })
            };
            g = diag(&c).compose(&g);
            inv = inv.compose(&diag(&ci));
        } else {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            if labels[i] < labels[j] {
                continue;
            }
            let c = random_scalar(rng, field);
            let elem = |s: &Scalar| {
                let mut m = PolyMatrix::identity(field, n);
                m.set(i, j, Polynomial::monomial(s.clone(), (labels[i] - labels[j]) as usize));
                GradedMatrix::new(m, labels.to_vec(), labels.to_vec()).expect("graded elementary matrix")
            };
            g = elem(&c).compose(&g);
            inv = inv.compose(&elem(&c.neg()));
        }
    }
    (g, inv)
}

/// Replaces every `A^k` by `G_(k+1) A^k G_k^-1` for random automorphisms `G_k`.
pub fn conjugate<R: Rng>(rng: &mut R, x: &Factorization) -> Factorization {
    let field = x.field();
    let autos: Vec<(GradedMatrix, GradedMatrix)> = (0..=x.l()).map(|k| random_automorphism(rng, field, &x.labels(k))).collect();
    let maps = (0..x.l()).map(|k| autos[k + 1].0.compose(&x.map(k)).compose(&autos[k].1)).collect();
    Factorization::from_graded(maps, x.cfg()).expect("conjugate of a factorization")
}

/// A rank-one factorization `x^(a_0), …, x^(a_(l-1))` with `Σ a_k <= d`, starting at `label`.
pub fn monomial_factorization(cfg: HypersurfaceConfig, exps: &[usize], label: i64) -> Result<Factorization> {
    let field = cfg.field;
    let mut maps = Vec::with_capacity(exps.len());
    let mut at = label;
    for &a in exps {
        maps.push(GradedMatrix::x_pow(field, &[at], a));
        at += a as i64;
    }
    Ok(Factorization::from_graded(maps, cfg)?)
}

fn random_composition<R: Rng>(rng: &mut R, total: usize, parts: usize) -> Vec<usize> {
    let mut out = vec![0; parts];
    for _ in 0..total {
        out[rng.gen_range(0..parts)] += 1;
    }
    out
}

/// A conjugated direct sum of `rank` random rank-one factorizations.
pub fn random_monomial_sum<R: Rng>(rng: &mut R, cfg: HypersurfaceConfig, l: usize, rank: usize, window: i64) -> Factorization {
    let parts: Vec<Factorization> = (0..rank)
        .map(|_| {
            let exps = random_composition(rng, cfg.d, l + 1);
            monomial_factorization(cfg, &exps[..l], rng.gen_range(-window..=0)).expect("monomial factorization")
        })
        .collect();
    conjugate(rng, &direct_sum_all(cfg, l, &parts).expect("same l"))
}

/// `Y = [[A_X, H], [0, A_Z]]` for random `H`, when that has a closing map.
pub fn triangular_extension<R: Rng>(rng: &mut R, x: &Factorization, z: &Factorization, attempts: usize) -> Option<FacSes> {
    let field = x.field();
    let l = x.l();
    for attempt in 0..attempts {
        let maps: Vec<GradedMatrix> = (0..l)
            .map(|k| {
                let h = if attempt + 1 == attempts {
                    GradedMatrix::zero(field, &z.labels(k), &x.labels(k + 1))
                } else {
                    random_graded_matrix(rng, field, &z.labels(k), &x.labels(k + 1))
                };
                let lower = GradedMatrix::zero(field, &x.labels(k), &z.labels(k + 1));
                GradedMatrix::from_blocks(
                    field,
                    &[x.labels(k), z.labels(k)],
                    &[x.labels(k + 1), z.labels(k + 1)],
                    &[vec![x.map(k), h], vec![lower, z.map(k)]],
                )
            })
            .collect();
        let Ok(y) = Factorization::from_graded(maps, x.cfg()) else {
            continue;
        };
        let inc = (0..=l)
            .map(|k| {
                GradedMatrix::from_blocks(
                    field,
                    &[x.labels(k)],
                    &[x.labels(k), z.labels(k)],
                    &[vec![GradedMatrix::identity(field, &x.labels(k))], vec![GradedMatrix::zero(field, &x.labels(k), &z.labels(k))]],
                )
            })
            .collect();
        let proj = (0..=l)
            .map(|k| {
                GradedMatrix::from_blocks(
                    field,
                    &[x.labels(k), z.labels(k)],
                    &[z.labels(k)],
                    &[vec![GradedMatrix::zero(field, &x.labels(k), &z.labels(k)), GradedMatrix::identity(field, &z.labels(k))]],
                )
            })
            .collect();
        let inc = FacMap::new(x, &y, inc).ok()?;
        let proj = FacMap::new(&y, z, proj).ok()?;
        return Some(FacSes { x: x.clone(), y, z: z.clone(), inc, proj });
    }
    None
}

/// A random module with `1..=max_summands` summands, generators in `0..=window`.
pub fn random_module<R: Rng>(rng: &mut R, cfg: HypersurfaceConfig, max_summands: usize, window: i64) -> RModule {
    let n = rng.gen_range(1..=max_summands);
    let summands = (0..n).map(|_| (rng.gen_range(1..=cfg.d), rng.gen_range(0..=window))).collect();
    RModule::new(cfg, summands).expect("in range")
}

/// A random chain: a random top module and successive images of random maps from free
/// modules.
pub fn random_chain<R: Rng>(rng: &mut R, cfg: HypersurfaceConfig, l: usize, max_summands: usize, window: i64) -> MonoChain {
    let top = random_module(rng, cfg, max_summands, window);
    let mut objects = vec![top];
    let mut maps = Vec::new();
    for _ in 1..l {
        let u = objects.last().expect("nonempty").clone();
        let (sub, inc) = random_submodule(rng, &u);
        objects.push(sub);
        maps.push(inc);
    }
    objects.reverse();
    maps.reverse();
    MonoChain::new(objects, maps).expect("images give monomorphisms")
}

fn random_submodule<R: Rng>(rng: &mut R, u: &RModule) -> (RModule, crate::hypersurface_module::ModuleMap) {
    let field = u.field();
    let Some((lo, hi)) = u.degree_range() else {
        return (u.clone(), crate::hypersurface_module::ModuleMap::identity(u));
    };
    let count = rng.gen_range(0..=u.num_summands());
    let gens: Vec<(i64, Vec<Scalar>)> = (0..count)
        .map(|_| {
            let deg = rng.gen_range(lo..=hi);
            (deg, (0..u.dim_at(deg)).map(|_| random_scalar(rng, field)).collect())
        })
        .collect();
    let f = map_from_free(u, &gens).expect("elements of U define maps from free modules");
    let kci = map_ker_cok_im(&f);
    (kci.im, kci.im_inclusion)
}

/// A random element of `Hom(X, Y)`.
pub fn random_fac_map<R: Rng>(rng: &mut R, x: &Factorization, y: &Factorization) -> FacMap {
    let basis = fac_hom_basis(x, y);
    let coeffs = random_combination(rng, x.field(), basis.len());
    basis.iter().zip(&coeffs).fold(FacMap::zero(x, y), |acc, (b, c)| acc.add(&b.scale(c)))
}

/// A random element of `Hom(U, V)`.
pub fn random_chain_map<R: Rng>(rng: &mut R, u: &MonoChain, v: &MonoChain) -> ChainMap {
    let basis = chain_hom_basis(u, v);
    let coeffs = random_combination(rng, u.cfg().field, basis.len());
    basis.iter().zip(&coeffs).fold(ChainMap::zero(u, v), |acc, (b, c)| acc.add(&b.scale(c)))
}

/// Mixes the generators: conjugated monomial sums, triangular extensions, reconstructed
/// random chains, and shifted members of `pool`.
pub fn random_factorization<R: Rng>(
    rng: &mut R,
    cfg: HypersurfaceConfig,
    l: usize,
    max_rank: usize,
    window: i64,
    pool: &[Factorization],
) -> Factorization {
    let kind = rng.gen_range(0..if pool.is_empty() { 3 } else { 4 });
    match kind {
        0 => {
            let rank = rng.gen_range(1..=max_rank);
            random_monomial_sum(rng, cfg, l, rank, window)
        }
        1 => {
            let x = random_monomial_sum(rng, cfg, l, 1, window);
            let z = random_monomial_sum(rng, cfg, l, 1, window);
            triangular_extension(rng, &x, &z, 8).expect("the last attempt is split").y
        }
        2 => reconstruct(&random_chain(rng, cfg, l, max_rank, window)).expect("reconstruct of a valid chain"),
        _ => {
            let x = pool.choose(rng).expect("nonempty pool");
            let t = rng.gen_range(-window..=window);
            conjugate(rng, &x.shifted(t))
        }
    }
}

/// A termwise split short exact sequence: a triangular extension or a projective resolution.
pub fn random_ses<R: Rng>(rng: &mut R, cfg: HypersurfaceConfig, l: usize, window: i64) -> FacSes {
    if rng.gen_bool(0.25) {
        let rank = rng.gen_range(1..=2);
        let x = random_monomial_sum(rng, cfg, l, rank, window);
        let res = nu_resolution(&x, Side::Epic).expect("resolution");
        return FacSes { x: res.other, y: res.object, z: x, inc: res.other_map, proj: res.map };
    }
    let (rx, rz) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
    let x = random_monomial_sum(rng, cfg, l, rx, window);
    let z = random_monomial_sum(rng, cfg, l, rz, window);
    triangular_extension(rng, &x, &z, 8).expect("the last attempt is split")
}
