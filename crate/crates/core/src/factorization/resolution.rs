//! Projective resolutions by trivial factorizations: the epic
//! `ν^l(X^0) ⊕ ⊕_s ν^(s-1)(τ^-1 X^s) ↠ X` and the monic `X ↣ ⊕_k ν^k(X^k)`.

use crate::error::{AlgebraError, Result};
use crate::polymat::GradedMatrix;

use super::adjunction::{nu_k_left_inverse, nu_k_right_inverse};
use super::hom::FacMap;
use super::{direct_sum_all, nu, Factorization};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Epic,
    Monic,
}

/// A termwise split short exact sequence with a projective middle term.
///
/// For `Side::Epic`: `other ↣ object ↠ X` with `other_map` the kernel inclusion and
/// `map` the epic. For `Side::Monic`: `X ↣ object ↠ other` with `map` the monic and
/// `other_map` the cokernel projection.
#[derive(Clone, Debug)]
pub struct NuResolution {
    pub side: Side,
    pub object: Factorization,
    pub map: FacMap,
    pub other: Factorization,
    pub other_map: FacMap,
    /// Per position: a section of the epic, or a retraction of the monic.
    splittings: Vec<GradedMatrix>,
}

fn offsets(blocks: &[Vec<i64>]) -> Vec<usize> {
    let mut out = Vec::with_capacity(blocks.len() + 1);
    let mut acc = 0;
    out.push(0);
    for b in blocks {
        acc += b.len();
        out.push(acc);
    }
    out
}

fn indices_except(blocks: &[Vec<i64>], skip: usize) -> Vec<usize> {
    let off = offsets(blocks);
    (0..blocks.len()).filter(|&s| s != skip).flat_map(|s| off[s]..off[s + 1]).collect()
}

fn hstack(a: &GradedMatrix, b: &GradedMatrix) -> GradedMatrix {
    GradedMatrix::from_blocks(
        a.field(),
        &[a.src().to_vec(), b.src().to_vec()],
        &[a.tgt().to_vec()],
        &[vec![a.clone(), b.clone()]],
    )
}

fn vstack(a: &GradedMatrix, b: &GradedMatrix) -> GradedMatrix {
    GradedMatrix::from_blocks(
        a.field(),
        &[a.src().to_vec()],
        &[a.tgt().to_vec(), b.tgt().to_vec()],
        &[vec![a.clone()], vec![b.clone()]],
    )
}

/// Labels of summand `s` of the epic's source at position `j`.
fn epic_block(x: &Factorization, s: usize, j: usize) -> Vec<i64> {
    let d = x.d() as i64;
    let base = x.labels(s);
    if s == 0 || j >= s {
        base
    } else {
        base.iter().map(|n| n - d).collect()
    }
}

/// Labels of summand `k` of the monic's target at position `j`.
fn monic_block(x: &Factorization, k: usize, j: usize) -> Vec<i64> {
    let d = x.d() as i64;
    let base = x.labels(k);
    if j <= k {
        base
    } else {
        base.iter().map(|n| n + d).collect()
    }
}

/// The projective epic onto `X`, without its kernel.
pub(crate) fn nu_cover(x: &Factorization) -> (Factorization, FacMap, Vec<Vec<GradedMatrix>>) {
    let cfg = x.cfg();
    let field = x.field();
    let l = x.l();
    let d = x.d() as i64;
    let mut parts = vec![nu(cfg, &x.labels(0), l, l).expect("l >= 1")];
    for s in 1..=l {
        let lowered: Vec<i64> = x.labels(s).iter().map(|n| n - d).collect();
        parts.push(nu(cfg, &lowered, s - 1, l).expect("s - 1 < l"));
    }
    let object = direct_sum_all(cfg, l, &parts).expect("same shape");
    // pieces[s][j]: component j of the transported identity on summand s.
    let mut pieces: Vec<Vec<GradedMatrix>> = Vec::with_capacity(l + 1);
    pieces.push((0..=l).map(|j| x.composite(0, j)).collect());
    for s in 1..=l {
        let id = GradedMatrix::identity(field, &x.labels(s));
        pieces.push(nu_k_left_inverse(x, s, &id).expect("labels match").components().to_vec());
    }
    let comps = (0..=l)
        .map(|j| {
            let blocks: Vec<Vec<i64>> = (0..=l).map(|s| epic_block(x, s, j)).collect();
            let row: Vec<GradedMatrix> = (0..=l).map(|s| pieces[s][j].clone()).collect();
            GradedMatrix::from_blocks(field, &blocks, &[x.labels(j)], &[row])
        })
        .collect();
    (object, FacMap::new_unchecked(comps), pieces)
}

fn epic(x: &Factorization) -> Result<NuResolution> {
    let field = x.field();
    let l = x.l();
    let (object, map, pieces) = nu_cover(x);
    let mut kappa = Vec::with_capacity(l + 1);
    let mut sections = Vec::with_capacity(l + 1);
    for j in 0..=l {
        let blocks: Vec<Vec<i64>> = (0..=l).map(|s| epic_block(x, s, j)).collect();
        let kept: Vec<usize> = (0..=l).filter(|&s| s != j).collect();
        let grid: Vec<Vec<GradedMatrix>> = (0..=l)
            .map(|t| {
                kept.iter()
                    .map(|&s| {
                        if t == s {
                            GradedMatrix::identity(field, &blocks[s])
                        } else if t == j {
                            pieces[s][j].neg()
                        } else {
                            GradedMatrix::zero(field, &blocks[s], &blocks[t])
                        }
                    })
                    .collect()
            })
            .collect();
        let src_blocks: Vec<Vec<i64>> = kept.iter().map(|&s| blocks[s].clone()).collect();
        kappa.push(GradedMatrix::from_blocks(field, &src_blocks, &blocks, &grid));
        let sgrid: Vec<Vec<GradedMatrix>> = (0..=l)
            .map(|t| {
                vec![if t == j {
                    GradedMatrix::identity(field, &blocks[t])
                } else {
                    GradedMatrix::zero(field, &x.labels(j), &blocks[t])
                }]
            })
            .collect();
        sections.push(GradedMatrix::from_blocks(field, &[x.labels(j)], &blocks, &sgrid));
    }
    let psi = (0..l)
        .map(|j| {
            let next: Vec<Vec<i64>> = (0..=l).map(|s| epic_block(x, s, j + 1)).collect();
            let rows = indices_except(&next, j + 1);
            let cols: Vec<usize> = (0..kappa[j].cols()).collect();
            object.map(j).compose(&kappa[j]).block(&rows, &cols)
        })
        .collect();
    let other = Factorization::from_graded(psi, x.cfg())
        .map_err(|e| AlgebraError::Internal(format!("kernel of the projective epic: {e}")))?;
    let other_map = FacMap::new(&other, &object, kappa)?;
    Ok(NuResolution { side: Side::Epic, object, map, other, other_map, splittings: sections })
}

fn monic(x: &Factorization) -> Result<NuResolution> {
    let cfg = x.cfg();
    let field = x.field();
    let l = x.l();
    let parts: Vec<Factorization> = (0..=l).map(|k| nu(cfg, &x.labels(k), k, l).expect("k <= l")).collect();
    let object = direct_sum_all(cfg, l, &parts)?;
    let pieces: Vec<Vec<GradedMatrix>> = (0..=l)
        .map(|k| {
            let id = GradedMatrix::identity(field, &x.labels(k));
            nu_k_right_inverse(x, k, &id).expect("labels match").components().to_vec()
        })
        .collect();
    let mut iota = Vec::with_capacity(l + 1);
    let mut rho = Vec::with_capacity(l + 1);
    let mut retractions = Vec::with_capacity(l + 1);
    for j in 0..=l {
        let blocks: Vec<Vec<i64>> = (0..=l).map(|k| monic_block(x, k, j)).collect();
        let col: Vec<Vec<GradedMatrix>> = (0..=l).map(|k| vec![pieces[k][j].clone()]).collect();
        iota.push(GradedMatrix::from_blocks(field, &[x.labels(j)], &blocks, &col));
        let kept: Vec<usize> = (0..=l).filter(|&s| s != j).collect();
        let grid: Vec<Vec<GradedMatrix>> = kept
            .iter()
            .map(|&r| {
                (0..=l)
                    .map(|t| {
                        if t == r {
                            GradedMatrix::identity(field, &blocks[r])
                        } else if t == j {
                            pieces[r][j].neg()
                        } else {
                            GradedMatrix::zero(field, &blocks[t], &blocks[r])
                        }
                    })
                    .collect()
            })
            .collect();
        let tgt_blocks: Vec<Vec<i64>> = kept.iter().map(|&s| blocks[s].clone()).collect();
        rho.push(GradedMatrix::from_blocks(field, &blocks, &tgt_blocks, &grid));
        let rgrid = vec![(0..=l)
            .map(|t| {
                if t == j {
                    GradedMatrix::identity(field, &blocks[t])
                } else {
                    GradedMatrix::zero(field, &blocks[t], &x.labels(j))
                }
            })
            .collect::<Vec<_>>()];
        retractions.push(GradedMatrix::from_blocks(field, &blocks, &[x.labels(j)], &rgrid));
    }
    let psi = (0..l)
        .map(|j| {
            let here: Vec<Vec<i64>> = (0..=l).map(|k| monic_block(x, k, j)).collect();
            let cols = indices_except(&here, j);
            let phi = object.map(j);
            let rows: Vec<usize> = (0..phi.rows()).collect();
            rho[j + 1].compose(&phi.block(&rows, &cols))
        })
        .collect();
    let other = Factorization::from_graded(psi, cfg)
        .map_err(|e| AlgebraError::Internal(format!("cokernel of the projective monic: {e}")))?;
    let map = FacMap::new(x, &object, iota)?;
    let other_map = FacMap::new(&object, &other, rho)?;
    Ok(NuResolution { side: Side::Monic, object, map, other, other_map, splittings: retractions })
}

/// The projective epic onto `X` (or monic out of `X`) with its kernel (or cokernel).
pub fn nu_resolution(x: &Factorization, side: Side) -> Result<NuResolution> {
    let x = x.normalized();
    match side {
        Side::Epic => epic(&x),
        Side::Monic => monic(&x),
    }
}

impl NuResolution {
    /// At every position the two maps compose to zero and, together with the stored
    /// splitting, form an invertible square matrix over `k[x]`.
    pub fn is_termwise_split_exact(&self) -> bool {
        let l = self.object.l();
        (0..=l).all(|j| {
            let (first, second) = match self.side {
                Side::Epic => (&self.other_map.components()[j], &self.map.components()[j]),
                Side::Monic => (&self.map.components()[j], &self.other_map.components()[j]),
            };
            if !second.compose(first).is_zero() {
                return false;
            }
            let square = match self.side {
                Side::Epic => hstack(first, &self.splittings[j]),
                Side::Monic => vstack(second, &self.splittings[j]),
            };
            square.rows() == square.cols() && square.det().is_ok_and(|p| p.is_unit())
        })
    }
}
