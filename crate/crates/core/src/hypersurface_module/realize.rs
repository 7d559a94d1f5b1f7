//! Graded vector spaces with a degree-raising nilpotent operator, and their
//! decomposition into cyclic strings.

use crate::field_poly::{Field, Scalar};
use crate::linalg::FieldMatrix;

/// Finite-dimensional graded space `⊕_D V_D` for `D` in `lo..lo+dims.len()`, with
/// `x: V_D → V_{D+1}` stored as `x[D - lo]` (shape `dim(D+1) × dim(D)`).
#[derive(Clone, Debug)]
pub(crate) struct GradedRep {
    pub field: Field,
    pub lo: i64,
    pub dims: Vec<usize>,
    pub x: Vec<FieldMatrix>,
}

impl GradedRep {
    pub fn empty(field: Field) -> GradedRep {
        GradedRep { field, lo: 0, dims: Vec::new(), x: Vec::new() }
    }

    /// Last degree carrying a (possibly zero) space.
    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn dim(&self, deg: i64) -> usize {
        if deg < self.lo || deg > self.hi() {
            0
        } else {
            self.dims[(deg - self.lo) as usize]
        }
    }

    pub fn x_at(&self, deg: i64) -> FieldMatrix {
        if deg < self.lo || deg >= self.hi() {
            FieldMatrix::zeros(self.field, self.dim(deg + 1), self.dim(deg))
        } else {
            self.x[(deg - self.lo) as usize].clone()
        }
    }

    pub fn apply_x(&self, deg: i64, v: &[Scalar]) -> Vec<Scalar> {
        if deg < self.lo || deg >= self.hi() {
            return vec![self.field.zero(); self.dim(deg + 1)];
        }
        self.x[(deg - self.lo) as usize].mul_vec(v)
    }

    /// `x^k v` for `v ∈ V_deg`.
    pub fn apply_x_pow(&self, deg: i64, k: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for j in 0..k {
            w = self.apply_x(deg + j as i64, &w);
        }
        w
    }
}

/// Quotient `V / W` of a graded space by an `x`-stable graded subspace, with chosen
/// complement coordinates (the non-pivot coordinates of each `W_D`).
#[derive(Clone, Debug)]
pub(crate) struct QuotientRep {
    pub rep: GradedRep,
    /// Per degree: reduced row basis of `W_D` and its pivot columns.
    reducers: Vec<(FieldMatrix, Vec<usize>)>,
    /// Per degree: coordinates kept in the quotient.
    kept: Vec<Vec<usize>>,
    ambient_lo: i64,
}

impl QuotientRep {
    pub fn new(ambient: &GradedRep, sub: &dyn Fn(i64) -> Vec<Vec<Scalar>>) -> QuotientRep {
        let field = ambient.field;
        let mut reducers = Vec::new();
        let mut kept = Vec::new();
        for (i, &n) in ambient.dims.iter().enumerate() {
            let deg = ambient.lo + i as i64;
            let rows = sub(deg);
            let red = if rows.is_empty() {
                (FieldMatrix::zeros(field, 0, n), Vec::new())
            } else {
                let r = FieldMatrix::from_rows(field, n, &rows).rref();
                let k = r.pivots.len();
                let mut m = FieldMatrix::zeros(field, k, n);
                for a in 0..k {
                    for b in 0..n {
                        m.set(a, b, r.matrix.get(a, b).clone());
                    }
                }
                (m, r.pivots)
            };
            kept.push((0..n).filter(|c| !red.1.contains(c)).collect());
            reducers.push(red);
        }
        let mut q = QuotientRep {
            rep: GradedRep::empty(field),
            reducers,
            kept,
            ambient_lo: ambient.lo,
        };
        let dims: Vec<usize> = q.kept.iter().map(Vec::len).collect();
        let mut xs = Vec::new();
        for i in 0..dims.len().saturating_sub(1) {
            let deg = ambient.lo + i as i64;
            let cols: Vec<Vec<Scalar>> = (0..dims[i])
                .map(|c| {
                    let mut e = vec![field.zero(); dims[i]];
                    e[c] = field.one();
                    q.project(deg + 1, &ambient.apply_x(deg, &q.lift(deg, &e)))
                })
                .collect();
            xs.push(FieldMatrix::from_columns(field, dims[i + 1], &cols));
        }
        q.rep = GradedRep { field, lo: ambient.lo, dims, x: xs };
        q
    }

    fn slot(&self, deg: i64) -> Option<usize> {
        let i = deg - self.ambient_lo;
        (i >= 0 && (i as usize) < self.kept.len()).then_some(i as usize)
    }

    /// Image of `v ∈ V_deg` in the quotient coordinates.
    pub fn project(&self, deg: i64, v: &[Scalar]) -> Vec<Scalar> {
        let Some(i) = self.slot(deg) else {
            return Vec::new();
        };
        let (m, pivots) = &self.reducers[i];
        let mut w = v.to_vec();
        for (r, &p) in pivots.iter().enumerate() {
            let c = w[p].clone();
            if c.is_zero() {
                continue;
            }
            for (j, wj) in w.iter_mut().enumerate() {
                let mj = m.get(r, j);
                if !mj.is_zero() {
                    *wj = &*wj - &(&c * mj);
                }
            }
        }
        self.kept[i].iter().map(|&j| w[j].clone()).collect()
    }

    /// A preimage of quotient coordinates `q` in `V_deg`.
    pub fn lift(&self, deg: i64, q: &[Scalar]) -> Vec<Scalar> {
        let Some(i) = self.slot(deg) else {
            return Vec::new();
        };
        let n = self.reducers[i].0.cols();
        let mut w = vec![self.rep.field.zero(); n];
        for (c, &j) in self.kept[i].iter().enumerate() {
            w[j] = q[c].clone();
        }
        w
    }
}

/// A cyclic string `h, xh, …, x^(e-1)h` with `h` in degree `s`.
#[derive(Clone, Debug)]
pub(crate) struct Strand {
    pub e: usize,
    pub s: i64,
    pub gen: Vec<Scalar>,
}

/// Splits an `x`-stable graded subspace `W ⊆ V` into strings whose elements form a basis
/// of `W`. When a string's image becomes dependent on older strings, the youngest string
/// involved is corrected so that it dies there.
pub(crate) fn decompose(rep: &GradedRep, sub: &dyn Fn(i64) -> Vec<Vec<Scalar>>) -> Vec<Strand> {
    let field = rep.field;
    let mut done: Vec<Strand> = Vec::new();
    // Alive strings: (s, gen, current image at the running degree), oldest first.
    let mut alive: Vec<(i64, Vec<Scalar>, Vec<Scalar>)> = Vec::new();
    if rep.dims.is_empty() {
        return done;
    }
    for deg in rep.lo..=rep.hi() + 1 {
        if deg > rep.lo {
            for a in alive.iter_mut() {
                a.2 = rep.apply_x(deg - 1, &a.2);
            }
        }
        let n = rep.dim(deg);
        // Echelon rows: (vector, pivot, combination over alive indices).
        let mut echelon: Vec<(Vec<Scalar>, usize, Vec<Scalar>)> = Vec::new();
        let mut survivors = Vec::new();
        let old = std::mem::take(&mut alive);
        let count = old.len();
        let mut gens: Vec<(i64, Vec<Scalar>)> = old.iter().map(|a| (a.0, a.1.clone())).collect();
        for (idx, (s, _, img)) in old.iter().enumerate() {
            let s = *s;
            let mut v = img.clone();
            let mut combo = vec![field.zero(); count];
            combo[idx] = field.one();
            reduce(&mut v, &mut combo, &echelon);
            match v.iter().position(|c| !c.is_zero()) {
                Some(p) => {
                    echelon.push((v, p, combo));
                    survivors.push(idx);
                }
                None => {
                    // Σ combo_j x^(deg - s_j) g_j = 0 with combo_idx = 1: fold the older
                    // generators into g_idx so that it dies in this degree.
                    let mut g = gens[idx].1.clone();
                    for (j, c) in combo.iter().enumerate() {
                        if j == idx || c.is_zero() {
                            continue;
                        }
                        let (sj, gj) = &gens[j];
                        let lifted = rep.apply_x_pow(*sj, (s - sj) as usize, gj);
                        for (a, b) in g.iter_mut().zip(&lifted) {
                            *a = &*a + &(c * b);
                        }
                    }
                    gens[idx].1 = g.clone();
                    done.push(Strand { e: (deg - s) as usize, s, gen: g });
                }
            }
        }
        for idx in survivors {
            alive.push((gens[idx].0, gens[idx].1.clone(), old[idx].2.clone()));
        }
        if deg <= rep.hi() {
            for w in sub(deg) {
                debug_assert_eq!(w.len(), n);
                let mut v = w.clone();
                reduce(&mut v, &mut [], &echelon);
                if let Some(p) = v.iter().position(|c| !c.is_zero()) {
                    echelon.push((v, p, Vec::new()));
                    alive.push((deg, w.clone(), w));
                }
            }
        }
    }
    done
}

fn reduce(v: &mut [Scalar], combo: &mut [Scalar], echelon: &[(Vec<Scalar>, usize, Vec<Scalar>)]) {
    for (row, p, rc) in echelon {
        let c = v[*p].clone();
        if c.is_zero() {
            continue;
        }
        let f = &c * &row[*p].inv().expect("pivot nonzero");
        for (a, b) in v.iter_mut().zip(row) {
            *a = &*a - &(&f * b);
        }
        for (a, b) in combo.iter_mut().zip(rc) {
            *a = &*a - &(&f * b);
        }
    }
}
