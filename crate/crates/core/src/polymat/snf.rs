use super::matrix::PolyMatrix;
use crate::error::{AlgebraError, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field_poly::{poly_xgcd, Polynomial, Scalar};

/// Smith normal form `U·A·V = D` with unimodular `U`, `V`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: PolyMatrix,
    pub d: PolyMatrix,
    pub v: PolyMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl Snf {
    /// The nonzero invariant factors `d_1 | d_2 | …`.
    pub fn invariant_factors(&self) -> Vec<Polynomial> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Position of a nonzero entry of minimal degree in the trailing block starting at `(t, t)`.
fn min_degree_entry(m: &PolyMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            if let Some(deg) = m.get(i, j).degree() {
                if best.is_none_or(|b| deg < b.2) {
                    best = Some((i, j, deg));
                    if deg == 0 {
                        return Some((i, j));
                    }
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// The rational `c` making every coefficient of `c·polys` an integer with overall gcd 1;
/// `None` over a prime field or when already primitive. Rescaling a row of `D` together with
/// the matching row of `U` (or a column with `V`) is unimodular and stops coefficient swell.
fn primitive_scale<'a>(polys: impl Iterator<Item = &'a Polynomial>) -> Option<Scalar> {
    let mut den = BigInt::one();
    let mut nums: Vec<BigRational> = Vec::new();
    for p in polys {
        for c in p.coeffs() {
            match c {
                Scalar::Rational(r) if !r.is_zero() => {
                    den = den.lcm(r.denom());
                    nums.push(r.clone());
                }
                Scalar::Rational(_) => {}
                Scalar::Prime { .. } => return None,
            }
        }
    }
    let num = nums
        .iter()
        .map(|r| (r * BigRational::from_integer(den.clone())).to_integer())
        .fold(BigInt::zero(), |g, n| g.gcd(&n));
    if num.is_zero() || (num.is_one() && den.is_one()) {
        return None;
    }
    Some(Scalar::Rational(BigRational::new(den, num)))
}

fn normalize_row(d: &mut PolyMatrix, u: &mut PolyMatrix, i: usize) {
    let row = (0..d.cols()).map(|j| d.get(i, j)).chain((0..u.cols()).map(|j| u.get(i, j)));
    if let Some(c) = primitive_scale(row) {
        d.scale_row(i, &c);
        u.scale_row(i, &c);
    }
}

fn normalize_col(d: &mut PolyMatrix, v: &mut PolyMatrix, j: usize) {
    let col = (0..d.rows()).map(|i| d.get(i, j)).chain((0..v.rows()).map(|i| v.get(i, j)));
    if let Some(c) = primitive_scale(col) {
        d.scale_col(j, &c);
        v.scale_col(j, &c);
    }
}

/// Unimodular 2x2 step sending `(p, q)` to `(gcd, 0)`; a plain subtraction when `p | q`.
fn bezout(p: &Polynomial, q: &Polynomial) -> [[Polynomial; 2]; 2] {
    let field = p.field();
    if let Some(k) = q.exact_div(p) {
        return [[Polynomial::one(field), Polynomial::zero(field)], [k.neg(), Polynomial::one(field)]];
    }
    let (g, s, t) = poly_xgcd(p, q).expect("p is nonzero");
    let p_g = p.exact_div(&g).expect("gcd divides");
    let q_g = q.exact_div(&g).expect("gcd divides");
    [[s, t], [q_g.neg(), p_g]]
}

pub fn snf(a: &PolyMatrix) -> Snf {
    let field = a.field();
    let (r, c) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = PolyMatrix::identity(field, r);
    let mut v = PolyMatrix::identity(field, c);
    let mut rank = 0;
    for t in 0..r.min(c) {
        let Some((pi, pj)) = min_degree_entry(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            for i in t + 1..r {
                if !d.get(i, t).is_zero() {
                    let m = bezout(d.get(t, t), d.get(i, t));
                    d.mix_rows(t, i, &m);
                    u.mix_rows(t, i, &m);
                    normalize_row(&mut d, &mut u, t);
                    normalize_row(&mut d, &mut u, i);
                }
            }
            for j in t + 1..c {
                if !d.get(t, j).is_zero() {
                    let m = bezout(d.get(t, t), d.get(t, j));
                    d.mix_cols(t, j, &m);
                    v.mix_cols(t, j, &m);
                    normalize_col(&mut d, &mut v, t);
                    normalize_col(&mut d, &mut v, j);
                }
            }
            if (t + 1..r).any(|i| !d.get(i, t).is_zero()) {
                continue;
            }
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| d.get(i, j).exact_div(&pivot).is_none()));
            match offender {
                Some(i) => {
                    let one = Polynomial::one(field);
                    let zero = Polynomial::zero(field);
                    let m = [[one.clone(), one.clone()], [zero, one]];
                    d.mix_rows(t, i, &m);
                    u.mix_rows(t, i, &m);
                }
                None => break,
            }
        }
        let lead_inv = d.get(t, t).leading().expect("pivot is nonzero").inv().expect("nonzero");
        d.scale_row(t, &lead_inv);
        u.scale_row(t, &lead_inv);
        rank += 1;
    }
    Snf { u, d, v, rank }
}

/// Some `X` with `A·X = B` over `k[x]`, or `None` when no polynomial solution exists.
pub fn solve_right(a: &PolyMatrix, b: &PolyMatrix) -> Result<Option<PolyMatrix>> {
    if a.rows() != b.rows() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "solve_right: A has {} rows, B has {}",
            a.rows(),
            b.rows()
        )));
    }
    if a.field() != b.field() {
        return Err(AlgebraError::FieldMismatch(a.field(), b.field()));
    }
    let s = snf(a);
    Ok(solve_with(&s, b))
}

/// Solves `A·X = B` reusing a precomputed Smith form of `A`.
pub fn solve_with(s: &Snf, b: &PolyMatrix) -> Option<PolyMatrix> {
    let field = b.field();
    let ub = s.u.mul(b);
    let mut y = PolyMatrix::zeros(field, s.v.rows(), b.cols());
    for j in 0..b.cols() {
        for i in 0..ub.rows() {
            let e = ub.get(i, j);
            if i < s.rank {
                y.set(i, j, e.exact_div(s.d.get(i, i))?);
            } else if !e.is_zero() {
                return None;
            }
        }
    }
    Some(s.v.mul(&y))
}

/// Columns form a `k[x]`-basis of the kernel of `A`.
pub fn kernel_basis(a: &PolyMatrix) -> PolyMatrix {
    let s = snf(a);
    let cols: Vec<usize> = (s.rank..a.cols()).collect();
    s.v.submatrix(&(0..a.cols()).collect::<Vec<_>>(), &cols)
}
