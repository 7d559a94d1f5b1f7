//! Dense matrices over the ground field: row reduction, rank, kernels, solving.

use crate::field_poly::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: FieldMatrix,
    pub pivots: Vec<usize>,
}

impl FieldMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> FieldMatrix {
        FieldMatrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length");
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = FieldMatrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc = &acc + &(self.get(i, j) * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sum shape");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        FieldMatrix { data, ..*self }
    }

    pub fn sub(&self, other: &FieldMatrix) -> FieldMatrix {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> FieldMatrix {
        let data = self.data.iter().map(|a| a * c).collect();
        FieldMatrix { data, ..*self }
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = FieldMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Side-by-side concatenation.
    pub fn hstack(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.rows, other.rows, "hstack rows");
        let mut m = FieldMatrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space, as column vectors.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = matrix.get(r, f).neg();
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self·x = b`, or `None`.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let aug = self.hstack(&FieldMatrix::from_columns(self.field, self.rows, &[b.to_vec()]));
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Basis of the column space: the pivot columns of the original matrix.
    pub fn column_space(&self) -> Vec<Vec<Scalar>> {
        self.rref().pivots.iter().map(|&c| self.column(c)).collect()
    }

    pub fn inverse(&self) -> Option<FieldMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let Rref { matrix, pivots } = self.hstack(&FieldMatrix::identity(self.field, n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = FieldMatrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, matrix.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

/// Rank of a family of vectors of common length `len`.
pub fn span_rank(field: Field, len: usize, vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    FieldMatrix::from_columns(field, len, vectors).rank()
}

/// The reduced row echelon basis of `span(vectors)`; equal spans give equal bases.
pub fn canonical_span(field: Field, len: usize, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let Rref { matrix, pivots } = FieldMatrix::from_rows(field, len, vectors).rref();
    (0..pivots.len()).map(|r| (0..len).map(|c| matrix.get(r, c).clone()).collect()).collect()
}

/// Whether `v` lies in the span of `vectors`.
pub fn in_span(field: Field, vectors: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    if v.iter().all(Scalar::is_zero) {
        return true;
    }
    if vectors.is_empty() {
        return false;
    }
    FieldMatrix::from_columns(field, v.len(), vectors).solve(v).is_some()
}

/// Linear combination `Σ c_i · v_i`.
pub fn combine(field: Field, len: usize, coeffs: &[Scalar], vectors: &[Vec<Scalar>]) -> Vec<Scalar> {
    let mut out = vec![field.zero(); len];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o = &*o + &(c * x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(f: Field, rows: &[&[i64]]) -> FieldMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        FieldMatrix::from_rows(
            f,
            cols,
            &rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn rank_and_kernel() {
        let q = Field::Rational;
        let a = m(q, &[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn solve_and_inverse() {
        let f = Field::Prime(5);
        let a = m(f, &[&[1, 2], &[3, 4]]);
        let b = vec![f.from_i64(1), f.from_i64(0)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), FieldMatrix::identity(f, 2));
        let sing = m(f, &[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&b).is_none());
    }
}
