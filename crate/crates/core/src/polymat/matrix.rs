use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::field_poly::{Field, Polynomial, Scalar};

/// Dense matrix over `k[x]`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix {
            field,
            rows,
            cols,
            entries: vec![Polynomial::zero(field); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> PolyMatrix {
        PolyMatrix::scalar_diag(field, n, &Polynomial::one(field))
    }

    /// `p·I_n`.
    pub fn scalar_diag(field: Field, n: usize, p: &Polynomial) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn diag(field: Field, entries: &[Polynomial]) -> PolyMatrix {
        let n = entries.len();
        let mut m = PolyMatrix::zeros(field, n, n);
        for (i, p) in entries.iter().enumerate() {
            m.set(i, i, p.clone());
        }
        m
    }

    /// Builds from row-major nested rows; every row must have `cols` entries.
    pub fn from_rows(field: Field, rows: Vec<Vec<Polynomial>>, cols: usize) -> Result<PolyMatrix> {
        let r = rows.len();
        let mut entries = Vec::with_capacity(r * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for p in row {
                if p.field() != field {
                    return Err(AlgebraError::FieldMismatch(field, p.field()));
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix { field, rows: r, cols, entries })
    }

    /// Convenience constructor from integer coefficient lists.
    pub fn from_i64s(field: Field, rows: &[&[&[i64]]]) -> PolyMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let grid = rows
            .iter()
            .map(|r| r.iter().map(|c| Polynomial::from_i64s(field, c)).collect())
            .collect();
        PolyMatrix::from_rows(field, grid, cols).expect("rectangular literal")
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

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        debug_assert_eq!(p.field(), self.field);
        self.entries[i * self.cols + j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn checked_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch(self.field, other.field));
        }
        let mut out = PolyMatrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Product of matrices already known to be compatible.
    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        self.checked_mul(other).expect("matrix product shape")
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sum shape");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect();
        PolyMatrix { entries, ..*self }
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyMatrix {
        PolyMatrix {
            entries: self.entries.iter().map(Polynomial::neg).collect(),
            ..*self
        }
    }

    pub fn scale(&self, c: &Scalar) -> PolyMatrix {
        PolyMatrix {
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
            ..*self
        }
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &PolyMatrix) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, other);
        m
    }

    /// Copies `block` into `self` with its top-left corner at `(r, c)`.
    pub fn paste(&mut self, r: usize, c: usize, block: &PolyMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> PolyMatrix {
        self.submatrix(&(0..self.rows).collect::<Vec<_>>(), &[j])
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(i, j).scale(c);
            self.set(i, j, v);
        }
    }

    /// `(row_a, row_b) ← (m00·row_a + m01·row_b, m10·row_a + m11·row_b)`.
    pub(crate) fn mix_rows(&mut self, a: usize, b: usize, m: &[[Polynomial; 2]; 2]) {
        for j in 0..self.cols {
            let (x, y) = (self.get(a, j).clone(), self.get(b, j).clone());
            self.set(a, j, m[0][0].mul(&x).add(&m[0][1].mul(&y)));
            self.set(b, j, m[1][0].mul(&x).add(&m[1][1].mul(&y)));
        }
    }

    /// `(col_a, col_b) ← (m00·col_a + m01·col_b, m10·col_a + m11·col_b)`.
    pub(crate) fn mix_cols(&mut self, a: usize, b: usize, m: &[[Polynomial; 2]; 2]) {
        for i in 0..self.rows {
            let (x, y) = (self.get(i, a).clone(), self.get(i, b).clone());
            self.set(i, a, m[0][0].mul(&x).add(&m[0][1].mul(&y)));
            self.set(i, b, m[1][0].mul(&x).add(&m[1][1].mul(&y)));
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, c: &Scalar) {
        for i in 0..self.rows {
            let v = self.get(i, j).scale(c);
            self.set(i, j, v);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(AlgebraError::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Polynomial::one(self.field));
        }
        let mut m = self.clone();
        let mut sign = false;
        let mut prev = Polynomial::one(self.field);
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                    return Ok(Polynomial::zero(self.field));
                };
                m.swap_rows(k, p);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.get(i, j).mul(m.get(k, k)).sub(&m.get(i, k).mul(m.get(k, j)));
                    let v = num
                        .exact_div(&prev)
                        .ok_or_else(|| AlgebraError::Internal("Bareiss division not exact".into()))?;
                    m.set(i, j, v);
                }
                m.set(i, k, Polynomial::zero(self.field));
            }
            prev = m.get(k, k).clone();
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if sign { d.neg() } else { d })
    }

    pub fn to_json_entries(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|i| serde_json::Value::Array((0..self.cols).map(|j| self.get(i, j).to_json()).collect()))
                .collect(),
        )
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let q = Field::Rational;
        let a = PolyMatrix::from_i64s(q, &[&[&[0, 1], &[1]], &[&[2], &[0, 0, 1]]]);
        // x·x^2 − 1·2
        assert_eq!(a.det().unwrap(), Polynomial::from_i64s(q, &[-2, 0, 0, 1]));
        let z = PolyMatrix::from_i64s(q, &[&[&[0, 1], &[0, 1]], &[&[1], &[1]]]);
        assert!(z.det().unwrap().is_zero());
        let p = PolyMatrix::from_i64s(q, &[&[&[], &[1]], &[&[1], &[]]]);
        assert_eq!(p.det().unwrap(), Polynomial::from_i64s(q, &[-1]));
    }
}
