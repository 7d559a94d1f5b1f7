use std::fmt;

use super::matrix::PolyMatrix;
use crate::error::{AlgebraError, Result};
use crate::field_poly::{Field, Polynomial, Scalar};
use crate::linalg::FieldMatrix;

/// Degree-0 map between graded free modules `⊕S(src_i) → ⊕S(tgt_j)`.
///
/// A label `n` stands for the twist `S(n)`, whose generator sits in degree `-n`.
/// Entry `(j, i)` is a scalar multiple of `x^(tgt_j - src_i)`, and zero when that
/// exponent is negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMatrix {
    mat: PolyMatrix,
    src: Vec<i64>,
    tgt: Vec<i64>,
}

/// Generators of `⊕S(labels)` present in degree `deg`: index `j` contributes the
/// basis element `x^(deg + labels_j) e_j` whenever that exponent is nonnegative.
pub fn free_alive(labels: &[i64], deg: i64) -> Vec<usize> {
    (0..labels.len()).filter(|&j| deg + labels[j] >= 0).collect()
}

/// First entry of a matrix that is not homogeneous of its required degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GradingViolation {
    pub row: usize,
    pub col: usize,
    pub expected: i64,
}

/// Checks the homogeneity of every entry against the degree vectors.
pub fn graded_check(mat: &PolyMatrix, src: &[i64], tgt: &[i64]) -> std::result::Result<(), GradingViolation> {
    for j in 0..mat.rows() {
        for i in 0..mat.cols() {
            let expected = tgt[j] - src[i];
            if !mat.get(j, i).is_homogeneous_of(expected) {
                return Err(GradingViolation { row: j, col: i, expected });
            }
        }
    }
    Ok(())
}

impl GradedMatrix {
    pub fn new(mat: PolyMatrix, src: Vec<i64>, tgt: Vec<i64>) -> Result<GradedMatrix> {
        if mat.cols() != src.len() || mat.rows() != tgt.len() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} matrix with {} source and {} target degrees",
                mat.rows(),
                mat.cols(),
                src.len(),
                tgt.len()
            )));
        }
        graded_check(&mat, &src, &tgt).map_err(|v| {
            AlgebraError::DegreeMismatch(format!(
                "entry ({}, {}) is not homogeneous of degree {}",
                v.row, v.col, v.expected
            ))
        })?;
        Ok(GradedMatrix { mat, src, tgt })
    }

    pub(crate) fn new_unchecked(mat: PolyMatrix, src: Vec<i64>, tgt: Vec<i64>) -> GradedMatrix {
        debug_assert!(graded_check(&mat, &src, &tgt).is_ok(), "graded invariant");
        GradedMatrix { mat, src, tgt }
    }

    pub fn identity(field: Field, labels: &[i64]) -> GradedMatrix {
        GradedMatrix::x_pow(field, labels, 0)
    }

    /// `x^k·I` from `labels` to `labels + k`.
    pub fn x_pow(field: Field, labels: &[i64], k: usize) -> GradedMatrix {
        let mat = PolyMatrix::scalar_diag(field, labels.len(), &Polynomial::x_pow(field, k));
        let tgt = labels.iter().map(|&n| n + k as i64).collect();
        GradedMatrix { mat, src: labels.to_vec(), tgt }
    }

    pub fn zero(field: Field, src: &[i64], tgt: &[i64]) -> GradedMatrix {
        GradedMatrix {
            mat: PolyMatrix::zeros(field, tgt.len(), src.len()),
            src: src.to_vec(),
            tgt: tgt.to_vec(),
        }
    }

    /// Builds `c_{ji}·x^(tgt_j - src_i)` from a scalar grid, ignoring negative-degree slots.
    pub fn from_coefficients(field: Field, src: &[i64], tgt: &[i64], coeff: impl Fn(usize, usize) -> Scalar) -> GradedMatrix {
        let mut mat = PolyMatrix::zeros(field, tgt.len(), src.len());
        for j in 0..tgt.len() {
            for i in 0..src.len() {
                let deg = tgt[j] - src[i];
                if deg >= 0 {
                    mat.set(j, i, Polynomial::monomial(coeff(j, i), deg as usize));
                }
            }
        }
        GradedMatrix { mat, src: src.to_vec(), tgt: tgt.to_vec() }
    }

    pub fn mat(&self) -> &PolyMatrix {
        &self.mat
    }

    pub fn src(&self) -> &[i64] {
        &self.src
    }

    pub fn tgt(&self) -> &[i64] {
        &self.tgt
    }

    pub fn field(&self) -> Field {
        self.mat.field()
    }

    pub fn rows(&self) -> usize {
        self.mat.rows()
    }

    pub fn cols(&self) -> usize {
        self.mat.cols()
    }

    /// Scalar coefficient of entry `(j, i)` in its required degree.
    pub fn coefficient(&self, j: usize, i: usize) -> Scalar {
        let deg = self.tgt[j] - self.src[i];
        if deg < 0 {
            self.field().zero()
        } else {
            self.mat.get(j, i).coeff(deg as usize)
        }
    }

    /// Composite `self ∘ rhs`.
    pub fn mat_mul(&self, rhs: &GradedMatrix) -> Result<GradedMatrix> {
        if rhs.tgt != self.src {
            return Err(AlgebraError::DegreeMismatch(format!(
                "target {:?} of the right factor differs from source {:?} of the left factor",
                rhs.tgt, self.src
            )));
        }
        Ok(GradedMatrix {
            mat: self.mat.checked_mul(&rhs.mat)?,
            src: rhs.src.clone(),
            tgt: self.tgt.clone(),
        })
    }

    /// Composite of maps already known to chain.
    pub fn compose(&self, rhs: &GradedMatrix) -> GradedMatrix {
        self.mat_mul(rhs).expect("graded composite")
    }

    pub fn add(&self, other: &GradedMatrix) -> GradedMatrix {
        assert_eq!((&self.src, &self.tgt), (&other.src, &other.tgt), "graded sum");
        GradedMatrix { mat: self.mat.add(&other.mat), ..self.clone() }
    }

    pub fn sub(&self, other: &GradedMatrix) -> GradedMatrix {
        assert_eq!((&self.src, &self.tgt), (&other.src, &other.tgt), "graded difference");
        GradedMatrix { mat: self.mat.sub(&other.mat), ..self.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> GradedMatrix {
        GradedMatrix { mat: self.mat.scale(c), ..self.clone() }
    }

    pub fn neg(&self) -> GradedMatrix {
        GradedMatrix { mat: self.mat.neg(), ..self.clone() }
    }

    /// Adds `t` to every label on both sides; the entries are unchanged.
    pub fn shifted(&self, t: i64) -> GradedMatrix {
        GradedMatrix {
            mat: self.mat.clone(),
            src: self.src.iter().map(|n| n + t).collect(),
            tgt: self.tgt.iter().map(|n| n + t).collect(),
        }
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &GradedMatrix) -> GradedMatrix {
        let mut src = self.src.clone();
        src.extend_from_slice(&other.src);
        let mut tgt = self.tgt.clone();
        tgt.extend_from_slice(&other.tgt);
        GradedMatrix { mat: self.mat.block_diag(&other.mat), src, tgt }
    }

    /// Assembles a block matrix; `blocks[r][c]` maps source block `c` to target block `r`.
    pub fn from_blocks(field: Field, src_blocks: &[Vec<i64>], tgt_blocks: &[Vec<i64>], blocks: &[Vec<GradedMatrix>]) -> GradedMatrix {
        let src: Vec<i64> = src_blocks.concat();
        let tgt: Vec<i64> = tgt_blocks.concat();
        let mut mat = PolyMatrix::zeros(field, tgt.len(), src.len());
        let mut r0 = 0;
        for (r, tb) in tgt_blocks.iter().enumerate() {
            let mut c0 = 0;
            for (c, sb) in src_blocks.iter().enumerate() {
                let b = &blocks[r][c];
                assert_eq!((b.src(), b.tgt()), (sb.as_slice(), tb.as_slice()), "block ({r}, {c}) labels");
                mat.paste(r0, c0, &b.mat);
                c0 += sb.len();
            }
            r0 += tb.len();
        }
        GradedMatrix::new_unchecked(mat, src, tgt)
    }

    /// Sub-block with the given rows and columns.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> GradedMatrix {
        GradedMatrix {
            mat: self.mat.submatrix(rows, cols),
            src: cols.iter().map(|&i| self.src[i]).collect(),
            tgt: rows.iter().map(|&j| self.tgt[j]).collect(),
        }
    }

    pub fn det(&self) -> Result<Polynomial> {
        self.mat.det()
    }

    /// Square with nonzero determinant.
    pub fn is_injective_square(&self) -> bool {
        self.mat.is_square() && self.det().is_ok_and(|d| !d.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    /// The realized linear map in degree `deg`, on the monomial bases of [`free_alive`].
    pub fn linear_at(&self, deg: i64) -> FieldMatrix {
        let cols = free_alive(&self.src, deg);
        let rows = free_alive(&self.tgt, deg);
        let mut m = FieldMatrix::zeros(self.field(), rows.len(), cols.len());
        for (r, &j) in rows.iter().enumerate() {
            for (c, &i) in cols.iter().enumerate() {
                m.set(r, c, self.coefficient(j, i));
            }
        }
        m
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rows": self.rows(),
            "cols": self.cols(),
            "entries": self.mat.to_json_entries(),
            "src_degs": self.src,
            "tgt_degs": self.tgt,
        })
    }
}

impl fmt::Display for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {:?} -> {:?}", self.mat, self.src, self.tgt)
    }
}
