use std::fmt;

use super::scalar::{Field, Scalar};
use crate::error::AlgebraError;

/// Dense univariate polynomial, lowest degree first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Scalar>,
}

/// Selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivRem,
}

/// Result of [`poly_arith`]: a single polynomial or a quotient/remainder pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyResult {
    Value(Polynomial),
    DivRem(Polynomial, Polynomial),
}

/// Checked binary arithmetic on polynomials.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: PolyOp) -> Result<PolyResult, AlgebraError> {
    a.same_field(b)?;
    Ok(match op {
        PolyOp::Add => PolyResult::Value(a.add(b)),
        PolyOp::Sub => PolyResult::Value(a.sub(b)),
        PolyOp::Mul => PolyResult::Value(a.mul(b)),
        PolyOp::DivRem => {
            let (q, r) = a.div_rem(b)?;
            PolyResult::DivRem(q, r)
        }
    })
}

/// Monic greatest common divisor.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, AlgebraError> {
    a.same_field(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(AlgebraError::GcdOfZeros);
    }
    let (mut u, mut v) = (a.clone(), b.clone());
    while !v.is_zero() {
        let (_, r) = u.div_rem(&v)?;
        u = v;
        v = r;
    }
    u.monic()
}

/// Monic `g = gcd(a, b)` with Bezout cofactors: `g = s·a + t·b`.
pub fn poly_xgcd(a: &Polynomial, b: &Polynomial) -> Result<(Polynomial, Polynomial, Polynomial), AlgebraError> {
    a.same_field(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(AlgebraError::GcdOfZeros);
    }
    let field = a.field;
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Polynomial::one(field), Polynomial::zero(field));
    let (mut t0, mut t1) = (Polynomial::zero(field), Polynomial::one(field));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    let lead = r0.leading().expect("nonzero gcd").inv()?;
    Ok((r0.scale(&lead), s0.scale(&lead), t0.scale(&lead)))
}

impl Polynomial {
    /// Builds a polynomial, trimming trailing zeros; all coefficients must lie in `field`.
    pub fn new(field: Field, coeffs: Vec<Scalar>) -> Result<Polynomial, AlgebraError> {
        if let Some(c) = coeffs.iter().find(|c| c.field() != field) {
            return Err(AlgebraError::FieldMismatch(field, c.field()));
        }
        Ok(Polynomial::from_trusted(field, coeffs))
    }

    fn from_trusted(field: Field, mut coeffs: Vec<Scalar>) -> Polynomial {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn from_i64s(field: Field, coeffs: &[i64]) -> Polynomial {
        Polynomial::from_trusted(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> Polynomial {
        Polynomial { field, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> Polynomial {
        Polynomial::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Polynomial {
        Polynomial::from_trusted(c.field(), vec![c])
    }

    /// `c·x^n`.
    pub fn monomial(c: Scalar, n: usize) -> Polynomial {
        let field = c.field();
        if c.is_zero() {
            return Polynomial::zero(field);
        }
        let mut coeffs = vec![field.zero(); n];
        coeffs.push(c);
        Polynomial { field, coeffs }
    }

    /// `x^n`.
    pub fn x_pow(field: Field, n: usize) -> Polynomial {
        Polynomial::monomial(field.one(), n)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `x^n` (zero beyond the degree).
    pub fn coeff(&self, n: usize) -> Scalar {
        self.coeffs.get(n).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    /// `Some((c, n))` when the polynomial is `c·x^n` with `c ≠ 0`.
    pub fn as_monomial(&self) -> Option<(Scalar, usize)> {
        let n = self.degree()?;
        if self.coeffs[..n].iter().all(Scalar::is_zero) {
            Some((self.coeffs[n].clone(), n))
        } else {
            None
        }
    }

    /// Zero or homogeneous of degree `n`.
    pub fn is_homogeneous_of(&self, n: i64) -> bool {
        match self.as_monomial() {
            None => self.is_zero(),
            Some((_, k)) => n >= 0 && k as i64 == n,
        }
    }

    fn same_field(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch(self.field, other.field))
        }
    }

    fn assert_field(&self, other: &Polynomial) {
        assert_eq!(self.field, other.field, "polynomial field mismatch");
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.assert_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Polynomial::from_trusted(self.field, coeffs)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            field: self.field,
            coeffs: self.coeffs.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.assert_field(other);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Polynomial::from_trusted(self.field, coeffs)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        Polynomial::from_trusted(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^n`.
    pub fn shift_up(&self, n: usize) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { field: self.field, coeffs }
    }

    /// Euclidean division `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), AlgebraError> {
        self.same_field(divisor)?;
        let dd = divisor.degree().ok_or(AlgebraError::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Polynomial::zero(self.field), self.clone()));
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * b);
            }
            q[k] = c;
        }
        Ok((
            Polynomial::from_trusted(self.field, q),
            Polynomial::from_trusted(self.field, r),
        ))
    }

    /// Exact quotient, or `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.div_rem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Result<Polynomial, AlgebraError> {
        match self.leading() {
            None => Ok(self.clone()),
            Some(l) => Ok(self.scale(&l.inv()?)),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(Scalar::to_json).collect())
    }

    pub fn from_json(field: Field, v: &serde_json::Value) -> Result<Polynomial, AlgebraError> {
        let arr = v
            .as_array()
            .ok_or_else(|| AlgebraError::Parse(format!("polynomial must be an array, got {v}")))?;
        let coeffs = arr
            .iter()
            .map(|c| Scalar::from_json(field, c))
            .collect::<Result<Vec<_>, _>>()?;
        Polynomial::new(field, coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{c}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(Field::Rational, c)
    }

    #[test]
    fn difference_of_squares() {
        let r = poly_arith(&q(&[1, 1]), &q(&[-1, 1]), PolyOp::Mul).unwrap();
        assert_eq!(r, PolyResult::Value(q(&[-1, 0, 1])));
    }

    #[test]
    fn monomial_division() {
        let r = poly_arith(&q(&[0, 0, 0, 1]), &q(&[0, 0, 1]), PolyOp::DivRem).unwrap();
        assert_eq!(r, PolyResult::DivRem(q(&[0, 1]), q(&[])));
    }

    #[test]
    fn square_in_characteristic_two() {
        let f2 = Field::Prime(2);
        let a = Polynomial::from_i64s(f2, &[1, 1]);
        // (x+1)^2 = x^2 + 2x + 1, and 2 = 0 in F_2.
        assert_eq!(a.mul(&a), Polynomial::from_i64s(f2, &[1, 0, 1]));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&q(&[0, 0, 1]), &q(&[0, 0, 0, 1])).unwrap(), q(&[0, 0, 1]));
        assert_eq!(poly_gcd(&q(&[-1, 0, 1]), &q(&[-1, 1])).unwrap(), q(&[-1, 1]));
        let f2 = Field::Prime(2);
        let g = poly_gcd(
            &Polynomial::from_i64s(f2, &[1, 0, 1]),
            &Polynomial::from_i64s(f2, &[1, 1]),
        )
        .unwrap();
        assert_eq!(g, Polynomial::from_i64s(f2, &[1, 1]));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            q(&[1]).div_rem(&q(&[])),
            Err(AlgebraError::DivisionByZero)
        ));
        assert!(matches!(poly_gcd(&q(&[]), &q(&[])), Err(AlgebraError::GcdOfZeros)));
        let other = Polynomial::from_i64s(Field::Prime(3), &[1]);
        assert!(poly_arith(&q(&[1]), &other, PolyOp::Add).is_err());
    }

    #[test]
    fn trailing_zeros_trimmed() {
        assert_eq!(q(&[1, 0, 0]).degree(), Some(0));
        assert!(q(&[0, 0]).is_zero());
        assert_eq!(q(&[0, 0, 3]).as_monomial().map(|m| m.1), Some(2));
        assert!(q(&[1, 1]).as_monomial().is_none());
    }

    #[test]
    fn display() {
        assert_eq!(q(&[-1, 0, 2]).to_string(), "2x^2 + -1");
        assert_eq!(q(&[]).to_string(), "0");
    }
}
