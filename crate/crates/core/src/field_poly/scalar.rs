use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;

/// The ground field: the rationals or a prime field `F_p` with `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// Builds `F_p`, rejecting composite or out-of-range moduli.
    pub fn prime(p: u64) -> Result<Field, AlgebraError> {
        if p < 2 || p >= (1u64 << 31) || !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Prime {
                p,
                value: n.rem_euclid(p as i64) as u32,
            },
        }
    }

    /// Builds `num/den`; fails on a zero denominator or one divisible by `p`.
    pub fn from_fraction(self, num: i64, den: i64) -> Result<Scalar, AlgebraError> {
        let d = self.from_i64(den);
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        self.from_i64(num).checked_mul(&d.inv()?)
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(self) -> Option<u32> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p),
        }
    }

    /// Parses `q`, `Q`, or `fp:<p>`.
    pub fn parse(s: &str) -> Result<Field, AlgebraError> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        if let Some(rest) = t.strip_prefix("fp:").or_else(|| t.strip_prefix("FP:")) {
            let p: u64 = rest
                .parse()
                .map_err(|_| AlgebraError::Parse(format!("bad prime in field name `{s}`")))?;
            return Field::prime(p);
        }
        Err(AlgebraError::Parse(format!(
            "unknown field `{s}` (expected `q` or `fp:<p>`)"
        )))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

/// An exact field element carrying its own field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { p: u32, value: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), AlgebraError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { p, value: a }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                p: *p,
                value: ((*a as u64 + *b as u64) % *p as u64) as u32,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { p, value: a }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                p: *p,
                value: ((*a as u64 * *b as u64) % *p as u64) as u32,
            },
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { p, value } => Scalar::Prime {
                p: *p,
                value: if *value == 0 { 0 } else { p - value },
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Prime { p, value } => Scalar::Prime {
                p: *p,
                value: pow_mod(*value as u64, *p as u64 - 2, *p as u64) as u32,
            },
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    /// Serialized form: residues as integers, rationals as `"num/den"` (or `"num"`).
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Prime { value, .. } => serde_json::Value::from(*value),
            Scalar::Rational(r) => serde_json::Value::from(rational_string(r)),
        }
    }

    /// Parses a coefficient in `field` from a JSON number or a `"num/den"` string.
    pub fn from_json(field: Field, v: &serde_json::Value) -> Result<Scalar, AlgebraError> {
        match v {
            serde_json::Value::Number(n) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| AlgebraError::Parse(format!("non-integer coefficient {n}")))?;
                Ok(field.from_i64(i))
            }
            serde_json::Value::String(s) => Scalar::parse(field, s),
            other => Err(AlgebraError::Parse(format!("bad coefficient {other}"))),
        }
    }

    pub fn parse(field: Field, s: &str) -> Result<Scalar, AlgebraError> {
        let bad = || AlgebraError::Parse(format!("bad coefficient `{s}`"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        match field {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(num, den))),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let reduce = |x: &BigInt| -> i64 {
                    let r = ((x % &pb) + &pb) % &pb;
                    i64::try_from(r).expect("residue fits")
                };
                field.from_i64(reduce(&num)).checked_div(&field.from_i64(reduce(&den)))
            }
        }
    }
}

fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", rational_string(r)),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Scalar {
    /// True for a negative rational; residues are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }
}

// Operator forms are for values already known to share a field; a mismatch is a bug.
macro_rules! scalar_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar field mismatch")
            }
        }
        impl std::ops::$tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$checked(&rhs).expect("scalar field mismatch")
            }
        }
    };
}
scalar_op!(Add, add, checked_add);
scalar_op!(Sub, sub, checked_sub);
scalar_op!(Mul, mul, checked_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}
