//! Exact scalar arithmetic over GF(2), GF(p) and the rationals.
//!
//! The coefficient field is chosen at run time, so a [`Scalar`] carries enough
//! information to know which field it lives in. Residues are stored as `u32`
//! and multiplied in `u64`; rationals use arbitrary-precision fractions.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest admissible prime modulus is below this bound.
pub const MODULUS_BOUND: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("modulus {0} is not a prime in 2..2^31")]
    InvalidModulus(u64),
    #[error("unknown field `{0}` (expected `gf2`, `gf:<p>` or `q`)")]
    UnknownField(String),
}

/// Descriptor of a coefficient field.
///
/// GF(2) is represented as `Prime(2)`, so it is the same field as `gf:2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Prime(u32),
    Rational,
}

impl Field {
    pub fn gf2() -> Field {
        Field::Prime(2)
    }

    /// GF(p), checking that `p` is a prime below 2^31.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if !(2..MODULUS_BOUND).contains(&p) || !is_prime(p) {
            return Err(FieldError::InvalidModulus(p));
        }
        Ok(Field::Prime(p as u32))
    }

    /// Number of elements, or `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match *self {
            Field::Prime(p) => Some(p as u64),
            Field::Rational => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(*self)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(*self)
    }

    /// All elements in canonical order. Panics on the rationals.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        let p = match *self {
            Field::Prime(p) => p,
            Field::Rational => panic!("the rationals cannot be enumerated"),
        };
        (0..p).map(move |value| Scalar::Residue { value, modulus: p })
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(2) => write!(f, "gf2"),
            Field::Prime(p) => write!(f, "gf:{p}"),
            Field::Rational => write!(f, "q"),
        }
    }
}

impl FromStr for Field {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "gf2" => Ok(Field::gf2()),
            "q" => Ok(Field::Rational),
            _ => {
                let digits = s
                    .strip_prefix("gf:")
                    .ok_or_else(|| FieldError::UnknownField(s.to_string()))?;
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(FieldError::UnknownField(s.to_string()));
                }
                let p = digits
                    .parse::<u64>()
                    .map_err(|_| FieldError::InvalidModulus(u64::MAX))?;
                Field::prime(p)
            }
        }
    }
}

/// Trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of a [`Field`] in canonical form.
///
/// Residues are always in `0..modulus`; rationals are reduced with a positive
/// denominator. Equality is therefore representational.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Residue { value: u32, modulus: u32 },
    Rational(BigRational),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        match field {
            Field::Prime(p) => Scalar::Residue { value: 0, modulus: p },
            Field::Rational => Scalar::Rational(BigRational::zero()),
        }
    }

    pub fn one(field: Field) -> Scalar {
        match field {
            Field::Prime(p) => Scalar::Residue { value: 1 % p, modulus: p },
            Field::Rational => Scalar::Rational(BigRational::one()),
        }
    }

    /// Canonical image of `k`: `k mod p`, or `k/1`.
    pub fn from_integer(k: i64, field: Field) -> Scalar {
        match field {
            Field::Prime(p) => Scalar::Residue {
                value: k.rem_euclid(p as i64) as u32,
                modulus: p,
            },
            Field::Rational => Scalar::Rational(BigRational::from_integer(k.into())),
        }
    }

    pub fn from_bigint(k: &BigInt, field: Field) -> Scalar {
        match field {
            Field::Prime(p) => {
                let r = k.mod_floor(&BigInt::from(p));
                Scalar::Residue {
                    value: r.to_u32().expect("residue below modulus"),
                    modulus: p,
                }
            }
            Field::Rational => Scalar::Rational(BigRational::from_integer(k.clone())),
        }
    }

    /// Builds the fraction `numer/denom`. Fails when `denom` is zero; over GF(p)
    /// the fraction is interpreted as `numer * denom^-1`.
    pub fn from_fraction(numer: &BigInt, denom: &BigInt, field: Field) -> Result<Scalar, FieldError> {
        if denom.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match field {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(
                numer.clone(),
                denom.clone(),
            ))),
            Field::Prime(_) => {
                Scalar::from_bigint(numer, field).checked_div(&Scalar::from_bigint(denom, field))
            }
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
            Scalar::Rational(_) => Field::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Residue { value, .. } => *value == 0,
            Scalar::Rational(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Residue { value, .. } => *value == 1,
            Scalar::Rational(q) => q.is_one(),
        }
    }

    /// Re-establishes canonical form. The identity on every value produced by
    /// this module.
    pub fn canonicalize(self) -> Scalar {
        match self {
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: value % modulus,
                modulus,
            },
            Scalar::Rational(q) => {
                let (n, d) = q.into();
                Scalar::Rational(BigRational::new(n, d))
            }
        }
    }

    /// Multiplicative inverse: extended Euclid for residues, fraction flip for
    /// rationals.
    pub fn inverse(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match self {
            Scalar::Residue { value, modulus } => {
                let gcd = (*value as i64).extended_gcd(&(*modulus as i64));
                debug_assert_eq!(gcd.gcd, 1);
                Ok(Scalar::Residue {
                    value: gcd.x.rem_euclid(*modulus as i64) as u32,
                    modulus: *modulus,
                })
            }
            Scalar::Rational(q) => Ok(Scalar::Rational(q.recip())),
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), FieldError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: ((*a as u64 + *b as u64) % *modulus as u64) as u32,
                    modulus: *modulus,
                }
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: ((*a as u64 * *b as u64) % *modulus as u64) as u32,
                    modulus: *modulus,
                }
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        self.checked_mul(&other.inverse()?)
    }

    /// Renders the scalar as a JSON value: residues as numbers, rationals as
    /// strings such as `"3/2"` or `"-4"`.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Residue { value, .. } => serde_json::Value::from(*value),
            Scalar::Rational(q) => serde_json::Value::from(q.to_string()),
        }
    }

    /// True when the canonical rendering starts with a minus sign.
    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Scalar::Residue { .. } => false,
            Scalar::Rational(q) => q.is_negative(),
        }
    }
}

/// Applies `op` to `a` and `b`, reporting mismatched fields and division by
/// zero.
pub fn arithmetic(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, FieldError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Residue { value, .. } => write!(f, "{value}"),
            Scalar::Rational(q) => write!(f, "{q}"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
            Scalar::Rational(q) => Scalar::Rational(-q),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

// The operator forms panic on mismatched fields. Callers inside the crate only
// combine values that were validated to share one field.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);
