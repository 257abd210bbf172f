//! Dense univariate polynomials over a [`Field`].
//!
//! Only the operations the minimal-polynomial construction needs are here:
//! degree, the shifted linear combination `a*P - b*x^k*Q`, reciprocal and monic
//! normalization, plus the text rendering shared with the command line.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::field::{Field, FieldError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("cannot parse polynomial `{text}`: {reason}")]
    Parse { text: String, reason: String },
}

/// Degree of a polynomial. The zero polynomial has degree `NegInf`, which
/// orders below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }

    pub fn is_neg_inf(self) -> bool {
        self == Degree::NegInf
    }
}

impl PartialEq<usize> for Degree {
    fn eq(&self, other: &usize) -> bool {
        *self == Degree::Finite(*other)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Coefficients are stored low-to-high and kept normalized: the last stored
/// coefficient is nonzero, and the zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero(field: Field) -> Poly {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Poly {
        Poly {
            field,
            coeffs: vec![field.one()],
        }
    }

    /// `x^k`
    pub fn x_pow(field: Field, k: usize) -> Poly {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = field.one();
        Poly { field, coeffs }
    }

    /// Builds a polynomial from low-to-high coefficients, stripping trailing
    /// zeros. Every coefficient must belong to `field`.
    pub fn from_coeffs(field: Field, coeffs: Vec<Scalar>) -> Result<Poly, PolyError> {
        if let Some(bad) = coeffs.iter().find(|c| c.field() != field) {
            return Err(FieldError::FieldMismatch(field, bad.field()).into());
        }
        Ok(Poly::from_vec(field, coeffs))
    }

    pub fn from_integers(field: Field, coeffs: &[i64]) -> Poly {
        Poly::from_vec(
            field,
            coeffs.iter().map(|&k| Scalar::from_integer(k, field)).collect(),
        )
    }

    fn from_vec(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Low-to-high coefficients; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `x^j`, zero past the degree.
    pub fn coeff(&self, j: usize) -> Scalar {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(Scalar::is_one)
    }

    /// `x^k * self`
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly {
            field: self.field,
            coeffs,
        }
    }

    pub fn scale(&self, alpha: &Scalar) -> Result<Poly, PolyError> {
        self.check_scalar(alpha)?;
        Ok(Poly::from_vec(
            self.field,
            self.coeffs.iter().map(|c| alpha * c).collect(),
        ))
    }

    fn check_scalar(&self, s: &Scalar) -> Result<(), FieldError> {
        if s.field() != self.field {
            return Err(FieldError::FieldMismatch(self.field, s.field()));
        }
        Ok(())
    }

    /// Returns `alpha*p - beta*x^k*q`, normalized.
    pub fn linear_combine(
        alpha: &Scalar,
        p: &Poly,
        beta: &Scalar,
        q: &Poly,
        k: usize,
    ) -> Result<Poly, PolyError> {
        let field = p.field;
        if q.field != field {
            return Err(FieldError::FieldMismatch(field, q.field).into());
        }
        p.check_scalar(alpha)?;
        p.check_scalar(beta)?;

        let len = p.coeffs.len().max(if q.is_zero() { 0 } else { q.coeffs.len() + k });
        let mut out = Vec::with_capacity(len);
        for j in 0..len {
            let mut v = match p.coeffs.get(j) {
                Some(c) => alpha * c,
                None => field.zero(),
            };
            if let Some(c) = j.checked_sub(k).and_then(|jj| q.coeffs.get(jj)) {
                v = &v - &(beta * c);
            }
            out.push(v);
        }
        Ok(Poly::from_vec(field, out))
    }

    /// `x^deg(P) * P(1/x)`: the coefficient vector reversed, then normalized.
    pub fn reciprocal(&self) -> Result<Poly, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(Poly::from_vec(
            self.field,
            self.coeffs.iter().rev().cloned().collect(),
        ))
    }

    pub fn make_monic(&self) -> Result<Poly, PolyError> {
        let lead = self.leading_coeff().ok_or(PolyError::ZeroPolynomial)?;
        if lead.is_one() {
            return Ok(self.clone());
        }
        self.scale(&lead.inverse()?)
    }

    /// Low-to-high coefficients as JSON values.
    pub fn coeffs_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(Scalar::to_json).collect())
    }

    /// Parses the text rendering produced by `Display`, e.g. `x^2 + x + 1`,
    /// `2*x^3 + 1`, `3/2*x - 1` or `0`. Terms may repeat and appear in any
    /// order; `*` between coefficient and `x` is optional.
    pub fn parse(text: &str, field: Field) -> Result<Poly, PolyError> {
        let err = |reason: &str| PolyError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }

        // Split into signed terms at top-level `+`/`-`.
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut negative = false;
        let mut current = String::new();
        for (pos, ch) in compact.chars().enumerate() {
            if ch == '+' || ch == '-' {
                if current.is_empty() {
                    if pos != 0 {
                        return Err(err("dangling sign"));
                    }
                } else {
                    terms.push((negative, std::mem::take(&mut current)));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(err("dangling sign"));
        }
        terms.push((negative, current));

        let mut coeffs: Vec<Scalar> = Vec::new();
        for (negative, term) in terms {
            let (coef_text, power) = match term.find('x') {
                Some(at) => {
                    let coef = term[..at].strip_suffix('*').unwrap_or(&term[..at]);
                    if term[..at].ends_with('*') && coef.is_empty() {
                        return Err(err("missing coefficient before `*`"));
                    }
                    let rest = &term[at + 1..];
                    let power = if rest.is_empty() {
                        1
                    } else {
                        let digits = rest
                            .strip_prefix('^')
                            .ok_or_else(|| err("expected `^` after `x`"))?;
                        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                            return Err(err("bad exponent"));
                        }
                        digits.parse::<usize>().map_err(|_| err("bad exponent"))?
                    };
                    (coef, power)
                }
                None => (term.as_str(), 0),
            };
            let mut c = if coef_text.is_empty() {
                field.one()
            } else {
                parse_scalar(coef_text, field).map_err(|reason| err(&reason))?
            };
            if negative {
                c = -c;
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, field.zero());
            }
            coeffs[power] = &coeffs[power] + &c;
        }
        Ok(Poly::from_vec(field, coeffs))
    }
}

/// Parses an unsigned or signed integer or fraction `a/b` into `field`.
pub(crate) fn parse_scalar(text: &str, field: Field) -> Result<Scalar, String> {
    let parse_int = |s: &str| -> Result<BigInt, String> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("`{text}` is not a number"));
        }
        s.parse::<BigInt>()
            .map_err(|_| format!("`{text}` is not a number"))
    };
    match text.split_once('/') {
        None => Ok(Scalar::from_bigint(&parse_int(text)?, field)),
        Some((n, d)) => {
            if field != Field::Rational {
                return Err(format!("fraction `{text}` outside the rationals"));
            }
            let (n, d) = (parse_int(n)?, parse_int(d)?);
            Scalar::from_fraction(&n, &d, field).map_err(|e| e.to_string())
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let magnitude = if negative { -c } else { c.clone() };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = magnitude.is_one();
            match power {
                0 => write!(f, "{magnitude}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{magnitude}*x")?,
                _ if unit => write!(f, "x^{power}")?,
                _ => write!(f, "{magnitude}*x^{power}")?,
            }
        }
        Ok(())
    }
}

/// Orders by coefficient tuple, low-to-high, comparing scalars by canonical
/// representation. Polynomials over different fields compare by field first.
impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .cmp(&other.field)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}
