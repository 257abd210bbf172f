//! Generating sequences from a recurrence, and moving between the feedback
//! (connection) polynomial and the characteristic polynomial.

use thiserror::Error;

use crate::engine::Sequence;
use crate::field::{FieldError, Scalar};
use crate::poly::{Poly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LfsrError {
    #[error("characteristic polynomial `{0}` is not monic")]
    NotMonic(String),
    #[error("seed has {got} terms, the recurrence needs {want}")]
    SeedLength { got: usize, want: usize },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("length {length} is below the feedback degree {degree}")]
    DegreeUnderflow { length: usize, degree: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl From<PolyError> for LfsrError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::ZeroPolynomial => LfsrError::ZeroPolynomial,
            PolyError::Field(f) => LfsrError::Field(f),
            PolyError::Parse { .. } => unreachable!("no parsing here"),
        }
    }
}

/// A monic characteristic polynomial `C` of degree `d` with `d` initial terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recurrence {
    poly: Poly,
    seed: Vec<Scalar>,
}

impl Recurrence {
    pub fn new(poly: Poly, seed: Vec<Scalar>) -> Result<Recurrence, LfsrError> {
        if poly.is_zero() {
            return Err(LfsrError::ZeroPolynomial);
        }
        if !poly.is_monic() {
            return Err(LfsrError::NotMonic(poly.to_string()));
        }
        let d = poly.coeffs().len() - 1;
        if seed.len() != d {
            return Err(LfsrError::SeedLength {
                got: seed.len(),
                want: d,
            });
        }
        if let Some(bad) = seed.iter().find(|t| t.field() != poly.field()) {
            return Err(FieldError::FieldMismatch(poly.field(), bad.field()).into());
        }
        Ok(Recurrence { poly, seed })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn seed(&self) -> &[Scalar] {
        &self.seed
    }

    /// The seed followed by `count` further terms, each given by
    /// `s_j = -(C_0*s_{j-d} + ... + C_{d-1}*s_{j-1})`.
    pub fn extend(&self, count: usize) -> Sequence {
        let field = self.poly.field();
        let d = self.seed.len();
        let taps = &self.poly.coeffs()[..d];
        let mut terms = self.seed.clone();
        terms.reserve(count);
        for _ in 0..count {
            let window = &terms[terms.len() - d..];
            let mut acc = field.zero();
            for (c, t) in taps.iter().zip(window) {
                acc = &acc + &(c * t);
            }
            terms.push(-acc);
        }
        Sequence::new(field, terms).expect("seed and taps share the field")
    }
}

/// `x^(L - deg F) * F*`, the characteristic polynomial of degree `L` belonging
/// to feedback polynomial `F`. No normalization is applied.
pub fn feedback_to_characteristic(feedback: &Poly, length: usize) -> Result<Poly, LfsrError> {
    let degree = feedback
        .degree()
        .finite()
        .ok_or(LfsrError::ZeroPolynomial)?;
    if length < degree {
        return Err(LfsrError::DegreeUnderflow { length, degree });
    }
    Ok(feedback.reciprocal()?.shift(length - degree))
}
