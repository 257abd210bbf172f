//! Brute-force ground truth for small instances over finite fields.
//!
//! Every monic polynomial of degree 0, 1, 2, ... is tested directly against the
//! recurrence until one degree admits a solution. Nothing here calls into the
//! engine.

use thiserror::Error;

use crate::engine::Sequence;
use crate::field::{Field, Scalar};
use crate::poly::{Degree, Poly};

/// Default cap on the number of candidate polynomials examined.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("the rationals cannot be enumerated")]
    InfiniteField,
}

/// All monic minimal polynomials of a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub min_degree: Degree,
    /// Sorted by coefficient tuple, low-to-high.
    pub polys: Vec<Poly>,
    /// Candidates examined across all degrees tried.
    pub candidates: u64,
}

impl OracleResult {
    pub fn contains(&self, p: &Poly) -> bool {
        self.polys.binary_search(p).is_ok()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub budget: u64,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Oracle {
    pub fn with_budget(budget: u64) -> Oracle {
        Oracle { budget }
    }

    pub fn brute_force_min_degree(&self, s: &Sequence) -> Result<Degree, OracleError> {
        self.search(s, false).map(|r| r.min_degree)
    }

    pub fn enumerate_minimal_polys(&self, s: &Sequence) -> Result<OracleResult, OracleError> {
        self.search(s, true)
    }

    fn search(&self, s: &Sequence, collect_all: bool) -> Result<OracleResult, OracleError> {
        let field = s.field();
        let q = field.order().ok_or(OracleError::InfiniteField)?;
        let elements: Vec<Scalar> = field.elements().collect();
        let mut spent: u64 = 0;

        // x^n is vacuously a c.p., so the loop always returns by d = n.
        for d in 0..=s.len() {
            let count = (q as u128).pow(d as u32);
            let needed = spent as u128 + count;
            if needed > self.budget as u128 {
                return Err(OracleError::BudgetExceeded {
                    needed: needed.min(u64::MAX as u128) as u64,
                    budget: self.budget,
                });
            }
            spent = needed as u64;

            let mut found = Vec::new();
            let mut coeffs: Vec<Scalar> = vec![field.zero(); d];
            coeffs.push(field.one());
            // mixed-radix counter over C_0..C_{d-1}, C_0 most significant
            for index in 0..count as u64 {
                let mut rest = index;
                for k in (0..d).rev() {
                    coeffs[k] = elements[(rest % q) as usize].clone();
                    rest /= q;
                }
                if satisfies_recurrence(&coeffs, s) {
                    found.push(poly_from(field, &coeffs));
                    if !collect_all {
                        break;
                    }
                }
            }
            if !found.is_empty() {
                found.sort();
                return Ok(OracleResult {
                    min_degree: Degree::Finite(d),
                    polys: found,
                    candidates: spent,
                });
            }
        }
        unreachable!("x^n satisfies the recurrence vacuously")
    }
}

/// `sum_k coeffs[k] * s_{j-d+k} = 0` for every `d < j <= n`, with
/// `d = coeffs.len() - 1`.
fn satisfies_recurrence(coeffs: &[Scalar], s: &Sequence) -> bool {
    let d = coeffs.len() - 1;
    let terms = s.terms();
    (d..terms.len()).all(|last| {
        let window = &terms[last - d..=last];
        let mut acc = s.field().zero();
        for (c, t) in coeffs.iter().zip(window) {
            acc = &acc + &(c * t);
        }
        acc.is_zero()
    })
}

fn poly_from(field: Field, coeffs: &[Scalar]) -> Poly {
    Poly::from_coeffs(field, coeffs.to_vec()).expect("coefficients come from the field")
}

pub fn brute_force_min_degree(s: &Sequence) -> Result<Degree, OracleError> {
    Oracle::default().brute_force_min_degree(s)
}

pub fn enumerate_minimal_polys(s: &Sequence) -> Result<OracleResult, OracleError> {
    Oracle::default().enumerate_minimal_polys(s)
}
