//! Iterative minimal-polynomial construction.
//!
//! The engine keeps only `(C, B, b, e)`: the current candidate `C`, the
//! candidate `B` from the last step whose degree was strictly smaller, that
//! step's discrepancy `b`, and the exponent `e`, which replaces explicit degree
//! bookkeeping via `deg C = (e + i + 1) / 2`. [`naive_construct`] is the
//! slower reference construction that keeps the whole history and looks the
//! earlier candidate up by index.

use std::fmt;

use thiserror::Error;

use crate::field::{Field, FieldError, Scalar};
use crate::poly::{Degree, Poly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("the sequence is empty")]
    EmptySequence,
    #[error("step {i} is past the end of a sequence of length {n}")]
    IndexOutOfRange { i: usize, n: usize },
    #[error("parity violated at step {i}: e = {e}")]
    ParityViolation { i: usize, e: i64 },
    #[error("engine invariant violated at step {i}: {what}")]
    Invariant { i: usize, what: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A finite sequence `s_1..s_n` over one field. Term `s_j` is stored at index
/// `j - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequence {
    field: Field,
    terms: Vec<Scalar>,
}

impl Sequence {
    pub fn new(field: Field, terms: Vec<Scalar>) -> Result<Sequence, EngineError> {
        if let Some(bad) = terms.iter().find(|t| t.field() != field) {
            return Err(FieldError::FieldMismatch(field, bad.field()).into());
        }
        Ok(Sequence { field, terms })
    }

    pub fn from_integers(field: Field, terms: &[i64]) -> Sequence {
        Sequence {
            field,
            terms: terms.iter().map(|&k| Scalar::from_integer(k, field)).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Scalar] {
        &self.terms
    }

    /// `s_j`, 1-based.
    pub fn term(&self, j: usize) -> &Scalar {
        &self.terms[j - 1]
    }

    /// `s_1..s_i`
    pub fn prefix(&self, i: usize) -> Sequence {
        Sequence {
            field: self.field,
            terms: self.terms[..i].to_vec(),
        }
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Initial value of `B`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum InitVariant {
    /// `B = 0`.
    #[default]
    BZero,
    /// `B = 1`, which changes the candidates produced across a prefix of
    /// leading zeros (and the first candidate in general).
    BOne,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Options {
    pub variant: InitVariant,
    /// Make `C` monic after every step. Degrees are unaffected.
    pub monic_each_step: bool,
}

impl Options {
    /// Defaults used by the convenience drivers. Over the rationals `C` is
    /// made monic after every step: unnormalized coefficients grow
    /// exponentially in the number of steps.
    pub fn for_field(field: Field, variant: InitVariant) -> Options {
        Options {
            variant,
            monic_each_step: field == Field::Rational,
        }
    }
}

/// Literal form: no per-step normalization.
impl From<InitVariant> for Options {
    fn from(variant: InitVariant) -> Options {
        Options {
            variant,
            monic_each_step: false,
        }
    }
}

/// State between iterations. After `i` steps, `poly` is a minimal polynomial
/// of `s_1..s_i` and `exponent + i` is odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineState {
    pub i: usize,
    /// `C`
    pub poly: Poly,
    /// `B`
    pub prev_poly: Poly,
    /// `b`, never zero.
    pub prev_disc: Scalar,
    /// `e`
    pub exponent: i64,
    /// Discrepancy consumed by the most recent step; `None` before step 1.
    pub last_disc: Option<Scalar>,
}

impl EngineState {
    pub fn initial(field: Field, variant: InitVariant) -> EngineState {
        EngineState {
            i: 0,
            poly: Poly::one(field),
            prev_poly: match variant {
                InitVariant::BZero => Poly::zero(field),
                InitVariant::BOne => Poly::one(field),
            },
            prev_disc: field.one(),
            exponent: -1,
            last_disc: None,
        }
    }

    /// Salagean's `v`, which tracks `-e`.
    pub fn v(&self) -> i64 {
        -self.exponent
    }

    /// `(e + i + 1) / 2`, the linear complexity of `s_1..s_i`.
    pub fn linear_complexity(&self) -> usize {
        ((self.exponent + self.i as i64 + 1) / 2) as usize
    }

    fn check(&self) -> Result<(), EngineError> {
        let i = self.i;
        if (self.exponent + i as i64).rem_euclid(2) != 1 {
            return Err(EngineError::ParityViolation {
                i,
                e: self.exponent,
            });
        }
        if self.prev_disc.is_zero() {
            return Err(EngineError::Invariant {
                i,
                what: "b is zero".into(),
            });
        }
        let expected = self.exponent + i as i64 + 1;
        if expected < 0 || self.poly.degree() != Degree::Finite((expected / 2) as usize) {
            return Err(EngineError::Invariant {
                i,
                what: format!(
                    "deg C = {} but (e + i + 1)/2 = {}",
                    self.poly.degree(),
                    expected / 2
                ),
            });
        }
        Ok(())
    }
}

/// Discrepancy of `C` against `s_1..s_i` at the head of iteration
/// `i = state.i + 1`, where `e + i` is even and `(e + i)/2 = deg C`:
/// `c = sum_{j=0}^{(e+i)/2} C_j * s_{j + (i-e)/2}`.
pub fn discrepancy(state: &EngineState, s: &Sequence) -> Result<Scalar, EngineError> {
    let i = state.i + 1;
    if i > s.len() {
        return Err(EngineError::IndexOutOfRange { i, n: s.len() });
    }
    let e = state.exponent;
    let sum = e + i as i64;
    if sum.rem_euclid(2) != 0 {
        return Err(EngineError::ParityViolation { i, e });
    }
    if sum < 0 {
        return Err(EngineError::Invariant {
            i,
            what: format!("negative degree bound (e + i)/2 with e = {e}"),
        });
    }
    let top = (sum / 2) as usize;
    let offset = ((i as i64 - e) / 2) as usize;
    let mut c = s.field().zero();
    for j in 0..=top {
        c = &c + &(&state.poly.coeff(j) * s.term(j + offset));
    }
    Ok(c)
}

/// One iteration. On a nonzero discrepancy `c`:
/// `C <- b*C - c*x^e*B` when `e >= 0`, otherwise
/// `e <- -e; C <- b*x^e*C - c*B; B <- old C; b <- c`. Then `e <- e - 1`.
pub fn step(state: &EngineState, s: &Sequence, monic: bool) -> Result<EngineState, EngineError> {
    let c = discrepancy(state, s)?;
    let mut next = state.clone();
    next.i += 1;
    if !c.is_zero() {
        // with per-step normalization only the ratio c/b matters
        let (alpha, beta) = if monic {
            (state.poly.field().one(), c.checked_div(&state.prev_disc)?)
        } else {
            (state.prev_disc.clone(), c.clone())
        };
        if state.exponent >= 0 {
            next.poly = Poly::linear_combine(
                &alpha,
                &state.poly,
                &beta,
                &state.prev_poly,
                state.exponent as usize,
            )?;
        } else {
            let e = -state.exponent;
            next.exponent = e;
            next.poly = Poly::linear_combine(
                &alpha,
                &state.poly.shift(e as usize),
                &beta,
                &state.prev_poly,
                0,
            )?;
            next.prev_poly = state.poly.clone();
            next.prev_disc = c.clone();
        }
        if monic {
            next.poly = next.poly.make_monic()?;
        }
    }
    next.exponent -= 1;
    next.last_disc = Some(c);
    Ok(next)
}

/// A complete run: `states[i]` is the state after `i` steps.
#[derive(Debug, Clone)]
pub struct Run {
    pub states: Vec<EngineState>,
}

/// Runs every step from the variant's initial state, checking parity, `b != 0`
/// and the degree formula after each one.
pub fn run(s: &Sequence, options: impl Into<Options>) -> Result<Run, EngineError> {
    let options = options.into();
    let mut state = EngineState::initial(s.field(), options.variant);
    let mut states = Vec::with_capacity(s.len() + 1);
    state.check()?;
    for _ in 0..s.len() {
        let next = step(&state, s, options.monic_each_step)?;
        next.check()?;
        states.push(std::mem::replace(&mut state, next));
    }
    states.push(state);
    Ok(Run { states })
}

impl Run {
    pub fn final_state(&self) -> &EngineState {
        self.states.last().expect("a run holds at least the initial state")
    }

    /// `C / b`, the value returned by the algorithm before any further
    /// normalization. Not monic in general (e.g. `s = (2)` over GF(3) gives
    /// `2x`).
    pub fn quotient(&self) -> Poly {
        let last = self.final_state();
        let inv = last.prev_disc.inverse().expect("b is never zero");
        last.poly.scale(&inv).expect("b and C share a field")
    }

    /// `make_monic(C / b)`.
    pub fn minimal_polynomial(&self) -> Poly {
        self.quotient()
            .make_monic()
            .expect("a minimal polynomial is never zero")
    }

    pub fn linear_complexity(&self) -> usize {
        self.final_state().linear_complexity()
    }

    pub fn profile(&self) -> Vec<ProfileEntry> {
        self.states[1..]
            .iter()
            .map(|st| ProfileEntry {
                i: st.i,
                linear_complexity: st.linear_complexity(),
                discrepancy: st.last_disc.clone().expect("set by every step"),
            })
            .collect()
    }

    pub fn trace(&self) -> Vec<TraceRecord> {
        self.states
            .windows(2)
            .map(|w| {
                let (before, after) = (&w[0], &w[1]);
                TraceRecord {
                    i: after.i,
                    discrepancy: after.last_disc.clone().expect("set by every step"),
                    e_before: before.exponent,
                    e_after: after.exponent,
                    degree: after.linear_complexity(),
                    poly: after.poly.clone(),
                    prev_poly: after.prev_poly.clone(),
                    prev_disc: after.prev_disc.clone(),
                }
            })
            .collect()
    }
}

/// Linear complexity of `s_1..s_i` and the discrepancy consumed at step `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileEntry {
    pub i: usize,
    pub linear_complexity: usize,
    pub discrepancy: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRecord {
    pub i: usize,
    pub discrepancy: Scalar,
    pub e_before: i64,
    pub e_after: i64,
    pub degree: usize,
    pub poly: Poly,
    pub prev_poly: Poly,
    pub prev_disc: Scalar,
}

impl TraceRecord {
    /// Salagean's `v` after this step.
    pub fn v(&self) -> i64 {
        -self.e_after
    }
}

impl fmt::Display for TraceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "i={} c={} e={} L={} C={}",
            self.i, self.discrepancy, self.e_after, self.degree, self.poly
        )
    }
}

/// Monic minimal polynomial of `s`. The empty sequence gives `1`.
pub fn minimal_polynomial(s: &Sequence, variant: InitVariant) -> Poly {
    run(s, Options::for_field(s.field(), variant))
        .expect("engine invariants hold for any well-formed sequence")
        .minimal_polynomial()
}

pub fn complexity_profile(s: &Sequence) -> Vec<ProfileEntry> {
    run(s, Options::for_field(s.field(), InitVariant::BZero))
        .expect("engine invariants hold for any well-formed sequence")
        .profile()
}

/// Whether `C_0*s_{j-d} + ... + C_d*s_j = 0` for every `d+1 <= j <= n`, with
/// `d = deg C`. Vacuously true once `d >= n`; the zero polynomial is rejected.
pub fn is_characteristic(c: &Poly, s: &Sequence) -> Result<bool, EngineError> {
    let d = c.degree().finite().ok_or(PolyError::ZeroPolynomial)?;
    if c.field() != s.field() {
        return Err(FieldError::FieldMismatch(c.field(), s.field()).into());
    }
    for j in d + 1..=s.len() {
        let mut acc = s.field().zero();
        for (k, ck) in c.coeffs().iter().enumerate() {
            acc = &acc + &(ck * s.term(j - d + k));
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reference construction with explicit history: returns `C^(1)..C^(n)`.
///
/// `C^(1)` is `1` or `x` depending on `s_1`. A zero discrepancy keeps the
/// candidate. Otherwise, while every candidate so far has the degree of
/// `C^(1)`, the next one is `x^i` (leading zeros) or `s_1*x^(i-2)*C - c`; after
/// that, `a` indexes the latest candidate of strictly smaller degree and the
/// update combines `C^(i-1)` with `C^(a)` shifted by the exponent `2d - i`.
pub fn naive_construct(s: &Sequence) -> Result<Vec<Poly>, EngineError> {
    let n = s.len();
    if n == 0 {
        return Err(EngineError::EmptySequence);
    }
    let field = s.field();
    let s1 = s.term(1).clone();
    let deg = |p: &Poly| p.degree().finite().expect("candidates are nonzero");

    // polys[j - 1] = C^(j); discs[j - 1] = c_j, the discrepancy of C^(j)
    // against s_1..s_{j+1}.
    let mut polys = vec![if s1.is_zero() {
        Poly::one(field)
    } else {
        Poly::x_pow(field, 1)
    }];
    let mut discs: Vec<Scalar> = Vec::with_capacity(n);
    let d1 = deg(&polys[0]);

    for i in 2..=n {
        let prev = &polys[i - 2];
        let d = deg(prev);
        let mut c = field.zero();
        for j in 0..=d {
            c = &c + &(&prev.coeff(j) * s.term(j + i - d));
        }
        discs.push(c.clone());

        let next = if c.is_zero() {
            prev.clone()
        } else if d == d1 {
            if s1.is_zero() {
                Poly::x_pow(field, i)
            } else {
                Poly::linear_combine(&s1, &prev.shift(i - 2), &c, &Poly::one(field), 0)?
            }
        } else {
            let a = (1..=i - 2)
                .rev()
                .find(|&j| deg(&polys[j - 1]) < d)
                .ok_or_else(|| EngineError::Invariant {
                    i,
                    what: "no earlier candidate of smaller degree".into(),
                })?;
            let c_a = &discs[a - 1];
            let earlier = &polys[a - 1];
            let e = 2 * d as i64 - i as i64;
            if e >= 0 {
                Poly::linear_combine(c_a, prev, &c, earlier, e as usize)?
            } else {
                Poly::linear_combine(c_a, &prev.shift((-e) as usize), &c, earlier, 0)?
            }
        };
        polys.push(next);
    }
    Ok(polys)
}

/// Feedback form: the reciprocal `F` of the monic minimal polynomial `C`,
/// which has constant term 1, together with the linear complexity `L`. The
/// minimal polynomial is recovered as `x^(L - deg F) * F*`.
pub fn massey_form(s: &Sequence) -> Result<(Poly, usize), EngineError> {
    if s.is_empty() {
        return Err(EngineError::EmptySequence);
    }
    let run = run(s, Options::for_field(s.field(), InitVariant::BZero))?;
    let c = run.minimal_polynomial();
    Ok((c.reciprocal()?, run.linear_complexity()))
}
