//! Minimal polynomials and linear-complexity profiles of finite sequences over
//! GF(2), GF(p) and the rationals.
//!
//! ```
//! use minpoly::{engine, Field, InitVariant, Sequence};
//!
//! let s = Sequence::from_integers(Field::gf2(), &[0, 1, 1, 0]);
//! let c = engine::minimal_polynomial(&s, InitVariant::BZero);
//! assert_eq!(c.to_string(), "x^2 + x + 1");
//! ```

pub mod cli;
pub mod engine;
pub mod field;
pub mod lfsr;
pub mod oracle;
pub mod poly;

pub use engine::{InitVariant, Sequence};
pub use field::{Field, Scalar};
pub use poly::{Degree, Poly};
