//! Exact computations with polynomials over ℚ and over number-field towers:
//! Galois completions, Gröbner bases, real-side verdicts, local data at
//! algebraic points and generic linear projections.

pub mod error;
pub mod exact_arith;
pub mod galois_completion;
pub mod groebner;
pub mod local_geometry;
pub mod multipoly;
pub mod projection;
pub mod real_side;
pub mod syntax;

pub use error::{Error, Result};
pub use exact_arith::{
    Automorphism, Field, FieldElement, GaloisGroup, GenBox, Interval, Rational, TowerField, Q,
};
pub use multipoly::{MultiPoly, QPoly, TPoly, UniPoly};
pub use real_side::{Outcome, Verdict};
