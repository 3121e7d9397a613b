//! Exact arithmetic in ℚ and in towers of finite extensions of ℚ.

mod field;
mod interval;
pub mod linalg;
pub mod numeric;
mod roots;
mod tower;

pub use field::{fmt_rational, rat, ratio, CoeffDisplay, Field, Rational, Q};
pub use interval::Interval;
pub use roots::{basis_values, fit_value, roots_in_field, roots_in_field_prec, RootsInField, DEFAULT_PRECISION_BITS};
pub use tower::{
    apply_automorphism, fe_inv, fe_mul, fe_sign, minimal_polynomial, verify_galois_group,
    Automorphism, Boxes, FieldElement, GaloisGroup, GenBox, TowerField,
};

/// Shared handle to a tower; the coefficient field of tower polynomials.
pub type Tower = std::sync::Arc<TowerField>;
