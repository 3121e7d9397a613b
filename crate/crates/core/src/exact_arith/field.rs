use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text for a rational: `3`, `-3`, `3/2`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// How a coefficient is displayed in front of a monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffDisplay {
    pub negative: bool,
    /// Magnitude text; `"1"` means the coefficient is a unit and may be elided.
    pub magnitude: String,
    pub needs_parens: bool,
}

/// A coefficient field: ℚ itself or a tower over ℚ.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_rational(&self, q: &Rational) -> Self::Elem;
    fn to_rational(&self, a: &Self::Elem) -> Option<Rational>;
    fn scale(&self, a: &Self::Elem, q: &Rational) -> Self::Elem {
        self.mul(a, &self.from_rational(q))
    }
    fn same_field(&self, other: &Self) -> bool;
    /// ℚ-dimension.
    fn degree(&self) -> usize;
    fn fmt_elem(&self, a: &Self::Elem) -> String;
    fn coeff_display(&self, a: &Self::Elem) -> CoeffDisplay;
    /// A positive integer whose product with `a` has integral ℚ-coordinates.
    fn denominator_lcm(&self, a: &Self::Elem) -> BigInt;
}

/// The rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Q;

impl Field for Q {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Rational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }
    fn to_rational(&self, a: &Rational) -> Option<Rational> {
        Some(a.clone())
    }
    fn scale(&self, a: &Rational, q: &Rational) -> Rational {
        a * q
    }
    fn same_field(&self, _other: &Self) -> bool {
        true
    }
    fn degree(&self) -> usize {
        1
    }
    fn fmt_elem(&self, a: &Rational) -> String {
        fmt_rational(a)
    }
    fn coeff_display(&self, a: &Rational) -> CoeffDisplay {
        CoeffDisplay {
            negative: a.is_negative(),
            magnitude: fmt_rational(&a.abs()),
            needs_parens: false,
        }
    }
    fn denominator_lcm(&self, a: &Rational) -> BigInt {
        a.denom().clone()
    }
}
