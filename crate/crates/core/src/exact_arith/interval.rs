use num_traits::{Signed, Zero};

use super::field::{fmt_rational, Rational};

/// Closed interval with exact rational endpoints, `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        if lo <= hi {
            Interval { lo, hi }
        } else {
            Interval { lo: hi, hi: lo }
        }
    }

    pub fn point(q: Rational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn zero() -> Self {
        Interval::point(Rational::zero())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    /// Sign of every point in the interval, if it is constant and nonzero,
    /// or `Some(0)` for the degenerate interval `[0, 0]`.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        Interval { lo, hi }
    }

    pub fn scale(&self, q: &Rational) -> Interval {
        Interval::new(&self.lo * q, &self.hi * q)
    }

    pub fn pow(&self, e: u32) -> Interval {
        let mut r = Interval::point(Rational::from_integer(1.into()));
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn to_text(&self) -> String {
        format!("[{}, {}]", fmt_rational(&self.lo), fmt_rational(&self.hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::field::ratio;

    #[test]
    fn product_covers_sign_mix() {
        let a = Interval::new(ratio(-1, 1), ratio(2, 1));
        let b = Interval::new(ratio(-3, 1), ratio(1, 1));
        let p = a.mul(&b);
        assert_eq!(p.lo, ratio(-6, 1));
        assert_eq!(p.hi, ratio(3, 1));
        assert_eq!(p.sign(), None);
        assert_eq!(Interval::new(ratio(1, 3), ratio(1, 2)).sign(), Some(1));
    }
}
