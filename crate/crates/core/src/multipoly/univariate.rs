use crate::exact_arith::{CoeffDisplay, Field};

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `t^i`,
/// with no trailing zeros.
#[derive(Clone, Debug)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for UniPoly<F> {
    fn eq(&self, o: &Self) -> bool {
        self.coeffs == o.coeffs
    }
}

impl<F: Field> Eq for UniPoly<F> {}

impl<F: Field> UniPoly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        UniPoly { field, coeffs: vec![] }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        UniPoly::new(field, vec![c])
    }

    /// `t`
    pub fn x(field: F) -> Self {
        let c = vec![field.zero(), field.one()];
        UniPoly::new(field, c)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = f.zero();
        let c = (0..n)
            .map(|i| f.add(self.coeffs.get(i).unwrap_or(&z), o.coeffs.get(i).unwrap_or(&z)))
            .collect();
        UniPoly::new(f.clone(), c)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        UniPoly { field: f.clone(), coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(f.clone());
        }
        let mut c = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                let t = f.mul(a, b);
                c[i + j] = f.add(&c[i + j], &t);
            }
        }
        UniPoly::new(f.clone(), c)
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = &self.field;
        UniPoly::new(f.clone(), self.coeffs.iter().map(|c| f.mul(c, s)).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = UniPoly::constant(self.field.clone(), self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.scale(c, &crate::exact_arith::rat(i as i64)))
            .collect();
        UniPoly::new(f.clone(), c)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = f.inv(d.leading().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(f.clone()), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(&r[k + dd], &inv);
            if !f.is_zero(&c) {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let t = f.mul(&c, dc);
                    r[k + j] = f.sub(&r[k + j], &t);
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::new(f.clone(), q), UniPoly::new(f.clone(), r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = self.field.inv(l).unwrap();
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free part (monic).
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    pub fn to_text(&self, var: &str) -> String {
        let f = &self.field;
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let CoeffDisplay { mut negative, mut magnitude, mut needs_parens } = f.coeff_display(c);
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 && needs_parens {
                // a bare constant needs no parentheses
                needs_parens = false;
                if let Some(rest) = magnitude.strip_prefix('-') {
                    magnitude = rest.to_string();
                    negative = !negative;
                }
            }
            let body = if mono.is_empty() {
                if needs_parens {
                    format!("({magnitude})")
                } else {
                    magnitude
                }
            } else if magnitude == "1" {
                mono
            } else if needs_parens {
                format!("({magnitude})*{mono}")
            } else {
                format!("{magnitude}*{mono}")
            };
            if first {
                if negative {
                    s.push('-');
                }
                first = false;
            } else {
                s.push_str(if negative { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{rat, Q};

    #[test]
    fn divrem_and_gcd() {
        let a = UniPoly::new(Q, vec![rat(-1), rat(0), rat(1)]);
        let b = UniPoly::new(Q, vec![rat(-1), rat(1)]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, UniPoly::new(Q, vec![rat(1), rat(1)]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&b), b);
        assert_eq!(a.to_text("t"), "t^2 - 1");
    }

    #[test]
    fn squarefree_cube_root_square() {
        let p = UniPoly::new(Q, vec![rat(-2), rat(0), rat(0), rat(1)]);
        assert_eq!(p.mul(&p).squarefree(), p);
    }
}
