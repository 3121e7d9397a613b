//! Sparse multivariate polynomials over ℚ or a tower, with dense univariate
//! helpers, GCDs, square-free parts and factorization.

pub mod factor;
pub mod gcd;
pub mod kronecker;
pub mod sturm;
mod univariate;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{rat, Automorphism, Field, FieldElement, Rational, Tower, Q};

pub use gcd::{mv_gcd, normalize, squarefree_part};
pub use univariate::UniPoly;

/// Exponent vector; the derived order is lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming divisibility.
    pub fn div_into(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

pub type Vars = Arc<Vec<String>>;

pub fn vars(names: &[&str]) -> Vars {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

/// `x1, …, xn`
pub fn xvars(n: usize) -> Vars {
    Arc::new((1..=n).map(|i| format!("x{i}")).collect())
}

/// Sparse polynomial: exponent vector to nonzero coefficient.
#[derive(Clone)]
pub struct MultiPoly<F: Field> {
    field: F,
    vars: Vars,
    terms: BTreeMap<Monomial, F::Elem>,
}

pub type QPoly = MultiPoly<Q>;
pub type TPoly = MultiPoly<Tower>;

impl<F: Field> PartialEq for MultiPoly<F> {
    fn eq(&self, o: &Self) -> bool {
        self.same_ring(o) && self.terms == o.terms
    }
}

impl<F: Field> Eq for MultiPoly<F> {}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(field: F, vars: Vars) -> Self {
        MultiPoly { field, vars, terms: BTreeMap::new() }
    }

    pub fn constant(field: F, vars: Vars, c: F::Elem) -> Self {
        let mut p = Self::zero(field, vars);
        let n = p.nvars();
        p.add_term(Monomial::one(n), c);
        p
    }

    pub fn one(field: F, vars: Vars) -> Self {
        let one = field.one();
        Self::constant(field, vars, one)
    }

    pub fn var(field: F, vars: Vars, i: usize) -> Self {
        let n = vars.len();
        let one = field.one();
        let mut p = Self::zero(field, vars);
        p.add_term(Monomial::var(n, i), one);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, F::Elem)>>(field: F, vars: Vars, it: I) -> Self {
        let mut p = Self::zero(field, vars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    /// Same field, same variables, same structure but no terms.
    pub fn zero_like(&self) -> Self {
        Self::zero(self.field.clone(), self.vars.clone())
    }

    pub fn one_like(&self) -> Self {
        Self::one(self.field.clone(), self.vars.clone())
    }

    pub fn constant_like(&self, c: F::Elem) -> Self {
        Self::constant(self.field.clone(), self.vars.clone(), c)
    }

    pub fn var_like(&self, i: usize) -> Self {
        Self::var(self.field.clone(), self.vars.clone(), i)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn same_ring(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.vars, &o.vars) || self.vars == o.vars) && self.field.same_field(&o.field)
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.same_ring(o) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: F::Elem) {
        debug_assert_eq!(m.0.len(), self.vars.len());
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.field.add(o.get(), &c);
                if self.field.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Terms in descending lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter().rev()
    }

    pub fn term_map(&self) -> &BTreeMap<Monomial, F::Elem> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> F::Elem {
        self.coeff(&Monomial::one(self.nvars()))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    /// Lexicographically largest term.
    pub fn lex_leading(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut d = None;
        for m in self.terms.keys() {
            match d {
                None => d = Some(m.degree()),
                Some(x) if x != m.degree() => return false,
                _ => {}
            }
        }
        true
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), self.field.neg(c));
        }
        Ok(r)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let f = &self.field;
        let mut acc: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = m1.mul(m2);
                let c = f.mul(c1, c2);
                match acc.get_mut(&m) {
                    Some(x) => *x = f.add(x, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !f.is_zero(c));
        Ok(MultiPoly { field: f.clone(), vars: self.vars.clone(), terms: acc })
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        MultiPoly {
            field: f.clone(),
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(s) {
            return self.zero_like();
        }
        MultiPoly {
            field: f.clone(),
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.mul(c, s))).collect(),
        }
    }

    pub fn scale_q(&self, q: &Rational) -> Self {
        self.scale(&self.field.from_rational(q))
    }

    pub fn mul_term(&self, m: &Monomial, s: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(s) {
            return self.zero_like();
        }
        MultiPoly {
            field: f.clone(),
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), f.mul(c, s))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let f = &self.field;
        let mut r = self.zero_like();
        for (m, c) in &self.terms {
            if m.0[i] > 0 {
                let mut e = m.clone();
                e.0[i] -= 1;
                r.add_term(e, f.scale(c, &rat(m.0[i] as i64)));
            }
        }
        r
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars()).map(|i| self.derivative(i)).collect()
    }

    /// Exact value at a point with coordinates in the same field.
    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.nvars() {
            return Err(Error::Shape(format!(
                "point has {} coordinates, ring has {} variables",
                point.len(),
                self.nvars()
            )));
        }
        let f = &self.field;
        let n = self.nvars();
        let mut powers: Vec<Vec<F::Elem>> = Vec::with_capacity(n);
        for i in 0..n {
            let d = self.degree_in(i) as usize;
            let mut v = vec![f.one()];
            for k in 1..=d {
                let next = f.mul(&v[k - 1], &point[i]);
                v.push(next);
            }
            powers.push(v);
        }
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = f.mul(&t, &powers[i][e as usize]);
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Coefficientwise map into another field.
    pub fn map_coeffs<G: Field, M: Fn(&F::Elem) -> G::Elem>(&self, g: &G, map: M) -> MultiPoly<G> {
        let mut r = MultiPoly::zero(g.clone(), self.vars.clone());
        for (m, c) in &self.terms {
            r.add_term(m.clone(), map(c));
        }
        r
    }

    /// Same polynomial in a ring whose variables are `new_vars`, with old
    /// variable `i` sent to new variable `map[i]`.
    pub fn rename_into(&self, new_vars: &Vars, map: &[usize]) -> Self {
        let n = new_vars.len();
        let mut r = MultiPoly::zero(self.field.clone(), new_vars.clone());
        for (m, c) in &self.terms {
            let mut e = vec![0u32; n];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            r.add_term(Monomial(e), c.clone());
        }
        r
    }

    /// Substitutes `images[i]` for variable `i`; all images share one ring.
    pub fn compose(&self, images: &[MultiPoly<F>]) -> Result<MultiPoly<F>> {
        if images.len() != self.nvars() {
            return Err(Error::Shape("composition arity".into()));
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let n = self.nvars();
        let mut powers: Vec<Vec<MultiPoly<F>>> = Vec::with_capacity(n);
        for i in 0..n {
            let d = self.degree_in(i) as usize;
            let mut v = vec![first.one_like()];
            for k in 1..=d {
                let next = v[k - 1].try_mul(&images[i])?;
                v.push(next);
            }
            powers.push(v);
        }
        let mut acc = first.zero_like();
        for (m, c) in &self.terms {
            let mut t = first.constant_like(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.try_mul(&powers[i][e as usize])?;
                }
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// `self` with variable `i` replaced by the constant `value`.
    pub fn substitute(&self, i: usize, value: &F::Elem) -> Self {
        let f = &self.field;
        let mut r = self.zero_like();
        for (m, c) in &self.terms {
            let mut e = m.clone();
            let k = e.0[i];
            e.0[i] = 0;
            let mut v = c.clone();
            for _ in 0..k {
                v = f.mul(&v, value);
            }
            r.add_term(e, v);
        }
        r
    }

    /// Coefficients with respect to variable `i`: `self = Σ_k c_k x_i^k`,
    /// each `c_k` free of `x_i` (same ring).
    pub fn coefficients_in(&self, i: usize) -> Vec<Self> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![self.zero_like(); d + 1];
        for (m, c) in &self.terms {
            let k = m.0[i] as usize;
            let mut e = m.clone();
            e.0[i] = 0;
            out[k].add_term(e, c.clone());
        }
        out
    }

    /// `x₀^deg · f(x/x₀)` with `x₀` inserted as the first variable.
    pub fn homogenize(&self, new_var: &str) -> Self {
        let mut names = vec![new_var.to_string()];
        names.extend(self.vars.iter().cloned());
        let nv: Vars = Arc::new(names);
        let d = self.total_degree().unwrap_or(0);
        let mut r = MultiPoly::zero(self.field.clone(), nv);
        for (m, c) in &self.terms {
            let mut e = vec![d - m.degree()];
            e.extend(m.0.iter().copied());
            r.add_term(Monomial(e), c.clone());
        }
        r
    }

    /// Sets variable `i` to 1 and removes it from the ring.
    pub fn dehomogenize(&self, i: usize) -> Self {
        let names: Vec<String> =
            self.vars.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, s)| s.clone()).collect();
        let nv: Vars = Arc::new(names);
        let mut r = MultiPoly::zero(self.field.clone(), nv);
        for (m, c) in &self.terms {
            let e: Vec<u32> =
                m.0.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, x)| *x).collect();
            r.add_term(Monomial(e), c.clone());
        }
        r
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.vars[i].clone()
                } else {
                    format!("{}^{}", self.vars[i], e)
                }
            })
            .collect();
        parts.join("*")
    }

    /// Canonical text: terms in descending lexicographic order.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut d = self.field.coeff_display(c);
            let mono = self.fmt_monomial(m);
            if mono.is_empty() && d.needs_parens {
                // a bare constant needs no parentheses
                d.needs_parens = false;
                if let Some(rest) = d.magnitude.strip_prefix('-') {
                    d.magnitude = rest.to_string();
                    d.negative = !d.negative;
                }
            }
            let body = if mono.is_empty() {
                if d.needs_parens {
                    format!("({})", d.magnitude)
                } else {
                    d.magnitude.clone()
                }
            } else if d.magnitude == "1" {
                mono
            } else if d.needs_parens {
                format!("({})*{}", d.magnitude, mono)
            } else {
                format!("{}*{}", d.magnitude, mono)
            };
            if k == 0 {
                if d.negative {
                    s.push('-');
                }
            } else {
                s.push_str(if d.negative { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        s
    }

    /// Makes the lexicographic leading coefficient 1.
    pub fn monic_lex(&self) -> Self {
        match self.lex_leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.field.inv(c).unwrap();
                self.scale(&inv)
            }
        }
    }

    /// View as univariate in variable `i` when no other variable occurs.
    pub fn to_univariate(&self, i: usize) -> Option<UniPoly<F>> {
        let d = self.degree_in(i) as usize;
        let mut c = vec![self.field.zero(); d + 1];
        for (m, x) in &self.terms {
            if m.0.iter().enumerate().any(|(k, &e)| k != i && e > 0) {
                return None;
            }
            c[m.0[i] as usize] = x.clone();
        }
        Some(UniPoly::new(self.field.clone(), c))
    }

    pub fn from_univariate(p: &UniPoly<F>, vars: Vars, i: usize) -> Self {
        let n = vars.len();
        let mut r = MultiPoly::zero(p.field().clone(), vars);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0u32; n];
            e[i] = k as u32;
            r.add_term(Monomial(e), c.clone());
        }
        r
    }

    /// Exact quotient; reports the remainder when the division is inexact.
    pub fn divexact(&self, g: &Self) -> Result<Self> {
        self.check(g)?;
        let (q, r) = self.divrem_lex(g)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision(r.to_text()))
        }
    }

    /// Multivariate division by one polynomial in lexicographic order.
    pub fn divrem_lex(&self, g: &Self) -> Result<(Self, Self)> {
        let f = &self.field;
        let Some((lm, lc)) = g.lex_leading() else {
            return Err(Error::DivisionByZero);
        };
        let lm = lm.clone();
        let inv = f.inv(lc).unwrap();
        let mut p = self.clone();
        let mut q = self.zero_like();
        let mut r = self.zero_like();
        while let Some((m, c)) = p.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&m) {
                let t = lm.div_into(&m);
                let s = f.mul(&c, &inv);
                q.add_term(t.clone(), s.clone());
                let sub = g.mul_term(&t, &s);
                for (mm, cc) in &sub.terms {
                    p.add_term(mm.clone(), f.neg(cc));
                }
            } else {
                p.terms.remove(&m);
                r.add_term(m, c);
            }
        }
        Ok((q, r))
    }
}

impl<'a, F: Field> Add for &'a MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn add(self, o: &'a MultiPoly<F>) -> MultiPoly<F> {
        self.try_add(o).expect("ring mismatch")
    }
}

impl<'a, F: Field> Sub for &'a MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn sub(self, o: &'a MultiPoly<F>) -> MultiPoly<F> {
        self.try_sub(o).expect("ring mismatch")
    }
}

impl<'a, F: Field> Mul for &'a MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn mul(self, o: &'a MultiPoly<F>) -> MultiPoly<F> {
        self.try_mul(o).expect("ring mismatch")
    }
}

impl<F: Field> Neg for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        MultiPoly::neg(self)
    }
}

pub fn mp_mul<F: Field>(f: &MultiPoly<F>, g: &MultiPoly<F>) -> Result<MultiPoly<F>> {
    f.try_mul(g)
}

pub fn mp_divexact<F: Field>(f: &MultiPoly<F>, g: &MultiPoly<F>) -> Result<MultiPoly<F>> {
    f.divexact(g)
}

pub fn gradient<F: Field>(f: &MultiPoly<F>) -> Vec<MultiPoly<F>> {
    f.gradient()
}

pub fn homogenize<F: Field>(f: &MultiPoly<F>, new_var: &str) -> MultiPoly<F> {
    f.homogenize(new_var)
}

pub fn dehomogenize<F: Field>(f: &MultiPoly<F>, i: usize) -> MultiPoly<F> {
    f.dehomogenize(i)
}

impl QPoly {
    /// The same polynomial with coefficients read in a tower.
    pub fn to_tower(&self, t: &Tower) -> TPoly {
        self.map_coeffs(t, |c| t.rational_coords(c))
    }

    pub fn evaluate_at(&self, point: &[FieldElement]) -> Result<FieldElement> {
        let Some(first) = point.first() else {
            return Ok(FieldElement::from_rational(&crate::exact_arith::TowerField::rationals(), self.constant_term()));
        };
        let t = first.field().clone();
        self.to_tower(&t).evaluate_at(point)
    }

    /// Parses with `x1..xn`-style or custom variables over ℚ.
    pub fn parse(text: &str, vars: &Vars) -> Result<QPoly> {
        crate::syntax::parse_qpoly(text, vars)
    }

    pub fn is_integral(&self) -> bool {
        self.terms().all(|(_, c)| c.is_integer())
    }

    pub fn constant_q(vars: Vars, q: Rational) -> QPoly {
        QPoly::constant(Q, vars, q)
    }
}

impl TPoly {
    pub fn tower(&self) -> &Tower {
        self.field()
    }

    pub fn parse(text: &str, vars: &Vars, t: &Tower) -> Result<TPoly> {
        crate::syntax::parse_tpoly(text, vars, t)
    }

    pub fn evaluate_at(&self, point: &[FieldElement]) -> Result<FieldElement> {
        for p in point {
            if !p.field().same(self.field()) {
                return Err(Error::FieldMismatch);
            }
        }
        let coords: Vec<Vec<Rational>> = point.iter().map(|p| p.coords().to_vec()).collect();
        let v = self.evaluate(&coords)?;
        Ok(FieldElement::from_coords(self.field(), v))
    }

    /// Coefficientwise image under an automorphism.
    pub fn conjugate(&self, s: &Automorphism) -> Result<TPoly> {
        if !s.field().same(self.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.map_coeffs(self.field(), |c| s.apply_coords(c)))
    }

    /// Components over the monomial ℚ-basis of the tower:
    /// `self = Σ_j basis_j · f_j`.
    pub fn coefficient_components(&self) -> Vec<QPoly> {
        let t = self.field();
        let mut out = vec![QPoly::zero(Q, self.vars().clone()); t.dim()];
        for (m, c) in self.terms() {
            for (j, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    out[j].add_term(m.clone(), x.clone());
                }
            }
        }
        out
    }

    /// Inverse of [`TPoly::coefficient_components`].
    pub fn from_components(t: &Tower, comps: &[QPoly]) -> Result<TPoly> {
        let Some(first) = comps.first() else {
            return Err(Error::Invalid("no components".into()));
        };
        if comps.len() != t.dim() {
            return Err(Error::Shape("component count differs from degree".into()));
        }
        let mut r = TPoly::zero(t.clone(), first.vars().clone());
        for (j, f) in comps.iter().enumerate() {
            for (m, c) in f.terms() {
                let mut v = t.zero_coords();
                v[j] = c.clone();
                r.add_term(m.clone(), v);
            }
        }
        Ok(r)
    }

    /// The polynomial over ℚ if every coefficient is rational.
    pub fn to_rational(&self) -> Option<QPoly> {
        let t = self.field();
        let mut r = QPoly::zero(Q, self.vars().clone());
        for (m, c) in self.terms() {
            r.add_term(m.clone(), t.to_rational(c)?);
        }
        Some(r)
    }

    pub fn is_rational(&self) -> bool {
        let t = self.field();
        self.terms().all(|(_, c)| t.to_rational(c).is_some())
    }

    /// Common denominator making all coordinates integral.
    pub fn clear_denominators(&self) -> TPoly {
        let t = self.field();
        let l = self
            .terms()
            .fold(num_bigint::BigInt::one(), |acc, (_, c)| num_integer::Integer::lcm(&acc, &t.denominator_lcm(c)));
        self.scale_q(&Rational::from_integer(l))
    }
}

/// Common ring check helper for lists.
pub fn same_ring_all<F: Field>(ps: &[MultiPoly<F>]) -> bool {
    ps.windows(2).all(|w| w[0].same_ring(&w[1]))
}

pub fn q_to_tower_all(ps: &[QPoly], t: &Tower) -> Vec<TPoly> {
    ps.iter().map(|p| p.to_tower(t)).collect()
}

pub fn rational_one() -> Rational {
    Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QPoly {
        QPoly::parse(s, &xvars(3)).unwrap()
    }

    #[test]
    fn product_of_difference_and_sum() {
        let a = p("x1 - x2");
        let b = p("x1 + x2");
        assert_eq!((&a * &b).to_text(), "x1^2 - x2^2");
    }

    #[test]
    fn gradient_of_whitney_umbrella() {
        let f = p("x2^2 - x3*x1^2");
        let g: Vec<String> = f.gradient().iter().map(|q| q.to_text()).collect();
        assert_eq!(g, vec!["-2*x1*x3", "2*x2", "-x1^2"]);
    }

    #[test]
    fn homogenize_round_trip() {
        let f = p("x1^3 - 2");
        let h = f.homogenize("x0");
        assert_eq!(h.to_text(), "-2*x0^3 + x1^3");
        assert_eq!(h.dehomogenize(0), f);
        assert_eq!(p("x1 + 1").homogenize("x0").to_text(), "x0 + x1");
    }

    #[test]
    fn inexact_division_reports_remainder() {
        let f = p("x1^2 + 1");
        let g = p("x1 - 1");
        match f.divexact(&g) {
            Err(Error::InexactDivision(r)) => assert_eq!(r, "2"),
            other => panic!("{other:?}"),
        }
    }
}
