//! Reduced Gröbner bases by Buchberger's algorithm and the ideal operations
//! built on them.

mod buchberger;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::exact_arith::Field;
use crate::multipoly::{Monomial, MultiPoly, Vars};

pub use buchberger::{buchberger, is_groebner, normal_form};

/// Monomial order. `Block(k)`: graded reverse lexicographic on the first
/// `k` variables, ties broken by graded reverse lexicographic on the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TermOrder {
    Lex,
    GrevLex,
    Block(usize),
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Lex => a.0.cmp(&b.0),
            TermOrder::GrevLex => grevlex(&a.0, &b.0),
            TermOrder::Block(k) => {
                let k = (*k).min(a.0.len());
                grevlex(&a.0[..k], &b.0[..k]).then_with(|| grevlex(&a.0[k..], &b.0[k..]))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            TermOrder::Lex => "lex".into(),
            TermOrder::GrevLex => "grevlex".into(),
            TermOrder::Block(k) => format!("block({k})"),
        }
    }
}

/// A reduced Gröbner basis, sorted by decreasing leading monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis<F: Field> {
    pub order: TermOrder,
    pub basis: Vec<MultiPoly<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant() && !self.basis[0].is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| leading(g, self.order).0.clone()).collect()
    }

    pub fn normal_form(&self, f: &MultiPoly<F>) -> MultiPoly<F> {
        normal_form(f, &self.basis, self.order)
    }

    pub fn contains(&self, f: &MultiPoly<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn to_text(&self) -> Vec<String> {
        self.basis.iter().map(|g| g.to_text()).collect()
    }
}

/// Leading term of a nonzero polynomial in `order`.
pub fn leading<F: Field>(f: &MultiPoly<F>, order: TermOrder) -> (&Monomial, &F::Elem) {
    f.term_map().iter().max_by(|a, b| order.cmp(a.0, b.0)).expect("nonzero polynomial")
}

/// Finitely generated ideal with write-once cached bases.
pub struct Ideal<F: Field> {
    field: F,
    vars: Vars,
    gens: Vec<MultiPoly<F>>,
    cache: Mutex<BTreeMap<TermOrder, Arc<GroebnerBasis<F>>>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        Ideal {
            field: self.field.clone(),
            vars: self.vars.clone(),
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl<F: Field> std::fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.gens.iter().map(|g| g.to_text()).collect::<Vec<_>>().join(", "))
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(field: F, vars: Vars, gens: Vec<MultiPoly<F>>) -> Result<Self> {
        let probe = MultiPoly::zero(field.clone(), vars.clone());
        for g in &gens {
            if !g.same_ring(&probe) {
                return Err(Error::RingMismatch);
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { field, vars, gens, cache: Mutex::new(BTreeMap::new()) })
    }

    /// Ideal generated by a nonempty list.
    pub fn from_gens(gens: Vec<MultiPoly<F>>) -> Result<Self> {
        let first = gens.first().ok_or_else(|| Error::Invalid("no generators".into()))?;
        Self::new(first.field().clone(), first.vars().clone(), gens)
    }

    pub fn zero(field: F, vars: Vars) -> Self {
        Ideal { field, vars, gens: vec![], cache: Mutex::new(BTreeMap::new()) }
    }

    pub fn unit(field: F, vars: Vars) -> Self {
        let one = MultiPoly::one(field.clone(), vars.clone());
        Ideal { field, vars, gens: vec![one], cache: Mutex::new(BTreeMap::new()) }
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

    pub fn gens(&self) -> &[MultiPoly<F>] {
        &self.gens
    }

    pub fn template(&self) -> MultiPoly<F> {
        MultiPoly::zero(self.field.clone(), self.vars.clone())
    }

    fn check(&self, f: &MultiPoly<F>) -> Result<()> {
        if f.same_ring(&self.template()) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Reduced basis in `order`, computed once.
    pub fn groebner(&self, order: TermOrder) -> Arc<GroebnerBasis<F>> {
        let mut cache = self.cache.lock().unwrap();
        if let Some(b) = cache.get(&order) {
            return b.clone();
        }
        let b = Arc::new(GroebnerBasis { order, basis: buchberger(&self.gens, order) });
        cache.insert(order, b.clone());
        b
    }

    pub fn is_unit(&self) -> bool {
        self.groebner(TermOrder::GrevLex).is_unit()
    }

    pub fn contains(&self, f: &MultiPoly<F>) -> Result<bool> {
        self.check(f)?;
        Ok(f.is_zero() || self.groebner(TermOrder::GrevLex).contains(f))
    }

    /// `f ∈ √I`, by testing `1 ∈ I + (1 − t·f)` with a new variable `t`.
    pub fn radical_contains(&self, f: &MultiPoly<F>) -> Result<bool> {
        self.check(f)?;
        if f.is_zero() {
            return Ok(true);
        }
        if self.contains(f)? {
            return Ok(true);
        }
        let (ext, map) = extend_vars(&self.vars, "t");
        let t = MultiPoly::var(self.field.clone(), ext.clone(), 0);
        let mut gens: Vec<MultiPoly<F>> =
            self.gens.iter().map(|g| g.rename_into(&ext, &map)).collect();
        let one = MultiPoly::one(self.field.clone(), ext.clone());
        gens.push(one.try_sub(&t.try_mul(&f.rename_into(&ext, &map))?)?);
        Ok(GroebnerBasis { order: TermOrder::GrevLex, basis: buchberger(&gens, TermOrder::GrevLex) }
            .is_unit())
    }

    fn same_ring_ideal(&self, o: &Ideal<F>) -> Result<()> {
        if self.template().same_ring(&o.template()) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn sum(&self, o: &Ideal<F>) -> Result<Ideal<F>> {
        self.same_ring_ideal(o)?;
        let mut g = self.gens.clone();
        g.extend(o.gens.iter().cloned());
        Ideal::new(self.field.clone(), self.vars.clone(), g)
    }

    pub fn product(&self, o: &Ideal<F>) -> Result<Ideal<F>> {
        self.same_ring_ideal(o)?;
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &o.gens {
                g.push(a.try_mul(b)?);
            }
        }
        Ideal::new(self.field.clone(), self.vars.clone(), g)
    }

    /// `I ∩ K[keep]`, as an ideal of the same ring.
    pub fn elimination(&self, keep: &[usize]) -> Ideal<F> {
        let n = self.nvars();
        let elim: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        if elim.is_empty() {
            return self.clone();
        }
        let mut perm: Vec<usize> = vec![0; n];
        let mut names = Vec::with_capacity(n);
        for (k, &i) in elim.iter().chain(keep.iter()).enumerate() {
            perm[i] = k;
            names.push(self.vars[i].clone());
        }
        let pv: Vars = Arc::new(names);
        let gens: Vec<MultiPoly<F>> = self.gens.iter().map(|g| g.rename_into(&pv, &perm)).collect();
        let order = TermOrder::Block(elim.len());
        let basis = buchberger(&gens, order);
        let mut inv = vec![0; n];
        for (i, &k) in perm.iter().enumerate() {
            inv[k] = i;
        }
        let kept: Vec<MultiPoly<F>> = basis
            .into_iter()
            .filter(|g| (0..elim.len()).all(|k| !g.involves(k)))
            .map(|g| g.rename_into(&self.vars, &inv))
            .collect();
        Ideal::new(self.field.clone(), self.vars.clone(), kept).unwrap()
    }

    /// `I ∩ J` via `t·I + (1 − t)·J` and elimination of `t`.
    pub fn intersect(&self, o: &Ideal<F>) -> Result<Ideal<F>> {
        self.same_ring_ideal(o)?;
        if self.gens.is_empty() || o.gens.is_empty() {
            return Ok(Ideal::zero(self.field.clone(), self.vars.clone()));
        }
        let (ext, map) = extend_vars(&self.vars, "t");
        let t = MultiPoly::var(self.field.clone(), ext.clone(), 0);
        let one = MultiPoly::one(self.field.clone(), ext.clone());
        let omt = one.try_sub(&t)?;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(t.try_mul(&g.rename_into(&ext, &map))?);
        }
        for g in &o.gens {
            gens.push(omt.try_mul(&g.rename_into(&ext, &map))?);
        }
        let basis = buchberger(&gens, TermOrder::Block(1));
        let back: Vec<usize> = (0..self.nvars()).collect();
        let kept: Vec<MultiPoly<F>> = basis
            .into_iter()
            .filter(|g| !g.involves(0))
            .map(|g| g.dehomogenize(0).rename_into(&self.vars, &back))
            .collect();
        Ideal::new(self.field.clone(), self.vars.clone(), kept)
    }

    pub fn is_subset_of(&self, o: &Ideal<F>) -> Result<bool> {
        for g in &self.gens {
            if !o.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, o: &Ideal<F>) -> Result<bool> {
        Ok(self.is_subset_of(o)? && o.is_subset_of(self)?)
    }

    /// `√I ⊆ √J`.
    pub fn radical_subset_of(&self, o: &Ideal<F>) -> Result<bool> {
        for g in &self.gens {
            if !o.radical_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn radical_equals(&self, o: &Ideal<F>) -> Result<bool> {
        Ok(self.radical_subset_of(o)? && o.radical_subset_of(self)?)
    }

    /// Krull dimension of `K[x]/I`; −1 for the unit ideal.
    pub fn krull_dimension(&self) -> i64 {
        let gb = self.groebner(TermOrder::GrevLex);
        if gb.is_unit() {
            return -1;
        }
        dimension_from_leading(&gb.leading_monomials(), self.nvars())
    }

    /// Same generators with coefficients mapped into another field.
    pub fn map_field<G: Field, M: Fn(&F::Elem) -> G::Elem + Copy>(&self, g: &G, m: M) -> Ideal<G> {
        Ideal::new(
            g.clone(),
            self.vars.clone(),
            self.gens.iter().map(|p| p.map_coeffs(g, m)).collect(),
        )
        .unwrap()
    }
}

/// Largest size of a variable set containing the support of no leading
/// monomial.
pub fn dimension_from_leading(lms: &[Monomial], n: usize) -> i64 {
    let supports: Vec<u64> = lms
        .iter()
        .map(|m| m.0.iter().enumerate().filter(|(_, &e)| e > 0).fold(0u64, |a, (i, _)| a | (1 << i)))
        .collect();
    let mut best = 0;
    for s in 0u64..(1u64 << n) {
        let size = s.count_ones() as i64;
        if size > best && supports.iter().all(|&m| m & !s != 0) {
            best = size;
        }
    }
    best
}

/// Ring with a fresh variable prepended; `map[i]` sends old index `i` to
/// its new index.
pub fn extend_vars(vars: &Vars, base: &str) -> (Vars, Vec<usize>) {
    let mut name = format!("_{base}");
    while vars.contains(&name) {
        name.push('_');
    }
    let mut v = vec![name];
    v.extend(vars.iter().cloned());
    let map = (1..=vars.len()).collect();
    (Arc::new(v), map)
}

pub fn ideal_membership<F: Field>(f: &MultiPoly<F>, i: &Ideal<F>) -> Result<bool> {
    i.contains(f)
}

pub fn radical_membership<F: Field>(f: &MultiPoly<F>, i: &Ideal<F>) -> Result<bool> {
    i.radical_contains(f)
}

pub fn elimination_ideal<F: Field>(i: &Ideal<F>, keep: &[usize]) -> Ideal<F> {
    i.elimination(keep)
}

pub fn intersect_ideals<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    i.intersect(j)
}

pub fn ideal_equal<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<bool> {
    i.equals(j)
}

pub fn radical_equal<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<bool> {
    i.radical_equals(j)
}

pub fn krull_dimension<F: Field>(i: &Ideal<F>) -> i64 {
    i.krull_dimension()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::Q;
    use crate::multipoly::{xvars, QPoly};

    fn ideal(gens: &[&str], n: usize) -> Ideal<Q> {
        let v = xvars(n);
        Ideal::new(Q, v.clone(), gens.iter().map(|s| QPoly::parse(s, &v).unwrap()).collect())
            .unwrap()
    }

    fn texts(i: &Ideal<Q>, o: TermOrder) -> Vec<String> {
        i.groebner(o).to_text()
    }

    #[test]
    fn lex_basis_of_twisted_chain() {
        let i = ideal(&["x1 - x2^2", "x2 - x3"], 3);
        assert_eq!(texts(&i, TermOrder::Lex), vec!["x1 - x3^2", "x2 - x3"]);
        assert_eq!(texts(&ideal(&["1"], 2), TermOrder::Lex), vec!["1"]);
    }

    #[test]
    fn eliminations() {
        let i = ideal(&["x1^2 + x2^2 - 1", "x1 - x2"], 2);
        assert_eq!(i.elimination(&[1]).gens()[0].to_text(), "x2^2 - 1/2");
        let i = ideal(&["x2 - x1^2", "x3 - x1^3"], 3);
        let e = i.elimination(&[1, 2]);
        assert_eq!(e.gens().len(), 1);
        assert_eq!(e.gens()[0].to_text(), "x2^3 - x3^2");
        assert!(ideal(&["x1 - x2^2"], 2).elimination(&[0]).gens().is_empty());
    }

    #[test]
    fn intersections() {
        let i = ideal(&["x1"], 2).intersect(&ideal(&["x2"], 2)).unwrap();
        assert!(i.equals(&ideal(&["x1*x2"], 2)).unwrap());
        let i = ideal(&["x1 - x2"], 2).intersect(&ideal(&["x1 + x2"], 2)).unwrap();
        assert!(i.equals(&ideal(&["x1^2 - x2^2"], 2)).unwrap());
    }

    #[test]
    fn radicals() {
        assert!(ideal(&["x1^2"], 1).radical_contains(&QPoly::parse("x1", &xvars(1)).unwrap()).unwrap());
        assert!(!ideal(&["x1^2", "x2"], 2).equals(&ideal(&["x1", "x2"], 2)).unwrap());
        assert!(ideal(&["x1^2", "x2"], 2).radical_equals(&ideal(&["x1", "x2"], 2)).unwrap());
        assert!(ideal(&["1"], 1).equals(&ideal(&["x1", "1 - x1"], 1)).unwrap());
    }

    #[test]
    fn dimensions() {
        assert_eq!(Ideal::zero(Q, xvars(3)).krull_dimension(), 3);
        assert_eq!(ideal(&["x1^3 - 2"], 1).krull_dimension(), 0);
        assert_eq!(ideal(&["x2^2 - x3*x1^2"], 3).krull_dimension(), 2);
        assert_eq!(ideal(&["1"], 3).krull_dimension(), -1);
    }
}
