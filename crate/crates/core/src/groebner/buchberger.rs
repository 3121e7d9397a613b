use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::TermOrder;
use crate::exact_arith::Field;
use crate::multipoly::{Monomial, MultiPoly};

/// Terms sorted by increasing monomial, so the leading term is last.
struct GPoly<E> {
    terms: Vec<(Monomial, E)>,
}

impl<E: Clone> Clone for GPoly<E> {
    fn clone(&self) -> Self {
        GPoly { terms: self.terms.clone() }
    }
}

impl<E> GPoly<E> {
    fn lm(&self) -> &Monomial {
        &self.terms.last().unwrap().0
    }
}

fn to_gpoly<F: Field>(f: &MultiPoly<F>, order: TermOrder) -> GPoly<F::Elem> {
    let mut terms: Vec<(Monomial, F::Elem)> =
        f.term_map().iter().map(|(m, c)| (m.clone(), c.clone())).collect();
    terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
    GPoly { terms }
}

fn from_gpoly<F: Field>(g: &GPoly<F::Elem>, template: &MultiPoly<F>) -> MultiPoly<F> {
    let mut r = template.zero_like();
    for (m, c) in &g.terms {
        r.add_term(m.clone(), c.clone());
    }
    r
}

fn make_monic<F: Field>(field: &F, g: &mut GPoly<F::Elem>) {
    let inv = field.inv(&g.terms.last().unwrap().1).unwrap();
    if field.is_one(&inv) {
        return;
    }
    for t in g.terms.iter_mut() {
        t.1 = field.mul(&t.1, &inv);
    }
}

/// `p − c·m·q` where `q` is monic, merging sorted term lists.
fn sub_mul<F: Field>(
    field: &F,
    order: TermOrder,
    p: &[(Monomial, F::Elem)],
    c: &F::Elem,
    m: &Monomial,
    q: &[(Monomial, F::Elem)],
) -> Vec<(Monomial, F::Elem)> {
    let mut out = Vec::with_capacity(p.len() + q.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |k: usize| q[k].0.mul(m);
    let mut qm = if j < q.len() { Some(shifted(0)) } else { None };
    while i < p.len() || qm.is_some() {
        let ord = match (p.get(i), &qm) {
            (Some(a), Some(b)) => order.cmp(&a.0, b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => unreachable!(),
        };
        match ord {
            Ordering::Less => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let b = qm.take().unwrap();
                out.push((b, field.neg(&field.mul(c, &q[j].1))));
                j += 1;
                qm = if j < q.len() { Some(shifted(j)) } else { None };
            }
            Ordering::Equal => {
                let b = qm.take().unwrap();
                let v = field.sub(&p[i].1, &field.mul(c, &q[j].1));
                if !field.is_zero(&v) {
                    out.push((b, v));
                }
                i += 1;
                j += 1;
                qm = if j < q.len() { Some(shifted(j)) } else { None };
            }
        }
    }
    out
}

/// Full reduction of `f` by monic `g`s.
fn reduce<F: Field>(
    field: &F,
    order: TermOrder,
    f: GPoly<F::Elem>,
    basis: &[GPoly<F::Elem>],
) -> GPoly<F::Elem> {
    let mut p = f.terms;
    let mut rem: Vec<(Monomial, F::Elem)> = Vec::new();
    while let Some((m, c)) = p.last().cloned() {
        match basis.iter().find(|g| g.lm().divides(&m)) {
            Some(g) => {
                let t = g.lm().div_into(&m);
                p = sub_mul(field, order, &p, &c, &t, &g.terms);
            }
            None => {
                p.pop();
                rem.push((m, c));
            }
        }
    }
    rem.reverse();
    GPoly { terms: rem }
}

fn spoly<F: Field>(
    field: &F,
    order: TermOrder,
    a: &GPoly<F::Elem>,
    b: &GPoly<F::Elem>,
) -> GPoly<F::Elem> {
    let l = a.lm().lcm(b.lm());
    let ma = a.lm().div_into(&l);
    let mb = b.lm().div_into(&l);
    let one = field.one();
    let left: Vec<(Monomial, F::Elem)> =
        a.terms.iter().map(|(m, c)| (m.mul(&ma), c.clone())).collect();
    GPoly { terms: sub_mul(field, order, &left, &one, &mb, &b.terms) }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger<F: Field>(gens: &[MultiPoly<F>], order: TermOrder) -> Vec<MultiPoly<F>> {
    let Some(template) = gens.first().map(|g| g.zero_like()) else {
        return vec![];
    };
    let field = template.field().clone();
    let mut basis: Vec<GPoly<F::Elem>> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let r = reduce(&field, order, to_gpoly(g, order), &basis);
        if !r.terms.is_empty() {
            let mut r = r;
            make_monic(&field, &mut r);
            basis.push(r);
        }
    }
    if basis.iter().any(|g| g.lm().is_one()) {
        return vec![MultiPoly::one(field, template.vars().clone())];
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    while !pairs.is_empty() {
        // normal strategy
        let &(i, j) = pairs
            .iter()
            .min_by(|x, y| {
                let lx = basis[x.0].lm().lcm(basis[x.1].lm());
                let ly = basis[y.0].lm().lcm(basis[y.1].lm());
                lx.degree()
                    .cmp(&ly.degree())
                    .then_with(|| order.cmp(&lx, &ly))
                    .then_with(|| x.cmp(y))
            })
            .unwrap();
        pairs.remove(&(i, j));
        let (a, b) = (basis[i].lm(), basis[j].lm());
        if a.coprime(b) {
            continue;
        }
        let l = a.lcm(b);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = spoly(&field, order, &basis[i], &basis[j]);
        let mut r = reduce(&field, order, s, &basis);
        if r.terms.is_empty() {
            continue;
        }
        make_monic(&field, &mut r);
        if r.lm().is_one() {
            return vec![MultiPoly::one(field, template.vars().clone())];
        }
        let k = basis.len();
        basis.push(r);
        for i in 0..k {
            pairs.insert((i, k));
        }
    }
    // minimal basis, then interreduce
    let mut keep: Vec<GPoly<F::Elem>> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            l != k && h.lm().divides(g.lm()) && (h.lm() != g.lm() || l < k)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let others: Vec<GPoly<F::Elem>> =
            keep.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, g)| g.clone()).collect();
        let lead = keep[k].terms.last().cloned().unwrap();
        let mut tail = keep[k].clone();
        tail.terms.pop();
        let mut r = reduce(&field, order, tail, &others);
        r.terms.push(lead);
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    reduced.iter().map(|g| from_gpoly(g, &template)).collect()
}

/// Normal form with respect to a Gröbner basis.
pub fn normal_form<F: Field>(f: &MultiPoly<F>, basis: &[MultiPoly<F>], order: TermOrder) -> MultiPoly<F> {
    if f.is_zero() {
        return f.clone();
    }
    let field = f.field().clone();
    let gs: Vec<GPoly<F::Elem>> = basis
        .iter()
        .map(|g| {
            let mut p = to_gpoly(g, order);
            make_monic(&field, &mut p);
            p
        })
        .collect();
    from_gpoly(&reduce(&field, order, to_gpoly(f, order), &gs), f)
}

/// True when every S-polynomial of `basis` reduces to zero.
pub fn is_groebner<F: Field>(basis: &[MultiPoly<F>], order: TermOrder) -> bool {
    let Some(f0) = basis.first() else { return true };
    let field = f0.field().clone();
    let gs: Vec<GPoly<F::Elem>> = basis
        .iter()
        .map(|g| {
            let mut p = to_gpoly(g, order);
            make_monic(&field, &mut p);
            p
        })
        .collect();
    for j in 0..gs.len() {
        for i in 0..j {
            let s = spoly(&field, order, &gs[i], &gs[j]);
            if !reduce(&field, order, s, &gs).terms.is_empty() {
                return false;
            }
        }
    }
    true
}
