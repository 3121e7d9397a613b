use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, QPoly};
use crate::exact_arith::Rational;

/// Integer-primitive with positive lexicographic leading coefficient.
pub fn normalize(f: &QPoly) -> QPoly {
    if f.is_zero() {
        return f.clone();
    }
    let mut den = BigInt::one();
    for (_, c) in f.terms() {
        den = den.lcm(c.denom());
    }
    let mut num = BigInt::zero();
    for (_, c) in f.terms() {
        let v = c.numer() * (&den / c.denom());
        num = num.gcd(&v);
    }
    let mut s = Rational::new(den, num);
    if f.lex_leading().unwrap().1.is_negative() {
        s = -s;
    }
    f.scale(&s)
}

/// Main variable for the recursion: the highest-index variable present.
fn main_var(f: &QPoly, g: &QPoly) -> Option<usize> {
    (0..f.nvars()).rev().find(|&i| f.involves(i) || g.involves(i))
}

/// Greatest common divisor over ℚ, normalized.
pub fn mv_gcd(f: &QPoly, g: &QPoly) -> QPoly {
    if f.is_zero() {
        return normalize(g);
    }
    if g.is_zero() {
        return normalize(f);
    }
    let Some(v) = main_var(f, g) else {
        return f.one_like();
    };
    if f.is_constant() || g.is_constant() {
        return f.one_like();
    }
    if !f.involves(v) {
        return gcd_with_coefficients(f, g, v);
    }
    if !g.involves(v) {
        return gcd_with_coefficients(g, f, v);
    }
    let cf = content(f, v);
    let cg = content(g, v);
    let c = mv_gcd(&cf, &cg);
    let pf = f.divexact(&cf).expect("content divides");
    let pg = g.divexact(&cg).expect("content divides");
    let (a, b) = if pf.degree_in(v) >= pg.degree_in(v) { (pf, pg) } else { (pg, pf) };
    let h = subresultant_gcd(a, b, v);
    normalize(&(&c * &h))
}

/// `gcd(a, f)` where `a` is free of `v`: the gcd of `a` with every
/// coefficient of `f` in `v`.
fn gcd_with_coefficients(a: &QPoly, f: &QPoly, v: usize) -> QPoly {
    let mut acc = normalize(a);
    for c in f.coefficients_in(v) {
        if acc.is_constant() {
            break;
        }
        if !c.is_zero() {
            acc = mv_gcd(&acc, &c);
        }
    }
    acc
}

/// Gcd of the coefficients in `v`.
pub fn content(f: &QPoly, v: usize) -> QPoly {
    let mut acc = f.zero_like();
    for c in f.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        acc = mv_gcd(&acc, &c);
        if acc.is_constant() {
            break;
        }
    }
    acc
}

pub fn primitive_part(f: &QPoly, v: usize) -> QPoly {
    if f.is_zero() {
        return f.clone();
    }
    f.divexact(&content(f, v)).expect("content divides")
}

type Coeffs = Vec<QPoly>;

fn lc(a: &Coeffs) -> &QPoly {
    a.last().unwrap()
}

fn trim(a: &mut Coeffs) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

/// `lc(b)^(deg a − deg b + 1) · a mod b`.
fn prem(a: &Coeffs, b: &Coeffs) -> Coeffs {
    let db = b.len() - 1;
    let mut r = a.clone();
    let lb = lc(b).clone();
    let mut steps = a.len() - b.len() + 1;
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        for x in r.iter_mut() {
            *x = &*x * &lb;
        }
        for (j, bc) in b.iter().enumerate() {
            let t = &lr * bc;
            r[k + j] = &r[k + j] - &t;
        }
        trim(&mut r);
        steps -= 1;
    }
    if steps > 0 {
        let m = lb.pow(steps as u32);
        for x in r.iter_mut() {
            *x = &*x * &m;
        }
    }
    r
}

fn from_coeffs(a: &Coeffs, v: usize, template: &QPoly) -> QPoly {
    let mut r = template.zero_like();
    for (k, c) in a.iter().enumerate() {
        for (m, x) in c.terms() {
            let mut e = m.clone();
            e.0[v] = k as u32;
            r.add_term(Monomial(e.0), x.clone());
        }
    }
    r
}

fn subresultant_gcd(a: QPoly, b: QPoly, v: usize) -> QPoly {
    let template = a.zero_like();
    let mut a = a.coefficients_in(v);
    let mut b = b.coefficients_in(v);
    let mut g = template.one_like();
    let mut h = template.one_like();
    loop {
        let delta = (a.len() - b.len()) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return template.one_like();
        }
        let div = &g * &h.pow(delta);
        a = b;
        b = r.iter().map(|c| c.divexact(&div).expect("subresultant division")).collect();
        g = lc(&a).clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).divexact(&h.pow(delta - 1)).expect("subresultant division"),
        };
    }
    primitive_part(&from_coeffs(&b, v, &template), v)
}

/// `f / gcd(f, ∂f/∂x₁, …, ∂f/∂x_n)`, normalized.
pub fn squarefree_part(f: &QPoly) -> QPoly {
    if f.is_constant() {
        return normalize(f);
    }
    let mut g = normalize(f);
    for d in f.gradient() {
        if g.is_constant() {
            break;
        }
        g = mv_gcd(&g, &d);
    }
    normalize(&f.divexact(&g).expect("gcd divides"))
}
