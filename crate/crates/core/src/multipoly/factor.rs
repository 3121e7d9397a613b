//! Factorization of univariate polynomials over ℚ: square-free
//! decomposition, factorization modulo a small prime, Hensel lifting and
//! recombination of lifted factors.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::UniPoly;
use crate::exact_arith::{Rational, Q};

/// Largest square-free degree handled.
pub const DEGREE_CAP: usize = 64;

/// `f = unit · ∏ fᵢ^mᵢ` with primitive integral factors of positive leading
/// coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(UniPoly<Q>, usize)>,
    /// False when some square-free part exceeded [`DEGREE_CAP`] and was left
    /// unsplit.
    pub complete: bool,
}

impl Factorization {
    pub fn expand(&self) -> UniPoly<Q> {
        let mut acc = UniPoly::constant(Q, self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m));
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.complete && self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factorization of `f` over ℚ.
pub fn univariate_factor_q(f: &UniPoly<Q>) -> Factorization {
    let Some(deg) = f.degree() else {
        return Factorization { unit: Rational::zero(), factors: vec![], complete: true };
    };
    if deg == 0 {
        return Factorization { unit: f.coeffs()[0].clone(), factors: vec![], complete: true };
    }
    let mut factors = Vec::new();
    let mut complete = true;
    for (a, m) in yun(f) {
        let z = primitive_integral(&a);
        if z.len() - 1 > DEGREE_CAP {
            complete = false;
            factors.push((to_q(&z), m));
            continue;
        }
        for g in zassenhaus(&z) {
            factors.push((to_q(&g), m));
        }
    }
    factors.sort_by(|a, b| {
        (a.0.degree(), a.1, a.0.to_text("t")).cmp(&(b.0.degree(), b.1, b.0.to_text("t")))
    });
    let mut prod = UniPoly::constant(Q, Rational::one());
    for (g, m) in &factors {
        prod = prod.mul(&g.pow(*m));
    }
    let unit = f.leading().unwrap() / prod.leading().unwrap();
    Factorization { unit, factors, complete }
}

/// Yun's square-free decomposition: monic `aᵢ` with `f ∝ ∏ aᵢ^i`.
fn yun(f: &UniPoly<Q>) -> Vec<(UniPoly<Q>, usize)> {
    let mut out = Vec::new();
    let fp = f.derivative();
    let a0 = f.gcd(&fp);
    let mut b = f.divrem(&a0).0;
    let mut c = fp.divrem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    loop {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = b.divrem(&a).0;
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        c = d.divrem(&a).0;
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

type ZPoly = Vec<BigInt>;

fn primitive_integral(f: &UniPoly<Q>) -> ZPoly {
    let mut den = BigInt::one();
    for c in f.coeffs() {
        den = den.lcm(c.denom());
    }
    let mut v: ZPoly = f.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = if v.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    for x in v.iter_mut() {
        *x = &*x / &g * &sign;
    }
    v
}

fn to_q(z: &ZPoly) -> UniPoly<Q> {
    UniPoly::new(Q, z.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

fn z_content_normalize(v: &mut ZPoly) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return;
    }
    let sign = if v.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    for x in v.iter_mut() {
        *x = &*x / &g * &sign;
    }
}

/// Exact quotient in ℤ[t], if any.
fn z_divide(f: &ZPoly, g: &ZPoly) -> Option<ZPoly> {
    let dg = g.len() - 1;
    if f.len() < g.len() {
        return None;
    }
    let mut r = f.clone();
    let mut q = vec![BigInt::zero(); f.len() - dg];
    let lg = g.last().unwrap();
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + dg].div_rem(lg);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, x) in g.iter().enumerate() {
                r[k + j] -= &c * x;
            }
        }
        q[k] = c;
    }
    if r.iter().all(|x| x.is_zero()) {
        Some(q)
    } else {
        None
    }
}

// ---- arithmetic in F_p[t] ----

type PPoly = Vec<u64>;

fn ptrim(mut a: PPoly) -> PPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn pinv(a: u64, p: u64) -> u64 {
    let (mut t, mut nt, mut r, mut nr) = (0i128, 1i128, p as i128, a as i128);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    t.rem_euclid(p as i128) as u64
}

fn psub(a: &PPoly, b: &PPoly, p: u64) -> PPoly {
    let n = a.len().max(b.len());
    ptrim((0..n).map(|i| (a.get(i).unwrap_or(&0) + p - b.get(i).unwrap_or(&0)) % p).collect())
}

fn pmul(a: &PPoly, b: &PPoly, p: u64) -> PPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + x * y) % p;
        }
    }
    ptrim(c)
}

fn pdivrem(a: &PPoly, b: &PPoly, p: u64) -> (PPoly, PPoly) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (vec![], a.clone());
    }
    let inv = pinv(*b.last().unwrap(), p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * inv % p;
        if c != 0 {
            for (j, y) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - c * y % p) % p;
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    (ptrim(q), ptrim(r))
}

fn pmonic(a: &PPoly, p: u64) -> PPoly {
    match a.last() {
        None => vec![],
        Some(&l) => {
            let inv = pinv(l, p);
            a.iter().map(|x| x * inv % p).collect()
        }
    }
}

fn pgcd(a: &PPoly, b: &PPoly, p: u64) -> PPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let r = pdivrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    pmonic(&a, p)
}

/// `s, t` with `s·a + t·b = 1`.
fn pbezout(a: &PPoly, b: &PPoly, p: u64) -> (PPoly, PPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(&r0, &r1, p);
        let s2 = psub(&s0, &pmul(&q, &s1, p), p);
        let t2 = psub(&t0, &pmul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let inv = pinv(r0[0], p);
    let sc = |v: &PPoly| ptrim(v.iter().map(|x| x * inv % p).collect());
    (sc(&s0), sc(&t0))
}

fn ppowmod(a: &PPoly, e: &BigUint, m: &PPoly, p: u64) -> PPoly {
    let mut acc = vec![1u64];
    let base = pdivrem(a, m, p).1;
    for i in (0..e.bits()).rev() {
        acc = pdivrem(&pmul(&acc, &acc, p), m, p).1;
        if e.bit(i) {
            acc = pdivrem(&pmul(&acc, &base, p), m, p).1;
        }
    }
    acc
}

fn pderiv(a: &PPoly, p: u64) -> PPoly {
    ptrim(a.iter().enumerate().skip(1).map(|(i, x)| (i as u64 % p) * x % p).collect())
}

fn reduce_mod(z: &ZPoly, p: u64) -> PPoly {
    let pb = BigInt::from(p);
    ptrim(z.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

/// Distinct-degree then equal-degree factorization of a monic square-free
/// polynomial over F_p.
fn factor_mod_p(f: &PPoly, p: u64, rng: &mut ChaCha8Rng) -> Vec<PPoly> {
    let mut out = Vec::new();
    let x = vec![0u64, 1];
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 1usize;
    while rest.len() - 1 >= 2 * d {
        h = ppowmod(&h, &BigUint::from(p), &rest, p);
        let g = pgcd(&rest, &psub(&h, &x, p), p);
        if g.len() > 1 {
            equal_degree(&g, d, p, rng, &mut out);
            rest = pdivrem(&rest, &g, p).0;
            h = pdivrem(&h, &rest, p).1;
        }
        d += 1;
    }
    if rest.len() > 1 {
        out.push(pmonic(&rest, p));
    }
    out
}

fn equal_degree(f: &PPoly, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<PPoly>) {
    let n = f.len() - 1;
    if n == d {
        out.push(pmonic(f, p));
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: PPoly = ptrim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = psub(&ppowmod(&a, &e, f, p), &vec![1u64], p);
        let g = pgcd(f, &b, p);
        if g.len() > 1 && g.len() < f.len() {
            let q = pdivrem(f, &g, p).0;
            equal_degree(&g, d, p, rng, out);
            equal_degree(&q, d, p, rng, out);
            return;
        }
    }
}

fn small_odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|n| (3..).step_by(2).take_while(|d| d * d <= *n).all(|d| n % d != 0))
}

// ---- Hensel lifting over ℤ / p^k ----

fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    let mut v: ZPoly = a.iter().map(|c| symmetric(c, m)).collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn lift_p(a: &PPoly) -> ZPoly {
    a.iter().map(|&x| BigInt::from(x)).collect()
}

/// Lifts `f ≡ a·b (mod p)`, `a` monic, to `f ≡ a·b (mod p^k)`.
fn hensel_two(f: &ZPoly, a: &PPoly, b: &PPoly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (_, t) = pbezout(a, b, p);
    let pb = BigInt::from(p);
    let mut az = lift_p(a);
    let mut bz = lift_p(b);
    // keep the leading coefficient of b equal to that of f
    let lcf = f.last().unwrap().clone();
    *bz.last_mut().unwrap() = lcf;
    let mut pj = pb.clone();
    for _ in 1..k {
        let ab = zmul(&az, &bz);
        let n = f.len().max(ab.len());
        let z = BigInt::zero();
        let e: ZPoly = (0..n)
            .map(|i| (f.get(i).unwrap_or(&z) - ab.get(i).unwrap_or(&z)) / &pj)
            .collect();
        let ep = reduce_mod(&e, p);
        let alpha = pdivrem(&pmul(&ep, &t, p), a, p).1;
        let rest = psub(&ep, &pmul(b, &alpha, p), p);
        let beta = if rest.is_empty() { vec![] } else { pdivrem(&rest, a, p).0 };
        for (i, x) in alpha.iter().enumerate() {
            az[i] += &pj * BigInt::from(*x);
        }
        for (i, x) in beta.iter().enumerate() {
            if i < bz.len() {
                bz[i] += &pj * BigInt::from(*x);
            } else {
                bz.push(&pj * BigInt::from(*x));
            }
        }
        pj *= &pb;
    }
    (zmod(&az, &pj), zmod(&bz, &pj))
}

/// Lifts a full factorization `f ≡ lc·∏ uᵢ (mod p)` with monic `uᵢ`.
fn hensel_multi(f: &ZPoly, us: &[PPoly], p: u64, k: u32) -> Vec<ZPoly> {
    if us.len() == 1 {
        let pk = BigInt::from(p).pow(k);
        let inv = f.last().unwrap().modinv(&pk).expect("lc invertible mod p");
        return vec![zmod(&f.iter().map(|c| c * &inv).collect::<ZPoly>(), &pk)];
    }
    let half = us.len() / 2;
    let a = us[..half].iter().fold(vec![1u64], |acc, u| pmul(&acc, u, p));
    let lc = f.last().unwrap().mod_floor(&BigInt::from(p)).to_u64().unwrap();
    let b = us[half..].iter().fold(vec![lc], |acc, u| pmul(&acc, u, p));
    let (az, bz) = hensel_two(f, &a, &b, p, k);
    let mut out = hensel_multi(&az, &us[..half], p, k);
    out.extend(hensel_multi(&bz, &us[half..], p, k));
    out
}

/// Bound on the coefficients of any factor of `f` (times the leading
/// coefficient).
fn factor_coeff_bound(f: &ZPoly) -> BigInt {
    let n = f.len() - 1;
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let root = norm2.sqrt() + 1;
    (BigInt::one() << n) * root * f.last().unwrap().abs()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Irreducible factors of a primitive square-free `f ∈ ℤ[t]` with positive
/// leading coefficient.
fn zassenhaus(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(u64, Vec<PPoly>)> = None;
    let mut tried = 0;
    for p in small_odd_primes().take(200) {
        if (f.last().unwrap() % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce_mod(f, p);
        if fp.len() != f.len() || pgcd(&fp, &pderiv(&fp, p), p).len() != 1 {
            continue;
        }
        let us = factor_mod_p(&pmonic(&fp, p), p, &mut rng);
        if us.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().map_or(true, |(_, b)| us.len() < b.len()) {
            best = Some((p, us));
        }
        tried += 1;
        if tried >= 5 {
            break;
        }
    }
    let (p, us) = best.expect("a good prime exists");
    let bound = factor_coeff_bound(f) * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let mut lifted = hensel_multi(f, &us, p, k);
    let mut g = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = false;
        for subset in combinations(lifted.len(), s) {
            let lc = g.last().unwrap().clone();
            let mut cand = vec![lc];
            for &i in &subset {
                cand = zmod(&zmul(&cand, &lifted[i]), &pk);
            }
            z_content_normalize(&mut cand);
            if let Some(q) = z_divide(&g, &cand) {
                g = q;
                z_content_normalize(&mut g);
                out.push(cand);
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if g.len() > 1 {
        out.push(g);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    fn up(c: &[i64]) -> UniPoly<Q> {
        UniPoly::new(Q, c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn linear_is_irreducible() {
        assert!(univariate_factor_q(&up(&[-1, 1])).is_irreducible());
    }

    #[test]
    fn difference_of_squares_of_squares() {
        let f = univariate_factor_q(&up(&[-4, 0, 0, 0, 1]));
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.factors[0].0, up(&[2, 0, 1]));
        assert_eq!(f.factors[1].0, up(&[-2, 0, 1]));
        assert_eq!(f.expand(), up(&[-4, 0, 0, 0, 1]));
    }

    #[test]
    fn quartic_from_nested_roots_is_irreducible() {
        assert!(univariate_factor_q(&up(&[2, 0, -4, 0, 1])).is_irreducible());
    }

    #[test]
    fn swinnerton_dyer_like() {
        // x^4 - 10x^2 + 1 splits into quadratics mod every prime
        assert!(univariate_factor_q(&up(&[1, 0, -10, 0, 1])).is_irreducible());
    }

    #[test]
    fn multiplicities_and_unit() {
        // -3 (t - 1)^2 (t^2 + 1) (2t + 1)
        let f = up(&[-1, 1]).pow(2).mul(&up(&[1, 0, 1])).mul(&up(&[1, 2])).scale(&rat(-3));
        let fac = univariate_factor_q(&f);
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.factors.len(), 3);
        assert!(fac.factors.iter().any(|(g, m)| *g == up(&[-1, 1]) && *m == 2));
    }

    #[test]
    fn cyclotomic_product() {
        // t^12 - 1
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let fac = univariate_factor_q(&up(&c));
        assert_eq!(fac.factors.len(), 6);
        assert_eq!(fac.expand(), up(&c));
    }
}
