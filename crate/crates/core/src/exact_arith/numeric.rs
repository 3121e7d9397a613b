//! Fixed-point complex numerics used to propose candidates that are then
//! verified exactly.

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{Field, Rational, Q};
use super::interval::Interval;
use crate::multipoly::UniPoly;

/// Complex number `(re + i·im) / 2^prec`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFixed {
    pub re: BigInt,
    pub im: BigInt,
}

pub fn round_shift(x: &BigInt, bits: u32) -> BigInt {
    if bits == 0 {
        return x.clone();
    }
    let half = BigInt::one() << (bits - 1);
    (x + half) >> bits
}

pub fn rational_to_fixed(q: &Rational, prec: u32) -> BigInt {
    let num = q.numer() << prec;
    let den = q.denom();
    let (d, r) = num.div_mod_floor(den);
    if (r << 1) >= *den {
        d + 1
    } else {
        d
    }
}

pub fn interval_mid_fixed(iv: &Interval, prec: u32) -> BigInt {
    rational_to_fixed(&iv.mid(), prec)
}

impl CFixed {
    pub fn zero() -> Self {
        CFixed { re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        CFixed { re: rational_to_fixed(q, prec), im: BigInt::zero() }
    }

    pub fn from_f64(z: Complex64, prec: u32) -> Self {
        let conv = |x: f64| -> BigInt {
            let (m, e, s) = num_traits::float::FloatCore::integer_decode(x);
            let m = BigInt::from(m) * if s < 0 { -1 } else { 1 };
            let shift = e as i64 + prec as i64;
            if shift >= 0 {
                m << shift as usize
            } else {
                m >> (-shift) as usize
            }
        };
        CFixed { re: conv(z.re), im: conv(z.im) }
    }

    pub fn to_f64(&self, prec: u32) -> Complex64 {
        let scale = |x: &BigInt| -> f64 {
            let bits = x.bits() as i64;
            let drop = (bits - 60).max(0);
            let top = (x >> drop as usize).to_f64().unwrap_or(0.0);
            top * 2f64.powi((drop - prec as i64) as i32)
        };
        Complex64::new(scale(&self.re), scale(&self.im))
    }

    pub fn add(&self, o: &CFixed) -> CFixed {
        CFixed { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &CFixed) -> CFixed {
        CFixed { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &CFixed, prec: u32) -> CFixed {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        CFixed { re: round_shift(&re, prec), im: round_shift(&im, prec) }
    }

    pub fn div(&self, o: &CFixed, prec: u32) -> Option<CFixed> {
        let den = &o.re * &o.re + &o.im * &o.im;
        if den.is_zero() {
            return None;
        }
        let re = (&self.re * &o.re + &self.im * &o.im) << prec;
        let im = (&self.im * &o.re - &self.re * &o.im) << prec;
        Some(CFixed { re: re.div_floor(&den), im: im.div_floor(&den) })
    }

    /// `max(|re|, |im|)` in units of `2^-prec`.
    pub fn norm_inf(&self) -> BigInt {
        self.re.abs().max(self.im.abs())
    }
}

fn horner(cs: &[CFixed], z: &CFixed, prec: u32) -> CFixed {
    let mut acc = CFixed::zero();
    for c in cs.iter().rev() {
        acc = acc.mul(z, prec).add(c);
    }
    acc
}

/// Initial approximations of all complex roots by Aberth iteration.
fn aberth(cs: &[f64]) -> Option<Vec<Complex64>> {
    let n = cs.len() - 1;
    let lead = cs[n];
    let monic: Vec<f64> = cs.iter().map(|c| c / lead).collect();
    let bound = 1.0 + monic[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(bound * 0.7, th)
        })
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                return None;
            }
            z[i] -= w;
            moved = moved.max(w.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    Some(z)
}

/// High-precision approximations of the roots of a square-free polynomial
/// over ℚ, with `prec` fractional bits. `None` when the iteration does not
/// separate the roots.
pub fn complex_roots(p: &UniPoly<Q>, prec: u32) -> Option<Vec<CFixed>> {
    let n = p.degree()?;
    if n == 0 {
        return Some(vec![]);
    }
    let cs = p.coeffs();
    let cf: Vec<f64> = cs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
    if cf.iter().any(|c| !c.is_finite()) {
        return None;
    }
    let init = if n == 1 {
        vec![Complex64::new(-cf[0] / cf[1], 0.0)]
    } else {
        aberth(&cf)?
    };
    let work = prec + 32;
    let fc: Vec<CFixed> = cs.iter().map(|c| CFixed::from_rational(c, work)).collect();
    let dc: Vec<CFixed> = cs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| CFixed::from_rational(&(c * Rational::from_integer(k.into())), work))
        .collect();
    let tol = BigInt::one() << 8;
    let mut out = Vec::with_capacity(n);
    for z0 in init {
        let mut z = CFixed::from_f64(z0, work);
        let mut ok = false;
        for _ in 0..200 {
            let fz = horner(&fc, &z, work);
            let dz = horner(&dc, &z, work);
            let step = fz.div(&dz, work)?;
            z = z.sub(&step);
            if step.norm_inf() <= tol {
                ok = true;
                break;
            }
        }
        if !ok {
            return None;
        }
        out.push(CFixed { re: round_shift(&z.re, 32), im: round_shift(&z.im, 32) });
    }
    let sep = BigInt::one() << (prec / 2);
    for i in 0..n {
        for j in 0..i {
            if out[i].sub(&out[j]).norm_inf() < sep {
                return None;
            }
        }
    }
    Some(out)
}

/// Integral LLL reduction (δ = 3/4) of linearly independent rows.
pub fn lll(basis: &mut [Vec<BigInt>]) {
    let n = basis.len();
    if n < 2 {
        return;
    }
    let dot = |a: &[BigInt], b: &[BigInt]| -> BigInt { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let mut d: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    let mut lam: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    d[0] = BigInt::one();
    d[1] = dot(&basis[0], &basis[0]);
    let mut k = 1usize;
    let mut kmax = 0usize;

    fn red(basis: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize) {
        let two = BigInt::from(2);
        if (&lam[k][l] * &two).abs() > d[l + 1] {
            let num = &lam[k][l] * &two + &d[l + 1];
            let q = num.div_floor(&(&d[l + 1] * &two));
            let bl = basis[l].clone();
            for (x, y) in basis[k].iter_mut().zip(&bl) {
                *x -= &q * y;
            }
            lam[k][l] -= &q * &d[l + 1];
            for i in 0..l {
                let t = &q * &lam[l][i];
                lam[k][i] -= t;
            }
        }
    }

    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&basis[k], &basis[j]);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    d[k + 1] = u;
                }
            }
        }
        loop {
            red(basis, &mut lam, &d, k, k - 1);
            let lhs = BigInt::from(4) * &d[k + 1] * &d[k - 1];
            let rhs = BigInt::from(3) * &d[k] * &d[k] - BigInt::from(4) * &lam[k][k - 1] * &lam[k][k - 1];
            if lhs < rhs {
                basis.swap(k, k - 1);
                for j in 0..k - 1 {
                    let t = lam[k][j].clone();
                    lam[k][j] = lam[k - 1][j].clone();
                    lam[k - 1][j] = t;
                }
                let l = lam[k][k - 1].clone();
                let b = (&d[k - 1] * &d[k + 1] + &l * &l) / &d[k];
                for i in k + 1..=kmax {
                    let t = lam[i][k].clone();
                    lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &l * &t) / &d[k];
                    lam[i][k - 1] = (&b * &t + &l * &lam[i][k]) / &d[k + 1];
                }
                d[k] = b;
                if k > 1 {
                    k -= 1;
                }
            } else {
                for l in (0..k - 1).rev() {
                    red(basis, &mut lam, &d, k, l);
                }
                k += 1;
                break;
            }
        }
    }
}

/// Candidate rational vectors `c` with `value ≈ Σ c_j basis_j`, ordered by
/// the LLL output. Callers must verify candidates exactly.
pub fn integer_relation_candidates(value: &CFixed, basis: &[CFixed], prec: u32) -> Vec<Vec<Rational>> {
    let m = basis.len();
    let shift = prec.saturating_sub(24);
    let scale = |x: &BigInt| round_shift(x, prec - shift);
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(m + 1);
    let all: Vec<&CFixed> = std::iter::once(value).chain(basis.iter()).collect();
    for (i, z) in all.iter().enumerate() {
        let mut row = vec![BigInt::zero(); m + 1];
        row[i] = BigInt::one();
        row.push(scale(&z.re));
        row.push(scale(&z.im));
        rows.push(row);
    }
    lll(&mut rows);
    let mut out = Vec::new();
    for row in rows.iter() {
        let a0 = &row[0];
        if a0.is_zero() {
            continue;
        }
        let c: Vec<Rational> = (1..=m)
            .map(|j| Rational::new(-row[j].clone(), a0.clone()))
            .collect();
        out.push(c);
    }
    out
}

pub fn sign_of(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Evaluates `p` at a rational point using ℚ arithmetic.
pub fn eval_q(p: &UniPoly<Q>, x: &Rational) -> Rational {
    let mut acc = Q.zero();
    for c in p.coeffs().iter().rev() {
        acc = acc * x + c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::field::rat;

    #[test]
    fn roots_of_quartic() {
        let p = UniPoly::new(Q, vec![rat(-2), rat(0), rat(0), rat(0), rat(1)]);
        let r = complex_roots(&p, 200).unwrap();
        assert_eq!(r.len(), 4);
        for z in &r {
            let f = z.to_f64(200);
            let w = f.powu(4);
            assert!((w.re - 2.0).abs() < 1e-9 && w.im.abs() < 1e-9);
        }
    }

    #[test]
    fn lll_finds_relation_for_sqrt2() {
        let prec = 200;
        let s = CFixed::from_f64(Complex64::new(2f64.sqrt(), 0.0), prec);
        let _ = s;
        let mut rows = vec![
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1000)],
            vec![BigInt::from(0), BigInt::from(1), BigInt::from(1414)],
        ];
        lll(&mut rows);
        let n0: BigInt = rows[0].iter().map(|x| x * x).sum();
        assert!(n0 <= BigInt::from(1000 * 1000 + 1));
    }
}
