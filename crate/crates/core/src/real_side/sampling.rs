use num_integer::Integer;

use super::split::rational_point;
use crate::exact_arith::{FieldElement, Rational};
use crate::multipoly::{Monomial, TPoly};

/// Limits of the deterministic sign-change search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplingBudget {
    /// Largest numerator and denominator of a coordinate.
    pub height: u64,
    /// Largest number of points evaluated.
    pub max_points: usize,
}

impl Default for SamplingBudget {
    fn default() -> Self {
        SamplingBudget { height: 50, max_points: 20_000 }
    }
}

/// Rationals of height at most `height`: 0, 1, −1, 2, −2, 1/2, −1/2, …
pub fn grid_values(height: u64) -> Vec<Rational> {
    let mut out = vec![Rational::from_integer(0.into())];
    for h in 1..=height as i64 {
        let mut level: Vec<(i64, i64)> = Vec::new();
        for q in 1..=h {
            let ps: Vec<i64> = if q == h { (1..h).collect() } else { vec![h] };
            for p in ps {
                if p.gcd(&q) == 1 {
                    level.push((q, p));
                }
            }
        }
        if h == 1 {
            level.push((1, 1));
        }
        level.sort();
        level.dedup();
        for (q, p) in level {
            out.push(Rational::new(p.into(), q.into()));
            out.push(Rational::new((-p).into(), q.into()));
        }
    }
    out
}

/// A positive and a negative point of `f`, searched on the grid shell by
/// shell; coordinates of variables not in `f` stay 0.
pub fn find_sign_change(f: &TPoly, budget: SamplingBudget) -> Option<(Vec<Rational>, Vec<Rational>)> {
    let t = f.tower();
    if !f.terms().all(|(_, c)| t.coords_are_real(c)) {
        return None;
    }
    let n = f.nvars();
    let used: Vec<usize> = (0..n).filter(|&i| f.involves(i)).collect();
    if used.is_empty() {
        return None;
    }
    let values = grid_values(budget.height);
    let sign_at = |p: &[Rational]| f.evaluate_at(&rational_point(t, p)).and_then(|v| v.sign()).unwrap_or(0);
    let mut pos: Option<Vec<Rational>> = None;
    let mut neg: Option<Vec<Rational>> = None;
    let record = |p: Vec<Rational>, s: i8, pos: &mut Option<Vec<Rational>>, neg: &mut Option<Vec<Rational>>| {
        if s > 0 && pos.is_none() {
            *pos = Some(p);
        } else if s < 0 && neg.is_none() {
            *neg = Some(p);
        }
    };
    let m = used.len();
    let mut count = 0;
    for k in 0..values.len() {
        let mut idx = vec![0usize; m];
        loop {
            if idx.iter().any(|&i| i == k) {
                let mut p = vec![Rational::from_integer(0.into()); n];
                for (j, &v) in used.iter().enumerate() {
                    p[v] = values[idx[j]].clone();
                }
                let s = sign_at(&p);
                count += 1;
                if s != 0 && pos.is_none() && neg.is_none() {
                    let q: Vec<Rational> = p.iter().map(|x| -x).collect();
                    let sq = sign_at(&q);
                    count += 1;
                    record(q, sq, &mut pos, &mut neg);
                }
                record(p, s, &mut pos, &mut neg);
                if let (Some(a), Some(b)) = (&pos, &neg) {
                    return Some((a.clone(), b.clone()));
                }
                if count >= budget.max_points {
                    return None;
                }
            }
            // colex odometer over [0, k]^m
            let mut j = 0;
            loop {
                if j == m {
                    break;
                }
                idx[j] += 1;
                if idx[j] <= k {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j == m {
                break;
            }
        }
    }
    None
}

/// `f = Σ dₖ·ℓₖ² + constant` with `dₖ > 0` and affine `ℓₖ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SosCertificate {
    pub terms: Vec<(FieldElement, TPoly)>,
    pub constant: FieldElement,
}

impl SosCertificate {
    pub fn recheck(&self, f: &TPoly) -> bool {
        let mut acc = f.constant_like(self.constant.coords().to_vec());
        for (d, l) in &self.terms {
            if d.sign().ok() != Some(1) {
                return false;
            }
            match l.try_mul(l).and_then(|sq| acc.try_add(&sq.scale(&d.coords().to_vec()))) {
                Ok(s) => acc = s,
                Err(_) => return false,
            }
        }
        acc == *f
    }

    pub fn to_text(&self) -> String {
        let mut parts: Vec<String> = self.terms.iter().map(|(d, l)| format!("({d})*({l})^2")).collect();
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push(format!("({})", self.constant));
        }
        parts.join(" + ")
    }

    /// Linear forms whose common zeros are the zeros of `f` when the
    /// constant vanishes.
    pub fn forms(&self) -> Vec<TPoly> {
        self.terms.iter().map(|(_, l)| l.clone()).collect()
    }
}

/// Diagonalization of a real quadratic polynomial as a positive combination
/// of squares of affine forms plus a constant. `None` when the quadratic
/// part is not positive semidefinite in the required sense.
pub fn sos_decomposition(f: &TPoly) -> Option<SosCertificate> {
    let t = f.tower();
    if f.total_degree() != Some(2) || !f.terms().all(|(_, c)| t.coords_are_real(c)) {
        return None;
    }
    let n = f.nvars();
    let half = Rational::new(1.into(), 2.into());
    let mut m = vec![vec![FieldElement::zero(t); n + 1]; n + 1];
    for (mono, c) in f.terms() {
        let c = FieldElement::from_coords(t, c.clone());
        let vs: Vec<usize> = mono.0.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat(i).take(e as usize)).collect();
        match vs.as_slice() {
            [] => m[n][n] = c,
            [i] => {
                m[*i][n] = c.scale(&half);
                m[n][*i] = m[*i][n].clone();
            }
            [i, j] if i == j => m[*i][*i] = c,
            [i, j] => {
                m[*i][*j] = c.scale(&half);
                m[*j][*i] = m[*i][*j].clone();
            }
            _ => return None,
        }
    }
    let mut terms = Vec::new();
    for i in 0..n {
        let s = m[i][i].sign().ok()?;
        if s < 0 {
            return None;
        }
        if s == 0 {
            if (i + 1..=n).any(|j| !m[i][j].is_zero()) {
                return None;
            }
            continue;
        }
        let d = m[i][i].clone();
        let dinv = d.inv().ok()?;
        let mut l = f.zero_like();
        for j in i..=n {
            if m[i][j].is_zero() {
                continue;
            }
            let c = m[i][j].mul(&dinv).into_coords();
            let mono = if j == n { Monomial::one(n) } else { Monomial::var(n, j) };
            l.add_term(mono, c);
        }
        let row = m[i].clone();
        for j in i + 1..=n {
            for k in i + 1..=n {
                if !row[j].is_zero() && !row[k].is_zero() {
                    m[j][k] = m[j][k].sub(&row[j].mul(&row[k]).mul(&dinv));
                }
            }
        }
        terms.push((d, l));
    }
    let constant = m[n][n].clone();
    let cert = SosCertificate { terms, constant };
    debug_assert!(cert.recheck(f));
    Some(cert)
}
