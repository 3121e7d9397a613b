//! Small bivariate factorization by Kronecker substitution, and checking of
//! supplied multivariate factorizations.

use num_traits::{One, Zero};

use super::factor::univariate_factor_q;
use super::gcd::normalize;
use super::{Monomial, QPoly, UniPoly};
use crate::exact_arith::{Rational, Q};

/// Default total-degree budget of the small-case factorizer.
pub const SMALL_DEGREE_BUDGET: u32 = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct MvFactorization {
    pub unit: Rational,
    pub factors: Vec<(QPoly, usize)>,
}

impl MvFactorization {
    pub fn expand(&self, template: &QPoly) -> QPoly {
        let mut acc = template.constant_like(self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m as u32);
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SmallFactor {
    Factored(MvFactorization),
    Unknown(String),
}

/// Exact factorization over ℚ for at most two variables and total degree
/// within `budget`.
pub fn small_multivariate_factor_q(f: &QPoly, budget: u32) -> SmallFactor {
    if f.is_zero() {
        return SmallFactor::Unknown("zero polynomial".into());
    }
    let used: Vec<usize> = (0..f.nvars()).filter(|&i| f.involves(i)).collect();
    let deg = f.total_degree().unwrap_or(0);
    if used.len() > 2 || deg > budget {
        return SmallFactor::Unknown(format!(
            "outside budget: {} variables, total degree {} (limit 2 variables, degree {})",
            used.len(),
            deg,
            budget
        ));
    }
    let mut rest = f.clone();
    let mut factors: Vec<(QPoly, usize)> = Vec::new();
    while !rest.is_constant() {
        let g = match used.len() {
            1 => {
                let u = rest.to_univariate(used[0]).unwrap();
                let fac = univariate_factor_q(&u);
                QPoly::from_univariate(&fac.factors[0].0, f.vars().clone(), used[0])
            }
            _ => match smallest_factor(&rest, used[0], used[1]) {
                Some(g) => g,
                None => return SmallFactor::Unknown("recombination failed".into()),
            },
        };
        let g = normalize(&g);
        let mut m = 0;
        while let Ok(q) = rest.divexact(&g) {
            rest = q;
            m += 1;
        }
        factors.push((g, m));
    }
    factors.sort_by(|a, b| {
        (a.0.total_degree(), a.0.to_text()).cmp(&(b.0.total_degree(), b.0.to_text()))
    });
    let mut unit = rest.constant_term();
    if unit.is_zero() {
        unit = Rational::one();
    }
    SmallFactor::Factored(MvFactorization { unit, factors })
}

/// An irreducible factor of `f` in variables `u, v`, found as the divisor
/// of least Kronecker image.
fn smallest_factor(f: &QPoly, u: usize, v: usize) -> Option<QPoly> {
    if !f.involves(v) || !f.involves(u) {
        let w = if f.involves(u) { u } else { v };
        let fac = univariate_factor_q(&f.to_univariate(w)?);
        return Some(QPoly::from_univariate(&fac.factors[0].0, f.vars().clone(), w));
    }
    // a monomial factor
    for w in [u, v] {
        if f.terms().all(|(m, _)| m.0[w] > 0) {
            return Some(f.var_like(w));
        }
    }
    let b = f.degree_in(u) + 1;
    let mut img = vec![Rational::zero(); (f.degree_in(u) + b * f.degree_in(v)) as usize + 1];
    for (m, c) in f.terms() {
        img[(m.0[u] + b * m.0[v]) as usize] = c.clone();
    }
    let fac = univariate_factor_q(&UniPoly::new(Q, img));
    let mut pieces: Vec<UniPoly<Q>> = Vec::new();
    for (g, m) in &fac.factors {
        for _ in 0..*m {
            pieces.push(g.clone());
        }
    }
    let n = pieces.len();
    for size in 1..=n {
        for subset in subsets(n, size) {
            let mut prod = UniPoly::constant(Q, Rational::one());
            for &i in &subset {
                prod = prod.mul(&pieces[i]);
            }
            let cand = invert_kronecker(&prod, f, u, v, b);
            if cand.is_constant() {
                continue;
            }
            if f.divexact(&cand).is_ok() {
                return Some(cand);
            }
        }
    }
    None
}

fn invert_kronecker(p: &UniPoly<Q>, f: &QPoly, u: usize, v: usize, b: u32) -> QPoly {
    let mut r = f.zero_like();
    for (k, c) in p.coeffs().iter().enumerate() {
        let mut e = vec![0u32; f.nvars()];
        e[u] = k as u32 % b;
        e[v] = k as u32 / b;
        r.add_term(Monomial(e), c.clone());
    }
    r
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducibility over ℚ certified by a substitution of constants for all
/// but two variables that keeps the total degree and leaves an irreducible
/// polynomial: a factorization `f = g·h` would specialize to one with
/// factors of the same degrees.
pub fn irreducible_by_specialization(f: &QPoly, budget: u32) -> bool {
    let Some(deg) = f.total_degree() else { return false };
    if deg == 0 || deg > budget {
        return false;
    }
    if deg == 1 {
        return true;
    }
    let used: Vec<usize> = (0..f.nvars()).filter(|&i| f.involves(i)).collect();
    if used.len() <= 2 {
        return is_certified_irreducible(f, budget);
    }
    const VALUES: [i64; 7] = [1, 2, -1, 3, -2, 5, 7];
    for a in 0..used.len() {
        for b in a + 1..used.len() {
            for shift in 0..VALUES.len() {
                let mut g = f.clone();
                for (k, &v) in used.iter().enumerate() {
                    if k != a && k != b {
                        let c = Rational::from_integer(VALUES[(shift + k) % VALUES.len()].into());
                        g = g.substitute(v, &c);
                    }
                }
                if g.total_degree() == Some(deg) && is_certified_irreducible(&g, budget) {
                    return true;
                }
            }
        }
    }
    false
}

fn is_certified_irreducible(g: &QPoly, budget: u32) -> bool {
    let used: Vec<usize> = (0..g.nvars()).filter(|&i| g.involves(i)).collect();
    if used.len() == 1 {
        return univariate_factor_q(&g.to_univariate(used[0]).unwrap()).is_irreducible();
    }
    match small_multivariate_factor_q(g, budget) {
        SmallFactor::Factored(fac) => fac.factors.len() == 1 && fac.factors[0].1 == 1,
        SmallFactor::Unknown(_) => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    Certified,
    Assumed,
    Reducible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactorCheck {
    pub accepted: bool,
    pub reason: Option<String>,
    pub irreducibility: Vec<Irreducibility>,
}

/// Accepts a claimed factorization when the product reconstructs `f`, every
/// factor is non-constant and no two factors differ by a scalar.
pub fn verify_factorization(f: &QPoly, claim: &MvFactorization) -> FactorCheck {
    let reject = |r: String| FactorCheck { accepted: false, reason: Some(r), irreducibility: vec![] };
    for (g, m) in &claim.factors {
        if !g.same_ring(f) {
            return reject("factor in a different ring".into());
        }
        if g.is_constant() {
            return reject(format!("constant factor {g}"));
        }
        if *m == 0 {
            return reject(format!("zero multiplicity for {g}"));
        }
    }
    for (i, (a, _)) in claim.factors.iter().enumerate() {
        for (b, _) in &claim.factors[i + 1..] {
            if normalize(a) == normalize(b) {
                return reject(format!("associated factors {a} and {b}"));
            }
        }
    }
    let prod = claim.expand(f);
    if prod != *f {
        return reject(format!("product mismatch: {} - ({}) != 0", prod, f));
    }
    let irreducibility = claim.factors.iter().map(|(g, _)| certify_irreducible(g)).collect();
    FactorCheck { accepted: true, reason: None, irreducibility }
}

fn certify_irreducible(g: &QPoly) -> Irreducibility {
    if g.total_degree() == Some(1) {
        return Irreducibility::Certified;
    }
    let used: Vec<usize> = (0..g.nvars()).filter(|&i| g.involves(i)).collect();
    if used.len() == 1 {
        let fac = univariate_factor_q(&g.to_univariate(used[0]).unwrap());
        return if fac.is_irreducible() { Irreducibility::Certified } else { Irreducibility::Reducible };
    }
    match small_multivariate_factor_q(g, SMALL_DEGREE_BUDGET) {
        SmallFactor::Factored(fac) => {
            if fac.factors.len() == 1 && fac.factors[0].1 == 1 {
                Irreducibility::Certified
            } else {
                Irreducibility::Reducible
            }
        }
        SmallFactor::Unknown(_) if irreducible_by_specialization(g, SMALL_DEGREE_BUDGET) => Irreducibility::Certified,
        SmallFactor::Unknown(_) => Irreducibility::Assumed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::xvars;

    fn p(s: &str) -> QPoly {
        QPoly::parse(s, &xvars(3)).unwrap()
    }

    #[test]
    fn difference_of_squares_splits() {
        let SmallFactor::Factored(f) = small_multivariate_factor_q(&p("x1^2 - x2^2"), 6) else {
            panic!()
        };
        let texts: Vec<String> = f.factors.iter().map(|(g, _)| g.to_text()).collect();
        assert_eq!(texts, vec!["x1 + x2", "x1 - x2"]);
    }

    #[test]
    fn irrational_lines_stay_together() {
        let SmallFactor::Factored(f) = small_multivariate_factor_q(&p("x1^2 - 2*x2^2"), 6) else {
            panic!()
        };
        assert_eq!(f.factors.len(), 1);
    }

    #[test]
    fn cubic_with_definite_quadratic() {
        let SmallFactor::Factored(f) = small_multivariate_factor_q(&p("x1^3 - 8*x2^3"), 6) else {
            panic!()
        };
        let texts: Vec<String> = f.factors.iter().map(|(g, _)| g.to_text()).collect();
        assert_eq!(texts, vec!["x1 - 2*x2", "x1^2 + 2*x1*x2 + 4*x2^2"]);
    }

    #[test]
    fn budget_exceeded() {
        let f = p("x1^8 + x2*x3 + 1");
        assert!(matches!(small_multivariate_factor_q(&f, 6), SmallFactor::Unknown(_)));
    }

    #[test]
    fn verify_rejects_wrong_product() {
        let f = p("x1^2 - x2^2");
        let bad = MvFactorization { unit: Rational::one(), factors: vec![(p("x1 - x2"), 2)] };
        assert!(!verify_factorization(&f, &bad).accepted);
        let good = MvFactorization {
            unit: Rational::one(),
            factors: vec![(p("x1 - x2"), 1), (p("x1 + x2"), 1)],
        };
        let c = verify_factorization(&f, &good);
        assert!(c.accepted);
        assert_eq!(c.irreducibility, vec![Irreducibility::Certified; 2]);
    }
}
