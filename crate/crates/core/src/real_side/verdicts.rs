use super::linear::{linear_rref, real_dim_linear};
use super::points::rational_zeros;
use super::sampling::{find_sign_change, sos_decomposition, SamplingBudget};
use super::split::{rational_point, real_trace};
use super::{real_roots_tower, Evidence, Outcome, Verdict};
use crate::error::{Error, Result};
use crate::exact_arith::{FieldElement, TowerField};
use crate::galois_completion::ConjugateSystem;
use crate::groebner::Ideal;
use crate::multipoly::factor::univariate_factor_q;
use crate::multipoly::kronecker::{
    irreducible_by_specialization, small_multivariate_factor_q, SmallFactor, SMALL_DEGREE_BUDGET,
};
use crate::multipoly::{mv_gcd, normalize, squarefree_part, QPoly, TPoly};

/// Real dimension of a zero set, with its certificate.
#[derive(Debug, Clone, PartialEq)]
pub enum RealDim {
    Exact { dim: i64, evidence: Evidence },
    Unknown(String),
}

fn is_real(p: &TPoly) -> bool {
    let t = p.tower();
    p.terms().all(|(_, c)| t.coords_are_real(c))
}

fn linear_trace(source: Vec<TPoly>, n: usize) -> Result<RealDim> {
    let gens: Vec<TPoly> = source.iter().filter(|p| !p.is_zero()).cloned().collect();
    let (system, dim) = match linear_rref(&gens)? {
        Some(s) => {
            let d = real_dim_linear(&s, n)?;
            (s, d)
        }
        None => (vec![source[0].one_like()], -1),
    };
    Ok(RealDim::Exact { dim, evidence: Evidence::LinearTrace { source, system, dim } })
}

/// Exact real dimension of `Z_R(h)` for a real non-constant `h`, when one
/// of the certified cases applies: linear forms, one-variable polynomials
/// (Sturm), quadrics diagonalized as sums of squares, or a sign change.
pub fn real_dimension_of_factor(h: &TPoly, budget: SamplingBudget) -> Result<RealDim> {
    if !is_real(h) {
        return Err(Error::NonReal);
    }
    if h.is_constant() {
        return Err(Error::Invalid(format!("constant factor {h}")));
    }
    let n = h.nvars();
    if h.total_degree() == Some(1) {
        return linear_trace(vec![h.clone()], n);
    }
    let used: Vec<usize> = (0..n).filter(|&i| h.involves(i)).collect();
    if used.len() == 1 {
        let count = real_roots_tower(&h.to_univariate(used[0]).unwrap());
        if count == 0 {
            return Ok(RealDim::Exact {
                dim: -1,
                evidence: Evidence::RealRoots { factor: h.clone(), var: used[0], count },
            });
        }
        if let Some((p, q)) = find_sign_change(h, budget) {
            return Ok(RealDim::Exact {
                dim: n as i64 - 1,
                evidence: Evidence::SignChange { factor: h.clone(), positive: p, negative: q },
            });
        }
        return Ok(RealDim::Exact {
            dim: n as i64 - 1,
            evidence: Evidence::RealRoots { factor: h.clone(), var: used[0], count },
        });
    }
    if h.total_degree() == Some(2) {
        for g in [h.clone(), h.neg()] {
            let Some(cert) = sos_decomposition(&g) else { continue };
            let dim = match cert.constant.sign()? {
                1 => -1,
                0 => real_dim_linear(&cert.forms(), n)?,
                _ => break,
            };
            return Ok(RealDim::Exact { dim, evidence: Evidence::SumOfSquares { factor: g, cert } });
        }
    }
    match find_sign_change(h, budget) {
        Some((p, q)) => Ok(RealDim::Exact {
            dim: n as i64 - 1,
            evidence: Evidence::SignChange { factor: h.clone(), positive: p, negative: q },
        }),
        None => Ok(RealDim::Unknown(format!(
            "no sign change of {h} on the grid of height {} within {} points",
            budget.height, budget.max_points
        ))),
    }
}

/// Exact real dimension of the common real zeros of a real system when it
/// is linear, contains a nonzero constant, or is a single polynomial.
pub fn real_dimension_of_system(system: &[TPoly], n: usize, budget: SamplingBudget) -> Result<RealDim> {
    let gens: Vec<TPoly> = system.iter().filter(|p| !p.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Ok(RealDim::Exact { dim: n as i64, evidence: Evidence::Note("zero system".into()) });
    }
    if gens.iter().any(|p| !is_real(p)) {
        return Err(Error::NonReal);
    }
    if gens.iter().all(|p| p.total_degree().unwrap_or(0) <= 1) || gens.iter().any(|p| p.is_constant()) {
        if gens.iter().any(|p| p.is_constant()) {
            let one = gens[0].one_like();
            return Ok(RealDim::Exact {
                dim: -1,
                evidence: Evidence::LinearTrace { source: gens, system: vec![one], dim: -1 },
            });
        }
        return linear_trace(gens, n);
    }
    if gens.len() == 1 {
        return real_dimension_of_factor(&gens[0], budget);
    }
    Ok(RealDim::Unknown(format!("nonlinear system of {} polynomials", gens.len())))
}

fn repeated_factor(f: &QPoly) -> Option<QPoly> {
    if f.is_constant() {
        return None;
    }
    let s = squarefree_part(f);
    if s == normalize(f) {
        return None;
    }
    let q = f.divexact(&s).ok()?;
    Some(mv_gcd(&q, &s))
}

/// Certified irreducible factors over ℚ of a square-free `f`, when the
/// univariate, small bivariate or specialization routes apply.
pub fn factor_over_q(f: &QPoly) -> Option<Vec<QPoly>> {
    let used: Vec<usize> = (0..f.nvars()).filter(|&i| f.involves(i)).collect();
    match used.len() {
        0 => Some(vec![]),
        1 => {
            let fac = univariate_factor_q(&f.to_univariate(used[0]).unwrap());
            if !fac.complete {
                return None;
            }
            Some(fac.factors.iter().map(|(p, _)| QPoly::from_univariate(p, f.vars().clone(), used[0])).collect())
        }
        k => {
            if k == 2 && f.total_degree().unwrap_or(0) <= SMALL_DEGREE_BUDGET {
                if let SmallFactor::Factored(fac) = small_multivariate_factor_q(f, SMALL_DEGREE_BUDGET) {
                    return Some(fac.factors.into_iter().map(|(p, _)| p).collect());
                }
            }
            irreducible_by_specialization(f, SMALL_DEGREE_BUDGET).then(|| vec![normalize(f)])
        }
    }
}

fn combine(n: usize, results: Vec<RealDim>) -> Verdict {
    let expected = n as i64 - 1;
    let mut refuting = Vec::new();
    let mut proving = Vec::new();
    let mut unknown = Vec::new();
    for r in results {
        match r {
            RealDim::Exact { dim, evidence } if dim < expected => refuting.push(evidence),
            RealDim::Exact { evidence, .. } => proving.push(evidence),
            RealDim::Unknown(s) => unknown.push(Evidence::Budget(s)),
        }
    }
    if !refuting.is_empty() {
        Verdict::refuted(refuting)
    } else if !unknown.is_empty() {
        unknown.extend(proving);
        Verdict::new(Outcome::Unknown, unknown)
    } else {
        Verdict::proven(proving)
    }
}

/// K-geometric test for `f` over ℚ: square-free and every irreducible
/// factor has a real zero set of dimension `n − 1`.
pub fn k_geometric_verdict(f: &QPoly, factors: Option<&[QPoly]>, budget: SamplingBudget) -> Result<Verdict> {
    let n = f.nvars();
    if f.is_constant() {
        return Ok(Verdict::proven(vec![Evidence::Note(format!("constant polynomial {f}"))]));
    }
    if let Some(r) = repeated_factor(f) {
        return Ok(Verdict::refuted(vec![Evidence::Repeated { poly: f.clone(), factor: r }]));
    }
    let factors = match factors {
        Some(fs) => {
            let q = TowerField::rationals();
            verify_product(f, &fs.iter().map(|p| p.to_tower(&q)).collect::<Vec<_>>())?;
            fs.to_vec()
        }
        None => match factor_over_q(f) {
            Some(fs) => fs,
            None => {
                return Ok(Verdict::unknown(format!("no certified factorization of {f} over Q")));
            }
        },
    };
    let q = TowerField::rationals();
    let mut results = Vec::with_capacity(factors.len());
    for p in &factors {
        results.push(real_dimension_of_factor(&p.to_tower(&q), budget)?);
    }
    Ok(combine(n, results))
}

/// Checks `∏ factors = u·f` for a nonzero constant `u` of the tower.
pub fn verify_product(f: &QPoly, factors: &[TPoly]) -> Result<()> {
    let Some(first) = factors.first() else {
        return if f.is_constant() && !f.is_zero() {
            Ok(())
        } else {
            Err(Error::Invalid("empty factorization".into()))
        };
    };
    let t = first.tower();
    let mut prod = first.one_like();
    for h in factors {
        if h.is_constant() {
            return Err(Error::Invalid(format!("constant factor {h}")));
        }
        prod = prod.try_mul(h)?;
    }
    let ft = f.to_tower(t);
    if !prod.same_ring(&ft) {
        return Err(Error::RingMismatch);
    }
    let (Some((_, a)), Some((_, b))) = (prod.lex_leading(), ft.lex_leading()) else {
        return Err(Error::Invalid("zero polynomial".into()));
    };
    let u = FieldElement::from_coords(t, a.clone()).div(&FieldElement::from_coords(t, b.clone()))?;
    if prod != ft.scale(&u.into_coords()) {
        return Err(Error::Invalid(format!("product of the factors is not a multiple of {f}")));
    }
    Ok(())
}

/// Real factors of a factorization over the tower, with non-real factors
/// replaced by the real traces of conjugate pairs (each pair once).
fn real_pieces(factors: &[TPoly]) -> Result<Vec<(Vec<TPoly>, bool)>> {
    let mut out = Vec::new();
    let mut used = vec![false; factors.len()];
    for (k, h) in factors.iter().enumerate() {
        if used[k] {
            continue;
        }
        used[k] = true;
        if is_real(h) {
            out.push((vec![h.clone()], true));
            continue;
        }
        let c = h.conjugate(&h.tower().complex_conjugation()?)?.monic_lex();
        if c == h.monic_lex() {
            // a non-real multiple of a real polynomial
            out.push((real_trace(h), false));
            continue;
        }
        let j = (0..factors.len())
            .find(|&j| !used[j] && factors[j].monic_lex() == c)
            .ok_or_else(|| Error::Invalid(format!("factor {h} has no complex conjugate in the factorization")))?;
        used[j] = true;
        out.push((real_trace(h), false));
    }
    Ok(out)
}

/// K-reliable test from a factorization over the real part of the tower:
/// every factor, and every conjugate pair `a² + b²`, must have a real zero
/// set of dimension `n − 1`.
pub fn k_reliable_verdict(f: &QPoly, factors: &[TPoly], budget: SamplingBudget) -> Result<Verdict> {
    let n = f.nvars();
    if let Some(r) = repeated_factor(f) {
        return Ok(Verdict::refuted(vec![Evidence::Repeated { poly: f.clone(), factor: r }]));
    }
    verify_product(f, factors)?;
    let mut results = Vec::new();
    for (sys, single) in real_pieces(factors)? {
        results.push(if single {
            real_dimension_of_factor(&sys[0], budget)?
        } else {
            real_dimension_of_system(&sys, n, budget)?
        });
    }
    Ok(combine(n, results))
}

/// Bad set of a K-geometric irreducible `f`: the real zero sets of factors
/// (or conjugate pairs) of dimension below `n − 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BadSet {
    /// Each component as a system of real generators.
    pub components: Vec<Vec<TPoly>>,
    /// Proven when every piece was decided.
    pub verdict: Verdict,
    pub geometric: Verdict,
}

pub fn bad_set(f: &QPoly, factors: &[TPoly], budget: SamplingBudget) -> Result<BadSet> {
    let n = f.nvars();
    let geometric = k_geometric_verdict(f, None, budget)?;
    if geometric.is_refuted() {
        return Err(Error::Invalid(format!("{f} is not K-geometric")));
    }
    verify_product(f, factors)?;
    let mut components: Vec<Vec<TPoly>> = Vec::new();
    let mut evidence = Vec::new();
    let mut complete = true;
    for (sys, single) in real_pieces(factors)? {
        let r = if single {
            real_dimension_of_factor(&sys[0], budget)?
        } else {
            real_dimension_of_system(&sys, n, budget)?
        };
        match r {
            RealDim::Exact { dim, evidence: e } => {
                if dim >= 0 && dim < n as i64 - 1 {
                    let comp = match &e {
                        Evidence::LinearTrace { system, .. } => system.clone(),
                        Evidence::SumOfSquares { cert, .. } => linear_rref(&cert.forms())?.unwrap_or_default(),
                        _ => sys.clone(),
                    };
                    if !components.contains(&comp) {
                        components.push(comp);
                    }
                }
                evidence.push(e);
            }
            RealDim::Unknown(s) => {
                complete = false;
                evidence.push(Evidence::Budget(s));
            }
        }
    }
    if !geometric.is_proven() {
        complete = false;
        evidence.push(Evidence::Note("K-geometricity not certified".into()));
    }
    let verdict = Verdict::new(if complete { Outcome::Proven } else { Outcome::Unknown }, evidence);
    Ok(BadSet { components, verdict, geometric })
}

/// Defined-over-K test: for every σ, the real dimension of `Z^σ ∩ Rⁿ`
/// equals the complex dimension of `Z^σ`.
pub fn defined_over_k_verdict(cs: &ConjugateSystem, budget: SamplingBudget) -> Result<Verdict> {
    let Some(first) = cs.base.first() else {
        return Err(Error::Invalid("empty system".into()));
    };
    let n = first.nvars();
    let names = cs.group.names();
    let mut proving = Vec::new();
    let mut refuting = Vec::new();
    let mut unknown = Vec::new();
    for (idx, sys) in cs.distinct() {
        let label = idx.iter().map(|&k| names[k].clone()).collect::<Vec<_>>().join(",");
        let ideal = Ideal::new(first.tower().clone(), first.vars().clone(), sys.clone())?;
        let cdim = ideal.krull_dimension();
        let trace: Vec<TPoly> = sys.iter().flat_map(real_trace).collect();
        let cev = Evidence::ComplexDimension { label: format!("Z^{{{label}}}"), dim: cdim };
        match real_dimension_of_system(&trace, n, budget)? {
            RealDim::Exact { dim, evidence } if dim < cdim => {
                refuting.push(cev);
                refuting.push(evidence);
            }
            RealDim::Exact { evidence, .. } => {
                proving.push(cev);
                proving.push(evidence);
            }
            RealDim::Unknown(s) => {
                unknown.push(cev);
                unknown.push(Evidence::Budget(s));
            }
        }
    }
    Ok(if !refuting.is_empty() {
        Verdict::refuted(refuting)
    } else if !unknown.is_empty() {
        Verdict::new(Outcome::Unknown, unknown)
    } else {
        Verdict::proven(proving)
    })
}

/// Rational zeros of the base system up to `height` must annihilate every
/// conjugate system.
pub fn rational_points_in_conjugates(cs: &ConjugateSystem, height: u64, max_nodes: usize) -> Result<Verdict> {
    let (points, complete) = rational_zeros(&cs.base, height, max_nodes);
    let t = cs.tower();
    let distinct = cs.distinct();
    for p in &points {
        let pt = rational_point(t, p);
        for (_, sys) in &distinct {
            for g in sys {
                if !g.evaluate_at(&pt)?.is_zero() {
                    return Ok(Verdict::refuted(vec![Evidence::Note(format!(
                        "rational zero ({}) of the base system is not a zero of {g}",
                        p.iter().map(crate::exact_arith::fmt_rational).collect::<Vec<_>>().join(", ")
                    ))]));
                }
            }
        }
    }
    let note = Evidence::Note(format!(
        "{} rational zeros of height at most {height} lie on all {} conjugate systems",
        points.len(),
        distinct.len()
    ));
    Ok(if complete {
        Verdict::proven(vec![note])
    } else {
        Verdict::new(Outcome::Unknown, vec![Evidence::Budget(format!("search stopped after {max_nodes} substitutions")), note])
    })
}
