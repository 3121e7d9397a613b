//! Conjugate systems, the product set 𝔥, the rational coefficient set 𝔊,
//! Galois completions of polynomials and clustering of roots over an
//! intermediate field.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact_arith::numeric::{complex_roots, CFixed};
use crate::exact_arith::{
    basis_values, fit_value, GaloisGroup, Rational, Tower, DEFAULT_PRECISION_BITS, Q,
};
use crate::groebner::Ideal;
use crate::multipoly::factor::univariate_factor_q;
use crate::multipoly::{normalize, squarefree_part, QPoly, TPoly, UniPoly};

/// Default cap on the number of products in 𝔥.
pub const PRODUCT_CAP: usize = 4096;

/// The σ-images of a generator list, one system per group element.
#[derive(Debug, Clone)]
pub struct ConjugateSystem {
    pub group: GaloisGroup,
    pub base: Vec<TPoly>,
    /// `systems[k]` belongs to `group.elements()[k]`.
    pub systems: Vec<Vec<TPoly>>,
}

impl ConjugateSystem {
    pub fn tower(&self) -> &Tower {
        self.group.field()
    }

    pub fn identity_system(&self) -> &[TPoly] {
        &self.systems[self.group.identity_index()]
    }

    /// Distinct systems, each with the indices of the group elements
    /// producing it, in first-occurrence order.
    pub fn distinct(&self) -> Vec<(Vec<usize>, Vec<TPoly>)> {
        let mut out: Vec<(Vec<usize>, Vec<TPoly>)> = Vec::new();
        for (k, s) in self.systems.iter().enumerate() {
            let key: Vec<TPoly> = s.iter().map(|p| p.monic_lex()).collect();
            match out.iter_mut().find(|(_, t)| t.iter().map(|p| p.monic_lex()).collect::<Vec<_>>() == key) {
                Some((idx, _)) => idx.push(k),
                None => out.push((vec![k], s.clone())),
            }
        }
        out
    }
}

pub fn build_conjugate_system(gens: &[TPoly], group: &GaloisGroup) -> Result<ConjugateSystem> {
    for g in gens {
        if !g.tower().same(group.field()) {
            return Err(Error::FieldMismatch);
        }
    }
    let mut systems = Vec::with_capacity(group.order());
    for s in group.elements() {
        systems.push(gens.iter().map(|g| g.conjugate(s)).collect::<Result<Vec<_>>>()?);
    }
    Ok(ConjugateSystem { group: group.clone(), base: gens.to_vec(), systems })
}

#[derive(Debug, Clone)]
pub struct Products {
    pub products: Vec<TPoly>,
    /// Set when the full enumeration exceeded the cap and only the diagonal
    /// products were formed.
    pub capped: Option<String>,
}

fn dedup_push(v: &mut Vec<TPoly>, p: TPoly) {
    let key = p.monic_lex();
    if !v.iter().any(|q| q.monic_lex() == key) {
        v.push(p);
    }
}

/// All products `∏_σ h_σ` with `h_σ` taken from the σ-system.
pub fn products_h(cs: &ConjugateSystem, cap: usize) -> Result<Products> {
    let r = cs.base.len();
    let Some(first) = cs.base.first() else {
        return Err(Error::Invalid("empty generator list".into()));
    };
    let total = (r as f64).powi(cs.group.order() as i32);
    if total > cap as f64 {
        let mut products = Vec::new();
        for i in 0..r {
            let mut acc = first.one_like();
            for s in &cs.systems {
                acc = acc.try_mul(&s[i])?;
            }
            dedup_push(&mut products, acc);
        }
        return Ok(Products {
            products,
            capped: Some(format!("{r}^{} products exceed the cap {cap}; diagonal only", cs.group.order())),
        });
    }
    let mut partial = vec![first.one_like()];
    for s in &cs.systems {
        let mut next = Vec::new();
        for p in &partial {
            for h in s {
                dedup_push(&mut next, p.try_mul(h)?);
            }
        }
        partial = next;
    }
    Ok(Products { products: partial, capped: None })
}

/// Coefficients of `P_h(t) = ∏_τ (t − h^τ)` below the leading one.
pub fn orbit_polynomial_coefficients(h: &TPoly, group: &GaloisGroup) -> Result<Vec<QPoly>> {
    let d = group.order();
    if let Some(hq) = h.to_rational() {
        // (t − h)^d
        let mut out = Vec::with_capacity(d);
        let mut pw = hq.one_like();
        let mut binom = Rational::one();
        for j in 1..=d {
            pw = &pw * &hq;
            binom = binom * Rational::from_integer(((d - j + 1) as i64).into())
                / Rational::from_integer((j as i64).into());
            let sign = if j % 2 == 1 { -Rational::one() } else { Rational::one() };
            out.push(pw.scale(&(&binom * sign)));
        }
        return Ok(out);
    }
    let mut c: Vec<TPoly> = vec![h.one_like()];
    for s in group.elements() {
        let a = h.conjugate(s)?;
        let mut next = vec![h.zero_like(); c.len() + 1];
        for (k, ck) in c.iter().enumerate() {
            next[k + 1] = next[k + 1].try_add(ck)?;
            next[k] = next[k].try_sub(&ck.try_mul(&a)?)?;
        }
        c = next;
    }
    // c[d − j] is the coefficient of t^(d−j)
    (1..=d)
        .map(|j| c[d - j].to_rational().ok_or_else(|| Error::NotRational(c[d - j].to_text())))
        .collect()
}

/// The set 𝔊 of rational coefficients of the orbit polynomials.
pub fn invariant_coefficients_g(cs: &ConjugateSystem, h: &[TPoly]) -> Result<Vec<QPoly>> {
    let mut out: Vec<QPoly> = Vec::new();
    for p in h {
        for q in orbit_polynomial_coefficients(p, &cs.group)? {
            if !q.is_zero() && !out.contains(&q) {
                out.push(q);
            }
        }
    }
    Ok(out)
}

/// Result of completing the system: 𝔥, 𝔊 and the oracle for `√(𝔊·ℚ[x])`.
#[derive(Debug, Clone)]
pub struct CompletionResult {
    pub h: Products,
    pub g: Vec<QPoly>,
    pub ideal: Ideal<Q>,
}

impl CompletionResult {
    /// Membership in `I_ℚ(T) = √(𝔊·ℚ[x])`.
    pub fn vanishes_on_completion(&self, f: &QPoly) -> Result<bool> {
        self.ideal.radical_contains(f)
    }
}

pub fn complete_system(gens: &[TPoly], group: &GaloisGroup, cap: usize) -> Result<CompletionResult> {
    let cs = build_conjugate_system(gens, group)?;
    let h = products_h(&cs, cap)?;
    let g = invariant_coefficients_g(&cs, &h.products)?;
    let vars = gens[0].vars().clone();
    let ideal = Ideal::new(Q, vars, g.clone())?;
    Ok(CompletionResult { h, g, ideal })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyCompletion {
    pub g_star: QPoly,
    pub g_bullet: QPoly,
}

/// `g* = ∏_σ g^σ` and its square-free part `g•`.
pub fn galois_complete_polynomial(g: &TPoly, group: &GaloisGroup) -> Result<PolyCompletion> {
    if g.is_constant() {
        return Err(Error::Invalid("constant polynomial".into()));
    }
    if !g.tower().same(group.field()) {
        return Err(Error::FieldMismatch);
    }
    let mut acc = g.one_like();
    for s in group.elements() {
        acc = acc.try_mul(&g.conjugate(s)?)?;
    }
    let g_star = acc.to_rational().ok_or_else(|| Error::NotRational(acc.to_text()))?;
    let g_bullet = squarefree_part(&g_star);
    Ok(PolyCompletion { g_star, g_bullet })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroIdeal {
    pub generator: QPoly,
    pub completions: Vec<QPoly>,
    pub notices: Vec<String>,
}

/// Product of the pairwise non-associated completions `gᵢ•`.
pub fn zero_ideal_geometric_hypersurface(factors: &[TPoly], group: &GaloisGroup) -> Result<ZeroIdeal> {
    let first = factors.first().ok_or_else(|| Error::Invalid("no factors".into()))?;
    let mut completions: Vec<QPoly> = Vec::new();
    let mut notices = Vec::new();
    for (k, f) in factors.iter().enumerate() {
        let b = normalize(&galois_complete_polynomial(f, group)?.g_bullet);
        if let Some(j) = completions.iter().position(|c| *c == b) {
            notices.push(format!("completion of factor {} coincides with factor {}; kept once", k + 1, j + 1));
        } else {
            completions.push(b);
        }
    }
    let mut gen = QPoly::one(Q, first.vars().clone());
    for c in &completions {
        gen = &gen * c;
    }
    Ok(ZeroIdeal { generator: normalize(&gen), completions, notices })
}

/// True when every σ-image system generates the same ideal over E.
pub fn g_invariance_check(gens: &[TPoly], group: &GaloisGroup) -> Result<bool> {
    let Some(first) = gens.first() else { return Ok(true) };
    let base = Ideal::new(first.tower().clone(), first.vars().clone(), gens.to_vec())?;
    for s in group.elements() {
        if s.is_identity() {
            continue;
        }
        let img = gens.iter().map(|g| g.conjugate(s)).collect::<Result<Vec<_>>>()?;
        if gens.iter().zip(&img).all(|(a, b)| a == b) {
            continue;
        }
        let other = Ideal::new(first.tower().clone(), first.vars().clone(), img)?;
        if !base.equals(&other)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Grouping of the roots of `f` into monic factors over E.
#[derive(Debug, Clone, PartialEq)]
pub enum Clustering {
    /// Irreducible monic E-factors with multiplicities.
    Complete(Vec<(UniPoly<Tower>, usize)>),
    /// Factors found so far and the unsplit remainder.
    Unknown { found: Vec<(UniPoly<Tower>, usize)>, remainder: Vec<(UniPoly<Tower>, usize)>, note: String },
}

fn to_tower_poly(p: &UniPoly<Q>, e: &Tower) -> UniPoly<Tower> {
    UniPoly::new(e.clone(), p.coeffs().iter().map(|c| e.rational_coords(c)).collect())
}

/// Splits `f` over E by grouping numeric roots into blocks of at most
/// `max_block` roots whose symmetric functions fit exactly into E.
pub fn clustering_over_intermediate(
    f: &UniPoly<Q>,
    e: &Tower,
    max_block: usize,
    degree_budget: usize,
) -> Result<Clustering> {
    let deg = f.degree().ok_or_else(|| Error::Invalid("zero polynomial".into()))?;
    if deg == 0 {
        return Err(Error::Invalid("constant polynomial".into()));
    }
    if deg > degree_budget {
        return Ok(Clustering::Unknown {
            found: vec![],
            remainder: vec![(to_tower_poly(&f.monic(), e), 1)],
            note: format!("degree {deg} above budget {degree_budget}"),
        });
    }
    let prec = DEFAULT_PRECISION_BITS;
    let fac = univariate_factor_q(f);
    let mut found = Vec::new();
    let mut remainder = Vec::new();
    let mut notes = Vec::new();
    let mut basis: Option<Vec<CFixed>> = None;
    for (p, m) in &fac.factors {
        let pm = p.monic();
        let (parts, rest) = split_block(&pm, e, max_block.max(1), prec, &mut basis)?;
        found.extend(parts.into_iter().map(|q| (q, *m)));
        if let Some(r) = rest {
            notes.push(format!(
                "{} of degree {} has no factor over E with at most {max_block} roots",
                r.to_text("t"),
                r.degree().unwrap_or(0)
            ));
            remainder.push((r, *m));
        }
    }
    if notes.is_empty() {
        Ok(Clustering::Complete(found))
    } else {
        Ok(Clustering::Unknown { found, remainder, note: notes.join("; ") })
    }
}

/// Splits a monic ℚ-irreducible `p` into E-factors. The second component is
/// the part that could not be certified irreducible.
#[allow(clippy::type_complexity)]
fn split_block(
    p: &UniPoly<Q>,
    e: &Tower,
    max_block: usize,
    prec: u32,
    basis: &mut Option<Vec<CFixed>>,
) -> Result<(Vec<UniPoly<Tower>>, Option<UniPoly<Tower>>)> {
    let n = p.degree().unwrap();
    let pe = to_tower_poly(p, e);
    if n <= 1 || e.dim() == 1 {
        return Ok((vec![pe], None));
    }
    if basis.is_none() {
        *basis = Some(basis_values(e, prec)?);
    }
    let b = basis.as_ref().unwrap();
    let Some(mut roots) = complex_roots(p, prec) else {
        return Ok((vec![], Some(pe)));
    };
    let mut rest = pe;
    let mut parts = Vec::new();
    let mut k = 1;
    while k <= max_block && 2 * k <= roots.len() {
        let mut hit = None;
        for subset in subsets(roots.len(), k) {
            let block: Vec<CFixed> = subset.iter().map(|&i| roots[i].clone()).collect();
            if let Some(q) = fit_block(&block, e, b, prec) {
                let (quo, r) = rest.divrem(&q);
                if r.is_zero() {
                    hit = Some((subset, q, quo));
                    break;
                }
            }
        }
        match hit {
            Some((subset, q, quo)) => {
                for &i in subset.iter().rev() {
                    roots.remove(i);
                }
                parts.push(q);
                rest = quo;
            }
            None => k += 1,
        }
    }
    match rest.degree() {
        Some(0) | None => Ok((parts, None)),
        // every proper factor would have at most max_block roots
        Some(rd) if rd <= 2 * max_block + 1 => {
            parts.push(rest);
            Ok((parts, None))
        }
        Some(_) => Ok((parts, Some(rest))),
    }
}

/// Monic polynomial with the given numeric roots, if all its coefficients
/// fit into E.
fn fit_block(roots: &[CFixed], e: &Tower, basis: &[CFixed], prec: u32) -> Option<UniPoly<Tower>> {
    // numeric coefficients of ∏ (t − r)
    let mut c = vec![CFixed::from_rational(&Rational::one(), prec)];
    for r in roots {
        let mut next = vec![CFixed::zero(); c.len() + 1];
        for (k, ck) in c.iter().enumerate() {
            next[k + 1] = next[k + 1].add(ck);
            next[k] = next[k].sub(&ck.mul(r, prec));
        }
        c = next;
    }
    let mut coeffs = Vec::with_capacity(c.len());
    for v in &c[..c.len() - 1] {
        let x = fit_value(e, v, basis, prec, |_| true)?;
        coeffs.push(x.into_coords());
    }
    coeffs.push(e.one_coords());
    Some(UniPoly::new(e.clone(), coeffs))
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::xvars;
    use crate::syntax::Session;

    const D4: &str = "field Q(a : a^4 - 2 in [1.18,1.20]; i : i^2 + 1 in [0,0]+[0.9,1.1]i)
auto s10 : a -> i*a
auto s01 : i -> -i
group G = generated(s10, s01)
poly g = x1 + a^2*x2 + a*x3
poly p = x1 + a^2*x2 + x3
";

    fn session(text: &str) -> Session {
        Session::parse(text).unwrap()
    }

    #[test]
    fn d4_completion() {
        let s = session(D4);
        let g = s.poly("g").unwrap().clone();
        let grp = s.group(None).unwrap();
        assert_eq!(grp.order(), 8);
        let c = galois_complete_polynomial(&g, &grp).unwrap();
        assert_eq!(c.g_bullet.to_text(), "x1^4 - 4*x1^2*x2^2 + 8*x1*x2*x3^2 + 4*x2^4 - 2*x3^4");
        assert_eq!(c.g_star, c.g_bullet.pow(2));
        let cs = build_conjugate_system(&[g], &grp).unwrap();
        assert_eq!(cs.distinct().len(), 4);
        assert!(cs.distinct().iter().all(|(idx, _)| idx.len() == 2));
    }

    #[test]
    fn d4_product_completion() {
        let s = session(D4);
        let grp = s.group(None).unwrap();
        let g = s.poly("g").unwrap().clone();
        let p = s.poly("p").unwrap().clone();
        let pc = galois_complete_polynomial(&p, &grp).unwrap();
        assert_eq!(pc.g_bullet.to_text(), "x1^2 + 2*x1*x3 - 2*x2^2 + x3^2");
        assert_eq!(pc.g_star, pc.g_bullet.pow(4));
        let z = zero_ideal_geometric_hypersurface(&[g, p], &grp).unwrap();
        assert_eq!(z.completions.len(), 2);
        assert_eq!(z.generator, normalize(&(&z.completions[0] * &z.completions[1])));
    }

    #[test]
    fn cube_root() {
        let s = session(
            "field Q(c : c^3 - 2 in [1.25,1.26]; s : s^2 + 3 in [0,0]+[1.7,1.8]i)
auto r : c -> (s - 1)/2*c
auto t : s -> -s
group G = generated(r, t)
poly g = x1 - c
",
        );
        let grp = s.group(None).unwrap();
        assert_eq!(grp.order(), 6);
        let c = galois_complete_polynomial(&s.poly("g").unwrap(), &grp).unwrap();
        assert_eq!(c.g_bullet.to_text(), "x1^3 - 2");
        assert_eq!(c.g_star.to_text(), "x1^6 - 4*x1^3 + 4");
    }

    #[test]
    fn orbit_polynomial_of_linear_form() {
        let s = session(
            "field Q(r : r^2 - 2 in [1.41,1.42])
auto s : r -> -r
group G = generated(s)
poly h = x1 - r
",
        );
        let grp = s.group(None).unwrap();
        let q = orbit_polynomial_coefficients(&s.poly("h").unwrap(), &grp).unwrap();
        let t: Vec<String> = q.iter().map(|p| p.to_text()).collect();
        assert_eq!(t, vec!["-2*x1", "x1^2 - 2"]);
        let cs = build_conjugate_system(&[s.poly("h").unwrap().clone()], &grp).unwrap();
        assert!(!g_invariance_check(&cs.base, &grp).unwrap());
        let sq = QPoly::parse("x1^2 - 2", &xvars(1)).unwrap().to_tower(grp.field());
        assert!(g_invariance_check(&[sq], &grp).unwrap());
    }

    #[test]
    fn clustering_nested_root() {
        let e = crate::syntax::parse_field("Q(r : r^2 - 2 in [1.41,1.42])").unwrap();
        let f = crate::syntax::parse_qpoly("(x1^2 - 2)^2 - 2", &xvars(1)).unwrap().to_univariate(0).unwrap();
        let Clustering::Complete(parts) = clustering_over_intermediate(&f, &e, 2, 32).unwrap() else {
            panic!()
        };
        let mut t: Vec<String> = parts.iter().map(|(p, _)| p.to_text("t")).collect();
        t.sort();
        assert_eq!(t, vec!["t^2 + r - 2", "t^2 - r - 2"]);
    }
}
