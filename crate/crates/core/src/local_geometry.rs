//! Local data at algebraic points: maximal ideals, ranks of gradient
//! matrices, tangent spaces, Jacobian regularity, singular loci and
//! differentials of regular maps.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exact_arith::linalg::{kernel, rank, Span};
use crate::exact_arith::{FieldElement, Rational, Tower, Q};
use crate::groebner::{intersect_ideals, Ideal};
use crate::multipoly::{Monomial, QPoly, TPoly, Vars};
use crate::real_side::{linear_rref, real_trace, verify_product, Evidence, Verdict};

/// A point with coordinates in a tower.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicPoint {
    coords: Vec<FieldElement>,
}

impl AlgebraicPoint {
    pub fn new(coords: Vec<FieldElement>) -> Result<Self> {
        let first = coords.first().ok_or_else(|| Error::Shape("point without coordinates".into()))?;
        if coords.iter().any(|c| !c.field().same(first.field())) {
            return Err(Error::FieldMismatch);
        }
        Ok(AlgebraicPoint { coords })
    }

    pub fn rational(t: &Tower, coords: &[Rational]) -> Result<Self> {
        Self::new(coords.iter().map(|q| FieldElement::from_rational(t, q.clone())).collect())
    }

    pub fn tower(&self) -> &Tower {
        self.coords[0].field()
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn lies_on(&self, gens: &[QPoly]) -> Result<bool> {
        for g in gens {
            self.check_ring(g)?;
            if !g.evaluate_at(&self.coords)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_ring(&self, g: &QPoly) -> Result<()> {
        if g.nvars() != self.dim() {
            return Err(Error::Shape(format!("{} variables against a point of length {}", g.nvars(), self.dim())));
        }
        Ok(())
    }
}

impl std::fmt::Display for AlgebraicPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Generators `f₁..f_n` of the maximal ideal of `a` in `ℚ[x]`: `fᵢ` is monic
/// in `xᵢ`, involves only `x₁..xᵢ`, and `fᵢ(a₁..a_{i−1}, t)` is the minimal
/// polynomial of `aᵢ` over `ℚ(a₁..a_{i−1})`.
pub fn point_ideal_generators(a: &AlgebraicPoint, vars: &Vars) -> Result<Vec<QPoly>> {
    let n = a.dim();
    if vars.len() != n {
        return Err(Error::Shape(format!("{} variables for a point of length {n}", vars.len())));
    }
    let t = a.tower();
    let d = t.dim();
    let one = FieldElement::one(t);
    let mut degs: Vec<u32> = Vec::with_capacity(n);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // ℚ-basis a^e of ℚ[a₁..a_{i−1}], e below the previous degrees
        let mut basis: Vec<(Vec<u32>, FieldElement)> = vec![(vec![0; i], one.clone())];
        for (l, &dl) in degs.iter().enumerate() {
            let mut next = Vec::new();
            for (e, v) in &basis {
                let mut p = v.clone();
                for k in 0..dl {
                    let mut e2 = e.clone();
                    e2[l] = k;
                    next.push((e2, p.clone()));
                    p = p.mul(&a.coords[l]);
                }
            }
            basis = next;
        }
        let mut span = Span::new(Q, d);
        let mut labels: Vec<(u32, Vec<u32>)> = Vec::new();
        let ai = &a.coords[i];
        let mut power = one.clone();
        let mut k = 0u32;
        let relation = loop {
            if k > 0 {
                if let Some(c) = span.express(power.coords()) {
                    break c;
                }
            }
            for (e, v) in &basis {
                if span.insert(v.mul(&power).coords()).is_ok() {
                    labels.push((k, e.clone()));
                }
            }
            power = power.mul(ai);
            k += 1;
        };
        let mut f = QPoly::zero(Q, vars.clone());
        let mut lead = vec![0u32; n];
        lead[i] = k;
        f.add_term(Monomial(lead), crate::multipoly::rational_one());
        for (c, (j, e)) in relation.into_iter().zip(labels) {
            let mut m = vec![0u32; n];
            m[..i].copy_from_slice(&e);
            m[i] = j;
            f.add_term(Monomial(m), -c);
        }
        degs.push(k);
        out.push(f);
    }
    Ok(out)
}

/// Gradient rows `∇gᵢ(a)` as tower coordinates.
fn gradient_rows(gens: &[QPoly], a: &AlgebraicPoint) -> Result<Vec<Vec<Vec<Rational>>>> {
    let mut rows = Vec::with_capacity(gens.len());
    for g in gens {
        a.check_ring(g)?;
        let mut row = Vec::with_capacity(a.dim());
        for d in g.gradient() {
            row.push(d.evaluate_at(a.coords())?.into_coords());
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Rank of `(∂gᵢ/∂xⱼ)(a)`; the generators must vanish at `a`.
pub fn rank_at_point(gens: &[QPoly], a: &AlgebraicPoint) -> Result<usize> {
    if !a.lies_on(gens)? {
        return Err(Error::NotOnVariety);
    }
    Ok(rank(a.tower(), &gradient_rows(gens, a)?, a.dim()))
}

/// Kernel basis of the gradient matrix at `a`.
pub fn tangent_space(gens: &[QPoly], a: &AlgebraicPoint) -> Result<Vec<Vec<FieldElement>>> {
    if !a.lies_on(gens)? {
        return Err(Error::NotOnVariety);
    }
    let t = a.tower();
    let basis = kernel(t, &gradient_rows(gens, a)?, a.dim());
    Ok(basis.into_iter().map(|v| v.into_iter().map(|c| FieldElement::from_coords(t, c)).collect()).collect())
}

fn det(m: &[Vec<QPoly>]) -> QPoly {
    let k = m.len();
    let zero = m[0][0].zero_like();
    if k == 1 {
        return m[0][0].clone();
    }
    let mut acc = zero;
    for (j, c) in m[0].iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sub: Vec<Vec<QPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(l, _)| l != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = c * &det(&sub);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
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
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Nonzero `k×k` minors of the Jacobian matrix of `gens`, deduplicated.
pub fn jacobian_minors(gens: &[QPoly], k: usize, vars: &Vars) -> Vec<QPoly> {
    if k == 0 {
        return vec![QPoly::one(Q, vars.clone())];
    }
    let n = vars.len();
    let jac: Vec<Vec<QPoly>> = gens.iter().map(|g| g.gradient()).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for rows in subsets(jac.len(), k) {
        for cols in subsets(n, k) {
            let m: Vec<Vec<QPoly>> = rows.iter().map(|&r| cols.iter().map(|&c| jac[r][c].clone()).collect()).collect();
            let d = det(&m);
            if !d.is_zero() {
                let d = d.monic_lex();
                if seen.insert(d.to_text()) {
                    out.push(d);
                }
            }
        }
    }
    out
}

/// Largest `n − rk_a` over the supplied points, or over all points of the
/// complex zero set when `points` is `None`: the smallest `k` such that the
/// `(k+1)`-minors vanish somewhere on the variety gives `n − k`. −1 for the
/// empty variety.
pub fn embedding_dimension(gens: &[QPoly], vars: &Vars, points: Option<&[AlgebraicPoint]>) -> Result<i64> {
    let n = vars.len();
    match points {
        Some(ps) => {
            let mut best = -1i64;
            for p in ps {
                best = best.max(n as i64 - rank_at_point(gens, p)? as i64);
            }
            Ok(best)
        }
        None => {
            let base = Ideal::new(Q, vars.clone(), gens.to_vec())?;
            if base.is_unit() {
                return Ok(-1);
            }
            for k in 0..=gens.len().min(n) {
                let mut g = gens.to_vec();
                g.extend(jacobian_minors(gens, k + 1, vars));
                if !Ideal::new(Q, vars.clone(), g)?.is_unit() {
                    return Ok(n as i64 - k as i64);
                }
            }
            unreachable!("minors of size above the matrix size are absent")
        }
    }
}

/// Jacobian criterion at `a` for dimension `e`.
///
/// Proven: the candidates have gradient rank `n − e` at `a` and every
/// generator times `h` lies in the radical of the candidates. Refuted: the
/// rank of the whole ideal at `a` is below `n − e` while its Krull dimension
/// is at most `e`, so the tangent space is too large.
pub fn jacobian_regularity_verdict(
    gens: &[QPoly],
    vars: &Vars,
    a: &AlgebraicPoint,
    e: usize,
    candidates: &[QPoly],
    h: &QPoly,
) -> Result<Verdict> {
    let n = vars.len();
    if e > n || candidates.len() != n - e {
        return Err(Error::Invalid(format!("expected {} candidates, got {}", n.saturating_sub(e), candidates.len())));
    }
    a.check_ring(h)?;
    if h.evaluate_at(a.coords())?.is_zero() {
        return Err(Error::Invalid(format!("{h} vanishes at {a}")));
    }
    let ideal = Ideal::new(Q, vars.clone(), gens.to_vec())?;
    for f in candidates {
        if !ideal.contains(f)? {
            return Err(Error::Invalid(format!("candidate {f} is not in the ideal")));
        }
    }
    let t = a.tower();
    let rc = rank_at_point(candidates, a)?;
    let mut cert = vec![Evidence::Rank { point: a.coords().to_vec(), rank: rc }];
    if rc == n - e {
        let cand = Ideal::new(Q, vars.clone(), candidates.to_vec())?;
        let tc: Vec<TPoly> = candidates.iter().map(|p| p.to_tower(t)).collect();
        let mut all = true;
        for g in gens {
            let gh = g * h;
            let holds = cand.radical_contains(&gh)?;
            cert.push(Evidence::RadicalMembership { poly: gh.to_tower(t), ideal: tc.clone(), holds });
            if !holds {
                all = false;
                break;
            }
        }
        if all {
            return Ok(Verdict::proven(cert));
        }
    }
    let r = rank_at_point(gens, a)?;
    let kd = ideal.krull_dimension();
    if r < n - e && kd <= e as i64 {
        return Ok(Verdict::refuted(vec![
            Evidence::Rank { point: a.coords().to_vec(), rank: r },
            Evidence::Note(format!("Krull dimension {kd} <= {e} < {} = tangent dimension", n - r)),
        ]));
    }
    cert.push(Evidence::Note("no local coincidence certificate".into()));
    Ok(Verdict::new(crate::real_side::Outcome::Unknown, cert))
}

/// `(f, ∂f/∂x₁, …, ∂f/∂x_n)`.
pub fn jacobian_ideal(f: &QPoly) -> Result<Ideal<Q>> {
    let mut gens = vec![f.clone()];
    gens.extend(f.gradient().into_iter().filter(|p| !p.is_zero()));
    Ideal::new(Q, f.vars().clone(), gens)
}

/// Singular-locus ideal of a hypersurface `f`, with the geometric verdict
/// it rests on. Refuted verdicts are an error.
pub fn sing_hypersurface(f: &QPoly, budget: crate::real_side::SamplingBudget) -> Result<(Ideal<Q>, Verdict)> {
    let verdict = crate::real_side::k_geometric_verdict(f, None, budget)?;
    if verdict.is_refuted() {
        return Err(Error::Invalid(format!("{f} is not geometric")));
    }
    Ok((jacobian_ideal(f)?, verdict))
}

/// `I + (all (n−d)×(n−d) minors)` for a prime `I` of dimension `d`.
pub fn sing_irreducible(gens: &[QPoly], vars: &Vars, d: i64) -> Result<Ideal<Q>> {
    let n = vars.len() as i64;
    let mut all = gens.to_vec();
    if d >= 0 && d <= n {
        all.extend(jacobian_minors(gens, (n - d) as usize, vars));
    }
    Ideal::new(Q, vars.clone(), all)
}

/// Pieces of a singular locus of a union of components and their union.
#[derive(Debug, Clone)]
pub struct SingUnion {
    pub pieces: Vec<Ideal<Q>>,
    pub union: Ideal<Q>,
}

/// Singular locus of `⋃ Z(Iⱼ)`: singular loci of the top-dimensional
/// components, their pairwise intersections, and all lower-dimensional
/// components.
pub fn sing_reducible(components: &[(Vec<QPoly>, i64)], vars: &Vars) -> Result<SingUnion> {
    let top = components.iter().map(|c| c.1).max().unwrap_or(-1);
    let ideal = |g: &[QPoly]| Ideal::new(Q, vars.clone(), g.to_vec());
    let mut pieces = Vec::new();
    let tops: Vec<&Vec<QPoly>> = components.iter().filter(|c| c.1 == top).map(|c| &c.0).collect();
    for (gens, d) in components {
        if *d == top {
            pieces.push(sing_irreducible(gens, vars, *d)?);
        } else {
            pieces.push(ideal(gens)?);
        }
    }
    for (j, a) in tops.iter().enumerate() {
        for b in &tops[j + 1..] {
            pieces.push(ideal(a)?.sum(&ideal(b)?)?);
        }
    }
    pieces.retain(|p| !p.is_unit());
    let mut union = Ideal::unit(Q, vars.clone());
    for p in &pieces {
        union = intersect_ideals(&union, p)?;
    }
    Ok(SingUnion { pieces, union })
}

/// Singular locus of a product of distinct hyperplanes.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrangementSing {
    /// Pairwise intersections of the hyperplanes, in echelon form.
    pub lines: Vec<Vec<TPoly>>,
    /// Maximal real parts of the lines, in echelon form.
    pub real_pieces: Vec<Vec<TPoly>>,
}

fn linear_contains(system: &[TPoly], p: &TPoly) -> Result<bool> {
    let first = &system[0];
    Ideal::new(first.tower().clone(), first.vars().clone(), system.to_vec())?.contains(p)
}

/// For `g = u·∏ ℓⱼ` with pairwise non-proportional linear `ℓⱼ`, the zero
/// set of the Jacobian ideal of `g` is the union of the `Z(ℓⱼ, ℓₖ)`. The
/// product and the vanishing of every Jacobian generator on every line are
/// checked exactly; the real pieces are the real traces of the lines.
pub fn arrangement_sing(g: &QPoly, planes: &[TPoly]) -> Result<ArrangementSing> {
    verify_product(g, planes)?;
    let mut lines: Vec<Vec<TPoly>> = Vec::new();
    for (j, a) in planes.iter().enumerate() {
        if a.total_degree() != Some(1) {
            return Err(Error::Invalid(format!("{a} is not linear")));
        }
        for b in &planes[j + 1..] {
            let Some(l) = linear_rref(&[a.clone(), b.clone()])? else { continue };
            if l.len() < 2 {
                return Err(Error::Invalid(format!("{a} and {b} are proportional")));
            }
            if !lines.contains(&l) {
                lines.push(l);
            }
        }
    }
    let t = planes[0].tower();
    let jac: Vec<TPoly> = jacobian_ideal(g)?.gens().iter().map(|p| p.to_tower(t)).collect();
    for l in &lines {
        for p in &jac {
            if !linear_contains(l, p)? {
                return Err(Error::Invalid(format!("{p} does not vanish on {l:?}")));
            }
        }
    }
    let mut traces: Vec<Vec<TPoly>> = Vec::new();
    for l in &lines {
        let tr: Vec<TPoly> = l.iter().flat_map(real_trace).collect();
        if let Some(s) = linear_rref(&tr)? {
            if !traces.contains(&s) {
                traces.push(s);
            }
        }
    }
    let mut real_pieces = Vec::new();
    for (j, s) in traces.iter().enumerate() {
        let mut covered = false;
        for (k, o) in traces.iter().enumerate() {
            if k != j && o.len() < s.len() && o.iter().map(|p| linear_contains(s, p)).collect::<Result<Vec<_>>>()?.iter().all(|&b| b) {
                covered = true;
            }
        }
        if !covered {
            real_pieces.push(s.clone());
        }
    }
    Ok(ArrangementSing { lines, real_pieces })
}

/// Differential of a regular map at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct Differential {
    pub image: Vec<FieldElement>,
    /// Row `i` is `∇(pᵢ/q)(a)`.
    pub matrix: Vec<Vec<FieldElement>>,
    /// Proven when every coordinate of `a` lies in `ℚ[f(a)]`.
    pub well_defined: Verdict,
}

impl Differential {
    pub fn apply(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(v).fold(FieldElement::zero(v[0].field()), |acc, (r, x)| acc.add(&r.mul(x))))
            .collect()
    }
}

/// ℚ-span of the ring `ℚ[b₁..b_m]` inside the tower.
fn subring_span(t: &Tower, b: &[FieldElement]) -> Span<Q> {
    let mut span = Span::new(Q, t.dim());
    let one = FieldElement::one(t);
    let _ = span.insert(one.coords());
    let mut frontier = vec![one];
    while let Some(x) = frontier.pop() {
        for y in b {
            let z = x.mul(y);
            if span.insert(z.coords()).is_ok() {
                frontier.push(z);
            }
        }
    }
    span
}

/// `J_a(f)` for `f = (p₁..p_m)/q` from `X = Z(x_gens)` to `Y = Z(y_gens)`.
pub fn differential(
    ps: &[QPoly],
    q: &QPoly,
    x_gens: &[QPoly],
    y_gens: &[QPoly],
    a: &AlgebraicPoint,
) -> Result<Differential> {
    let t = a.tower();
    let qa = q.evaluate_at(a.coords())?;
    if qa.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if !a.lies_on(x_gens)? {
        return Err(Error::NotOnVariety);
    }
    let qinv = qa.inv()?;
    let grad_q: Vec<FieldElement> = q.gradient().iter().map(|d| d.evaluate_at(a.coords())).collect::<Result<_>>()?;
    let mut image = Vec::with_capacity(ps.len());
    let mut matrix = Vec::with_capacity(ps.len());
    for p in ps {
        a.check_ring(p)?;
        let pa = p.evaluate_at(a.coords())?;
        let row = p
            .gradient()
            .iter()
            .zip(&grad_q)
            .map(|(d, dq)| Ok(qa.mul(&d.evaluate_at(a.coords())?).sub(&pa.mul(dq)).mul(&qinv).mul(&qinv)))
            .collect::<Result<Vec<_>>>()?;
        image.push(pa.mul(&qinv));
        matrix.push(row);
    }
    let b = AlgebraicPoint::new(image.clone())?;
    if !b.lies_on(y_gens)? {
        return Err(Error::Invalid(format!("image {b} is not on the target")));
    }
    let span = subring_span(t, &image);
    let outside: Vec<usize> = (0..a.dim()).filter(|&k| span.express(a.coords()[k].coords()).is_none()).collect();
    let d = Differential { image, matrix, well_defined: Verdict::proven(vec![]) };
    if let Some(&k) = outside.first() {
        let note = format!("x{} = {} is not in Q[f(a)]", k + 1, a.coords()[k]);
        return Ok(Differential { well_defined: Verdict::refuted(vec![Evidence::Note(note)]), ..d });
    }
    if !y_gens.is_empty() {
        let rows = gradient_rows(y_gens, &b)?;
        for v in tangent_space(x_gens, a)? {
            let w = d.apply(&v);
            for row in &rows {
                let s = row
                    .iter()
                    .zip(&w)
                    .fold(FieldElement::zero(t), |acc, (r, x)| acc.add(&FieldElement::from_coords(t, r.clone()).mul(x)));
                if !s.is_zero() {
                    return Err(Error::Invalid("differential leaves the target tangent space".into()));
                }
            }
        }
    }
    let note = Evidence::Note("every coordinate of a lies in Q[f(a)]".into());
    Ok(Differential { well_defined: Verdict::proven(vec![note]), ..d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::TowerField;
    use crate::groebner::radical_equal;
    use crate::multipoly::xvars;
    use crate::syntax::{parse_element, parse_field};

    fn q(s: &str, n: usize) -> QPoly {
        QPoly::parse(s, &xvars(n)).unwrap()
    }

    fn qi(gens: &[&str], n: usize) -> Ideal<Q> {
        Ideal::new(Q, xvars(n), gens.iter().map(|s| q(s, n)).collect()).unwrap()
    }

    fn pt(t: &Tower, cs: &[&str]) -> AlgebraicPoint {
        AlgebraicPoint::new(cs.iter().map(|c| parse_element(c, t).unwrap()).collect()).unwrap()
    }

    fn quartic() -> Tower {
        parse_field("Q(a : a^4 - 2 in [1.18,1.20])").unwrap()
    }

    fn cubic() -> Tower {
        parse_field("Q(c : c^3 - 2 in [1.25,1.26])").unwrap()
    }

    fn texts(ps: &[QPoly]) -> Vec<String> {
        ps.iter().map(|p| p.to_text()).collect()
    }

    #[test]
    fn point_ideals() {
        let t = quartic();
        assert_eq!(texts(&point_ideal_generators(&pt(&t, &["a^2"]), &xvars(1)).unwrap()), ["x1^2 - 2"]);
        let g = point_ideal_generators(&pt(&t, &["a^2", "a"]), &xvars(2)).unwrap();
        assert_eq!(texts(&g), ["x1^2 - 2", "-x1 + x2^2"]);
        let g = point_ideal_generators(&pt(&t, &["0", "0", "0"]), &xvars(3)).unwrap();
        assert_eq!(texts(&g), ["x1", "x2", "x3"]);
        let g = point_ideal_generators(&pt(&t, &["a", "a^2 + 1"]), &xvars(2)).unwrap();
        assert_eq!(texts(&g), ["x1^4 - 2", "-x1^2 + x2 - 1"]);
    }

    #[test]
    fn ranks_and_tangents() {
        let c = cubic();
        let f = [q("x1^3 - 2*x2^3", 2)];
        assert_eq!(rank_at_point(&f, &pt(&c, &["0", "0"])).unwrap(), 0);
        assert_eq!(rank_at_point(&f, &pt(&c, &["c", "1"])).unwrap(), 1);
        assert_eq!(rank_at_point(&f, &pt(&c, &["1", "1"])), Err(Error::NotOnVariety));
        let lin = [q("x1", 3), q("x2", 3), q("x3", 3)];
        assert_eq!(rank_at_point(&lin, &pt(&c, &["0", "0", "0"])).unwrap(), 3);
        assert!(tangent_space(&lin, &pt(&c, &["0", "0", "0"])).unwrap().is_empty());

        let t = quartic();
        let v = tangent_space(&[q("x1 - x2^2", 2)], &pt(&t, &["a^2", "a"])).unwrap();
        assert_eq!(v, vec![vec![parse_element("2*a", &t).unwrap(), FieldElement::one(&t)]]);
        assert_eq!(tangent_space(&[], &pt(&t, &["a", "1"])).unwrap().len(), 2);
    }

    #[test]
    fn embedding_dimensions() {
        let c = cubic();
        let f = [q("x1^3 - 2*x2^3", 2)];
        let pts = [pt(&c, &["0", "0"]), pt(&c, &["c", "1"])];
        assert_eq!(embedding_dimension(&f, &xvars(2), Some(&pts)).unwrap(), 2);
        assert_eq!(embedding_dimension(&f, &xvars(2), None).unwrap(), 2);
        assert_eq!(embedding_dimension(&[q("x1", 3)], &xvars(3), None).unwrap(), 2);
        assert_eq!(embedding_dimension(&[], &xvars(3), None).unwrap(), 3);
        assert_eq!(embedding_dimension(&[q("1", 2)], &xvars(2), None).unwrap(), -1);
    }

    #[test]
    fn jacobian_verdicts() {
        let t = TowerField::rationals();
        let one = q("1", 3);
        let g = [q("x2^2 - x3*x1^2", 3)];
        let v = jacobian_regularity_verdict(&g, &xvars(3), &pt(&t, &["1", "1", "1"]), 2, &g, &one).unwrap();
        assert!(v.is_proven(), "{}", v.to_text());

        let c = cubic();
        let f = [q("x1^3 - 2*x2^3", 2)];
        let v = jacobian_regularity_verdict(&f, &xvars(2), &pt(&c, &["0", "0"]), 1, &f, &q("1", 2)).unwrap();
        assert!(v.is_refuted(), "{}", v.to_text());
        let v = jacobian_regularity_verdict(&f, &xvars(2), &pt(&c, &["c", "1"]), 1, &f, &q("1", 2)).unwrap();
        assert!(v.is_proven(), "{}", v.to_text());

        let v = jacobian_regularity_verdict(&[], &xvars(2), &pt(&t, &["0", "0"]), 2, &[], &q("1", 2)).unwrap();
        assert!(v.is_proven());
        assert!(jacobian_regularity_verdict(&f, &xvars(2), &pt(&c, &["0", "0"]), 1, &[], &q("1", 2)).is_err());
    }

    #[test]
    fn singular_loci() {
        let b = crate::real_side::SamplingBudget::default();
        let cases = [
            ("x1^3 - 2*x2^3", vec!["x1", "x2"], 2),
            ("(x1^2 - x2^2)^3 + 2*x3^6", vec!["x1^2 - x2^2", "x3"], 3),
            ("x2^2 - x3*x1^2", vec!["x1", "x2"], 3),
        ];
        for (f, expected, n) in cases {
            let (j, v) = sing_hypersurface(&q(f, n), b).unwrap();
            assert!(v.is_proven(), "{f}: {}", v.to_text());
            assert!(radical_equal(&j, &qi(&expected, n)).unwrap(), "{f}");
        }
        let f = [q("x1^3 - 2*x2^3", 2)];
        let s = sing_irreducible(&f, &xvars(2), 1).unwrap();
        assert!(radical_equal(&s, &jacobian_ideal(&f[0]).unwrap()).unwrap());
        assert!(sing_irreducible(&[q("x1", 3), q("x2", 3)], &xvars(3), 1).unwrap().is_unit());
        assert!(sing_irreducible(&[q("x2 - x1^2", 3), q("x3 - x1^3", 3)], &xvars(3), 1).unwrap().is_unit());
    }

    #[test]
    fn reducible_union() {
        let vars = xvars(3);
        let comps = vec![(vec![q("x3", 3)], 2), (vec![q("x1", 3)], 2), (vec![q("x2 - 1", 3), q("x3 - 1", 3)], 1)];
        let s = sing_reducible(&comps, &vars).unwrap();
        let expected = intersect_ideals(&qi(&["x1", "x3"], 3), &qi(&["x2 - 1", "x3 - 1"], 3)).unwrap();
        assert!(radical_equal(&s.union, &expected).unwrap());
        let single = sing_reducible(&[(vec![q("x1^3 - 2*x2^3", 3)], 2)], &vars).unwrap();
        assert!(radical_equal(&single.union, &qi(&["x1", "x2"], 3)).unwrap());
    }

    #[test]
    fn arrangements() {
        let t = parse_field("Q(a : a^4 - 2 in [1.18,1.20]; i : i^2 + 1 in [0,0]+[0.9,1.1]i)").unwrap();
        let vars = xvars(3);
        let tp = |s: &str| TPoly::parse(s, &vars, &t).unwrap();
        let sys = |gs: &[&str]| linear_rref(&gs.iter().map(|s| tp(s)).collect::<Vec<_>>()).unwrap().unwrap();
        let g_planes: Vec<TPoly> =
            ["x1 + a^2*x2 + a*x3", "x1 + a^2*x2 - a*x3", "x1 - a^2*x2 + i*a*x3", "x1 - a^2*x2 - i*a*x3"]
                .iter()
                .map(|s| tp(s))
                .collect();
        let g = q("x1^4 - 4*x1^2*x2^2 + 8*x1*x2*x3^2 + 4*x2^4 - 2*x3^4", 3);
        let s = arrangement_sing(&g, &g_planes).unwrap();
        assert_eq!(s.lines.len(), 6);
        let mut expected = vec![sys(&["x1 - a^2*x2", "x3"]), sys(&["x1 + a^2*x2", "x3"])];
        let mut got = s.real_pieces.clone();
        expected.sort_by_key(|l| format!("{l:?}"));
        got.sort_by_key(|l| format!("{l:?}"));
        assert_eq!(got, expected);

        let mut planes = g_planes.clone();
        planes.push(tp("x1 + a^2*x2 + x3"));
        planes.push(tp("x1 - a^2*x2 + x3"));
        let p = q("x1^2 + 2*x1*x3 - 2*x2^2 + x3^2", 3);
        let s = arrangement_sing(&(&g * &p), &planes).unwrap();
        assert_eq!(s.real_pieces.len(), 5);
        assert!(arrangement_sing(&p, &g_planes).is_err());
    }

    #[test]
    fn differentials() {
        let t = quartic();
        let x = [q("x1 - x2^2", 2)];
        let one = q("1", 2);
        let d = differential(&[q("x1", 2)], &one, &x, &[], &pt(&t, &["a^2", "a"])).unwrap();
        assert!(d.well_defined.is_refuted());

        let r = TowerField::rationals();
        let d = differential(&[q("x1", 2)], &one, &x, &[], &pt(&r, &["1", "1"])).unwrap();
        assert!(d.well_defined.is_proven());
        let v = [FieldElement::from_int(&r, 2), FieldElement::one(&r)];
        assert_eq!(d.apply(&v), vec![FieldElement::from_int(&r, 2)]);

        let d = differential(&[q("x1", 2), q("x2", 2)], &one, &x, &x, &pt(&t, &["a^2", "a"])).unwrap();
        assert!(d.well_defined.is_proven());
        assert_eq!(d.matrix[0][0], FieldElement::one(&t));
        assert!(d.matrix[0][1].is_zero());
    }
}
