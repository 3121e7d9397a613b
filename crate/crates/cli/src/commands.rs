use serde_json::{json, Value};
use subalg_core::exact_arith::Tower;
use subalg_core::galois_completion::{
    build_conjugate_system, clustering_over_intermediate, complete_system as complete, galois_complete_polynomial,
    zero_ideal_geometric_hypersurface, Clustering, PRODUCT_CAP,
};
use subalg_core::groebner::{radical_equal, radical_membership, Ideal};
use subalg_core::local_geometry::{
    point_ideal_generators, rank_at_point, sing_hypersurface, sing_irreducible, tangent_space, AlgebraicPoint,
};
use subalg_core::multipoly::{QPoly, TPoly, UniPoly};
use subalg_core::projection::{
    apex_avoidance, biregular_samples_verdict, find_generic_projection, generic_project, projective_closure,
    ProjectionSpec,
};
use subalg_core::real_side::{
    bad_set, defined_over_k_verdict, k_geometric_verdict, k_reliable_verdict, real_galois_completion,
    underlying_real_structure, Evidence, SamplingBudget,
};
use subalg_core::syntax::{fmt_matrix, rational_or_err, Session};
use subalg_core::{Error, Result, Q};

use crate::report::Report;

fn texts<T: ToString>(ps: &[T]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn bracket(ps: &[String]) -> String {
    format!("[{}]", ps.join(", "))
}

fn opt<T: std::str::FromStr>(s: &Session, key: &str, default: T) -> Result<T> {
    match s.option(key) {
        Some(v) => v.parse().map_err(|_| Error::Parse(format!("option {key}: bad value '{v}'"))),
        None => Ok(default),
    }
}

fn budget(s: &Session) -> Result<SamplingBudget> {
    let d = SamplingBudget::default();
    Ok(SamplingBudget { height: opt(s, "height", d.height)?, max_points: opt(s, "max_points", d.max_points)? })
}

/// Named polynomials, or every declared polynomial when `names` is empty.
fn polys(s: &Session, names: &[String]) -> Result<Vec<TPoly>> {
    if names.is_empty() {
        return Ok(s.polys.iter().map(|(_, p)| p.clone()).collect());
    }
    names.iter().map(|n| s.poly(n).cloned()).collect()
}

fn rational_polys(s: &Session, names: &[String]) -> Result<Vec<QPoly>> {
    polys(s, names)?.iter().map(rational_or_err).filter(|p| !matches!(p, Ok(q) if q.is_zero())).collect()
}

fn parse_list(s: &Session, text: &str) -> Result<Vec<QPoly>> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    inner.split(',').map(|p| QPoly::parse(p.trim(), &s.vars)).collect()
}

fn point(s: &Session, name: &str) -> Result<AlgebraicPoint> {
    AlgebraicPoint::new(s.point(name)?.to_vec())
}

pub fn complete_poly(s: &Session, name: &str) -> Result<Report> {
    let g = s.poly(name)?;
    let c = galois_complete_polynomial(g, &s.group(None)?)?;
    let mut r = Report::default();
    r.line(format!("g* = {}", c.g_star));
    r.line(format!("g• = {}", c.g_bullet));
    r.put("g_star", json!(c.g_star.to_text()));
    r.put("g_bullet", json!(c.g_bullet.to_text()));
    Ok(r)
}

pub fn complete_system(s: &Session, names: &[String]) -> Result<Report> {
    let gens = polys(s, names)?;
    let c = complete(&gens, &s.group(None)?, opt(s, "cap", PRODUCT_CAP)?)?;
    let mut r = Report::default();
    r.line(format!("h: {} products", c.h.products.len()));
    if let Some(note) = &c.h.capped {
        r.line(format!("capped: {note}"));
    }
    for g in &c.g {
        r.line(format!("G: {g}"));
    }
    r.put("h_count", json!(c.h.products.len()));
    r.put("h", json!(texts(&c.h.products)));
    r.put("capped", json!(c.h.capped));
    r.put("G", json!(texts(&c.g)));
    Ok(r)
}

pub fn zero_ideal(s: &Session, names: &[String]) -> Result<Report> {
    let z = zero_ideal_geometric_hypersurface(&polys(s, names)?, &s.group(None)?)?;
    let mut r = Report::default();
    r.line(format!("generator: {}", z.generator));
    for c in &z.completions {
        r.line(format!("completion: {c}"));
    }
    for n in &z.notices {
        r.line(format!("notice: {n}"));
    }
    r.put("generator", json!(z.generator.to_text()));
    r.put("completions", json!(texts(&z.completions)));
    r.put("notices", json!(z.notices));
    Ok(r)
}

/// A rational polynomial and tower factors of it: the supplied factors, the
/// distinct conjugates of a non-rational polynomial (with its completion),
/// or the polynomial itself.
fn with_factors(s: &Session, name: &str, factor_names: &[String]) -> Result<(QPoly, Vec<TPoly>, Option<String>)> {
    let p = s.poly(name)?;
    if let Some(q) = p.to_rational() {
        if factor_names.is_empty() {
            let note = format!("{q} taken as irreducible over the real closure");
            return Ok((q, vec![p.clone()], Some(note)));
        }
        return Ok((q, polys(s, factor_names)?, None));
    }
    let group = s.group(None)?;
    let q = galois_complete_polynomial(p, &group)?.g_bullet;
    let cs = build_conjugate_system(std::slice::from_ref(p), &group)?;
    let factors = cs.distinct().into_iter().map(|(_, sys)| sys[0].clone()).collect();
    Ok((q, factors, None))
}

pub fn classify(s: &Session, name: &str, factor_names: &[String]) -> Result<Report> {
    let b = budget(s)?;
    let (f, factors, note) = with_factors(s, name, factor_names)?;
    let mut r = Report::default();
    r.line(format!("f = {f}"));
    r.line(format!("factors: {}", bracket(&texts(&factors))));
    r.put("f", json!(f.to_text()));
    r.put("factors", json!(texts(&factors)));
    r.verdict("geometric", k_geometric_verdict(&f, None, b)?);
    let mut reliable = k_reliable_verdict(&f, &factors, b)?;
    if let Some(n) = note {
        reliable.certificate.push(Evidence::Note(n));
    }
    r.verdict("reliable", reliable);
    Ok(r)
}

pub fn badset(s: &Session, name: &str, factor_names: &[String]) -> Result<Report> {
    let (f, factors, _) = with_factors(s, name, factor_names)?;
    let bs = bad_set(&f, &factors, budget(s)?)?;
    let mut r = Report::default();
    r.line(format!("f = {f}"));
    let comps: Vec<String> = bs.components.iter().map(|c| bracket(&texts(c))).collect();
    for c in &comps {
        r.line(format!("component: {c}"));
    }
    if comps.is_empty() {
        r.line("bad set: empty");
    }
    r.put("f", json!(f.to_text()));
    r.put("components", json!(bs.components.iter().map(|c| texts(c)).collect::<Vec<_>>()));
    r.verdict("geometric", bs.geometric);
    r.verdict("bad set", bs.verdict);
    Ok(r)
}

pub fn defined_over_q(s: &Session, names: &[String]) -> Result<Report> {
    let cs = build_conjugate_system(&polys(s, names)?, &s.group(None)?)?;
    let mut r = Report::default();
    r.verdict("defined over Q", defined_over_k_verdict(&cs, budget(s)?)?);
    Ok(r)
}

fn compare(r: &mut Report, s: &Session, ideal: &Ideal<Q>, against: Option<&str>) -> Result<()> {
    let Some(text) = against else { return Ok(()) };
    let other = Ideal::new(Q, s.vars.clone(), parse_list(s, text)?)?;
    let eq = radical_equal(ideal, &other)?;
    let shown = bracket(&texts(other.gens()));
    r.line(format!("radical-equal to {shown}: {}", if eq { "yes" } else { "no" }));
    r.put("against", json!(texts(other.gens())));
    r.put("radical_equal", json!(eq));
    Ok(())
}

pub fn sing(s: &Session, name: &str, against: Option<&str>) -> Result<Report> {
    let f = rational_or_err(s.poly(name)?)?;
    let (ideal, verdict) = sing_hypersurface(&f, budget(s)?)?;
    let mut r = Report::default();
    r.line(format!("jacobian ideal: {}", bracket(&texts(ideal.gens()))));
    r.put("ideal", json!(texts(ideal.gens())));
    compare(&mut r, s, &ideal, against)?;
    r.verdict("geometric", verdict);
    Ok(r)
}

pub fn sing_system(s: &Session, names: &[String], dim: Option<i64>, against: Option<&str>) -> Result<Report> {
    let gens = rational_polys(s, names)?;
    let d = match dim {
        Some(d) => d,
        None => Ideal::new(Q, s.vars.clone(), gens.clone())?.krull_dimension(),
    };
    let ideal = sing_irreducible(&gens, &s.vars, d)?;
    let mut r = Report::default();
    r.line(format!("dimension: {d}"));
    r.line(format!("singular ideal: {}", bracket(&texts(ideal.gens()))));
    r.line(format!("empty: {}", if ideal.is_unit() { "yes" } else { "no" }));
    r.put("dimension", json!(d));
    r.put("ideal", json!(texts(ideal.gens())));
    r.put("empty", json!(ideal.is_unit()));
    compare(&mut r, s, &ideal, against)?;
    Ok(r)
}

pub fn tangent(s: &Session, names: &[String], at: &str) -> Result<Report> {
    let gens = rational_polys(s, names)?;
    let a = point(s, at)?;
    let rank = rank_at_point(&gens, &a)?;
    let basis = tangent_space(&gens, &a)?;
    let ideal = point_ideal_generators(&a, &s.vars)?;
    let vecs: Vec<String> = basis.iter().map(|v| format!("({})", texts(v).join(", "))).collect();
    let mut r = Report::default();
    r.line(format!("point: {a}"));
    r.line(format!("maximal ideal: {}", bracket(&texts(&ideal))));
    r.line(format!("rank: {rank}"));
    r.line(format!("tangent space: {}", bracket(&vecs)));
    r.put("point", json!(a.to_string()));
    r.put("maximal_ideal", json!(texts(&ideal)));
    r.put("rank", json!(rank));
    r.put("tangent_space", json!(vecs));
    Ok(r)
}

pub fn dim(s: &Session, names: &[String]) -> Result<Report> {
    let gens = polys(s, names)?;
    let d = match gens.iter().map(|p| p.to_rational()).collect::<Option<Vec<QPoly>>>() {
        Some(qs) => Ideal::new(Q, s.vars.clone(), qs)?.krull_dimension(),
        None => Ideal::new(s.tower.clone(), s.vars.clone(), gens)?.krull_dimension(),
    };
    let mut r = Report::default();
    r.line(d.to_string());
    r.put("dimension", json!(d));
    Ok(r)
}

pub fn project(
    s: &Session,
    names: &[String],
    matrix: Option<&str>,
    target: Option<usize>,
    seed: u64,
    samples: &[String],
) -> Result<Report> {
    let gens = rational_polys(s, names)?;
    let ideal = Ideal::new(Q, s.vars.clone(), gens.clone())?;
    let n = s.vars.len();
    let mut r = Report::default();
    let spec = match (matrix, target) {
        (Some(m), _) => {
            let a = s.matrix(m)?.to_vec();
            ProjectionSpec::new(n, a.len(), a)?
        }
        (None, Some(t)) => {
            let attempts = opt(s, "attempts", 50usize)?;
            let (spec, k) = find_generic_projection(&ideal, t, seed, opt(s, "matrix_height", 5i64)?, attempts)?;
            r.line(format!("draws: {k}"));
            r.put("draws", json!(k));
            spec
        }
        (None, None) => return Err(Error::Invalid("give --matrix or --r".into())),
    };
    let apex = apex_avoidance(&projective_closure(&ideal), &spec)?;
    let image = generic_project(&ideal, &spec)?;
    let pullback = pullback_ok(&image, &spec, &ideal)?;
    r.line(format!("A = {}", fmt_matrix(&spec.a)));
    r.line(format!("apex avoided: {}", if apex { "yes" } else { "no" }));
    r.line(format!("image: {}", bracket(&texts(image.gens()))));
    r.line(format!("dimension: {} -> {}", ideal.krull_dimension(), image.krull_dimension()));
    r.line(format!("pullback in radical: {}", if pullback { "yes" } else { "no" }));
    r.put("matrix", json!(fmt_matrix(&spec.a)));
    r.put("apex_avoided", json!(apex));
    r.put("image", json!(texts(image.gens())));
    r.put("dimension", json!([ideal.krull_dimension(), image.krull_dimension()]));
    r.put("pullback", json!(pullback));
    if !samples.is_empty() {
        let pts = samples.iter().map(|p| point(s, p)).collect::<Result<Vec<_>>>()?;
        r.verdict("biregular at samples", biregular_samples_verdict(&gens, &spec, &pts)?);
    }
    Ok(r)
}

/// Every image generator composed with `π_A` lies in `√I`.
fn pullback_ok(image: &Ideal<Q>, spec: &ProjectionSpec, ideal: &Ideal<Q>) -> Result<bool> {
    let x = |i: usize| QPoly::var(Q, ideal.vars().clone(), i);
    let proj: Vec<QPoly> = (0..spec.r)
        .map(|i| spec.a[i].iter().enumerate().fold(x(i), |acc, (j, c)| &acc - &x(spec.r + j).scale_q(c)))
        .collect();
    for g in image.gens() {
        if !radical_membership(&g.compose(&proj)?, ideal)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn real_structure(s: &Session, names: &[String]) -> Result<Report> {
    let gens = polys(s, names)?;
    let u = underlying_real_structure(&gens)?;
    let mut r = Report::default();
    r.line(format!("variables: {}", u.vars.join(", ")));
    let mut pairs = Vec::new();
    for (k, (a, b)) in u.pairs.iter().enumerate() {
        r.line(format!("a{} = {a}", k + 1));
        r.line(format!("b{} = {b}", k + 1));
        pairs.push(json!({ "a": a.to_text(), "b": b.to_text() }));
    }
    r.put("variables", json!(u.vars.as_slice()));
    r.put("pairs", Value::Array(pairs));
    let group = s.group(None)?;
    if group.order() > 1 {
        let cs = build_conjugate_system(&gens, &group)?;
        let rs = real_galois_completion(&cs)?;
        for l in rs.to_text() {
            r.line(format!("real completion: {l}"));
        }
        r.put("real_completion", json!(rs.to_text()));
    }
    Ok(r)
}

fn uni_text(p: &UniPoly<Tower>, var: &str) -> String {
    p.to_text(var)
}

pub fn cluster(s: &Session, name: &str) -> Result<Report> {
    let f = rational_or_err(s.poly(name)?)?;
    let used: Vec<usize> = (0..f.nvars()).filter(|&i| f.involves(i)).collect();
    let &[v] = used.as_slice() else {
        return Err(Error::Invalid(format!("{f} is not univariate")));
    };
    let u = f.to_univariate(v).ok_or_else(|| Error::Invalid(format!("{f} is not univariate")))?;
    let var = &s.vars[v];
    let res = clustering_over_intermediate(&u, &s.tower, opt(s, "max_block", 4)?, opt(s, "degree_budget", 24)?)?;
    let mut r = Report::default();
    let show = |fs: &[(UniPoly<Tower>, usize)]| -> Vec<String> {
        fs.iter().map(|(p, m)| if *m == 1 { uni_text(p, var) } else { format!("({})^{m}", uni_text(p, var)) }).collect()
    };
    match res {
        Clustering::Complete(fs) => {
            for t in show(&fs) {
                r.line(format!("factor: {t}"));
            }
            r.put("complete", json!(true));
            r.put("factors", json!(show(&fs)));
        }
        Clustering::Unknown { found, remainder, note } => {
            for t in show(&found) {
                r.line(format!("factor: {t}"));
            }
            for t in show(&remainder) {
                r.line(format!("unsplit: {t}"));
            }
            r.line(format!("note: {note}"));
            r.put("complete", json!(false));
            r.put("factors", json!(show(&found)));
            r.put("unsplit", json!(show(&remainder)));
            r.put("note", json!(note));
        }
    }
    Ok(r)
}
