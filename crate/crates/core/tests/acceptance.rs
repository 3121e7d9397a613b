//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use subalg_core::exact_arith::{rat, FieldElement, Rational, Tower};
use subalg_core::galois_completion::{
    build_conjugate_system, clustering_over_intermediate, galois_complete_polynomial, zero_ideal_geometric_hypersurface,
    Clustering,
};
use subalg_core::groebner::{intersect_ideals, radical_equal, radical_membership, Ideal};
use subalg_core::local_geometry::{arrangement_sing, jacobian_ideal, AlgebraicPoint};
use subalg_core::multipoly::gcd::normalize;
use subalg_core::multipoly::{vars, xvars};
use subalg_core::projection::{
    apex_avoidance, biregular_samples_verdict, find_generic_projection, generic_project, projective_closure,
    ProjectionSpec,
};
use subalg_core::real_side::{
    bad_set, defined_over_k_verdict, k_geometric_verdict, k_reliable_verdict, linear_rref, underlying_real_structure,
    Evidence, SamplingBudget,
};
use subalg_core::syntax::{fmt_matrix, parse_field, parse_qpoly, Session};
use subalg_core::{GaloisGroup, QPoly, TPoly, TowerField, Q};

type Check = Result<String, String>;

fn need(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn q(s: &str, n: usize) -> QPoly {
    parse_qpoly(s, &xvars(n)).unwrap()
}

fn texts(ps: &[TPoly]) -> Vec<String> {
    ps.iter().map(|p| p.to_text()).collect()
}

fn orbit(s: &Session, name: &str) -> Vec<TPoly> {
    let cs = build_conjugate_system(&[s.poly(name).unwrap().clone()], &s.group(None).unwrap()).unwrap();
    cs.distinct().into_iter().map(|(_, sys)| sys[0].clone()).collect()
}

fn g_bullet() -> QPoly {
    galois_complete_polynomial(d4().poly("g").unwrap(), d4_group()).unwrap().g_bullet
}

fn d4_completion() -> Check {
    let start = Instant::now();
    let c = ok(galois_complete_polynomial(ok(d4().poly("g"))?, d4_group()))?;
    let elapsed = start.elapsed();
    need(d4_group().order() == 8, "group order")?;
    let expected = "x1^4 - 4*x1^2*x2^2 + 8*x1*x2*x3^2 + 4*x2^4 - 2*x3^4";
    need(c.g_bullet.to_text() == expected, format!("g• = {}", c.g_bullet))?;
    need(c.g_star == c.g_bullet.pow(2), "g* differs from (g•)^2")?;
    need(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("g• = {expected}, g* = (g•)^2 in {} ms", elapsed.as_millis()))
}

fn product_completion() -> Check {
    let grp = d4_group();
    let g = ok(d4().poly("g"))?.clone();
    let p = ok(d4().poly("p"))?.clone();
    let pc = ok(galois_complete_polynomial(&p, grp))?;
    need(pc.g_bullet.to_text() == "x1^2 + 2*x1*x3 - 2*x2^2 + x3^2", format!("p• = {}", pc.g_bullet))?;
    let gb = g_bullet();
    let qt = ok(g.try_mul(&p))?;
    let qc = ok(galois_complete_polynomial(&qt, grp))?;
    let divisor = &gb.pow(2) * &pc.g_bullet.pow(4);
    let quotient = ok(qc.g_star.divexact(&divisor))?;
    need(quotient.is_constant() && !quotient.is_zero(), format!("q*/((g•)^2(p•)^4) = {quotient}"))?;
    need(ok(divisor.divexact(&qc.g_star))?.is_constant(), "reverse division")?;
    let z = ok(zero_ideal_geometric_hypersurface(&[g, p], grp))?;
    let expected = normalize(&(&gb * &pc.g_bullet));
    need(normalize(&z.generator) == expected, format!("q• = {}", z.generator))?;
    need(normalize(&qc.g_bullet) == expected, "completion of q differs from g•p•")?;
    Ok("p• exact, q* = (g•)^2(p•)^4 by exact division, q• = g•·p•".into())
}

fn cube_root() -> Check {
    let s = ok(Session::parse(CUBE))?;
    let grp = ok(s.group(None))?;
    let c = ok(galois_complete_polynomial(ok(s.poly("g"))?, &grp))?;
    need(grp.order() == 6, "group order")?;
    need(c.g_bullet.to_text() == "x1^3 - 2", format!("g• = {}", c.g_bullet))?;
    need(c.g_star == c.g_bullet.pow(2) && c.g_star.to_text() == "x1^6 - 4*x1^3 + 4", format!("g* = {}", c.g_star))?;
    Ok("g• = x1^3 - 2, g* = (x1^3 - 2)^2".into())
}

fn singular_loci() -> Check {
    let cases = [
        ("x1^3 - 2*x2^3", 2, vec!["x1", "x2"]),
        ("(x1^2 - x2^2)^3 + 2*x3^6", 3, vec!["x1^2 - x2^2", "x3"]),
        ("x2^2 - x3*x1^2", 3, vec!["x1", "x2"]),
    ];
    for (f, n, want) in cases {
        let j = ok(jacobian_ideal(&q(f, n)))?;
        let w = ok(Ideal::new(Q, xvars(n), want.iter().map(|s| q(s, n)).collect()))?;
        need(ok(radical_equal(&j, &w))?, format!("Jacobian ideal of {f} is not radical-equal to {want:?}"))?;
    }
    Ok("three Jacobian ideals radical-equal to the expected loci".into())
}

fn bad_sets() -> Check {
    let b = SamplingBudget::default();
    let bs = ok(bad_set(&g_bullet(), &orbit(d4(), "g"), b))?;
    need(bs.verdict.is_proven() && bs.verdict.recheck(), "D4 verdict")?;
    need(bs.components.len() == 1 && texts(&bs.components[0]) == ["x1 - a^2*x2", "x3"], format!("{:?}", bs.components))?;
    let cube = ok(Session::parse(CUBE))?;
    let bs = ok(bad_set(&q("x1^3 - 2*x2^3", 2), &orbit(&cube, "l"), b))?;
    need(bs.verdict.recheck(), "cubic recheck")?;
    need(bs.components.len() == 1 && texts(&bs.components[0]) == ["x1", "x2"], format!("{:?}", bs.components))?;
    Ok("B(g•) = {x1 - a^2*x2, x3}, B(x1^3 - 2*x2^3) = {(0,0)}".into())
}

fn union_of(lines: &[Vec<TPoly>], t: &Tower) -> Result<Ideal<Tower>, String> {
    let mut acc: Option<Ideal<Tower>> = None;
    for l in lines {
        let i = ok(Ideal::new(t.clone(), xvars(3), l.clone()))?;
        acc = Some(match acc {
            None => i,
            Some(a) => ok(intersect_ideals(&a, &i))?,
        });
    }
    acc.ok_or_else(|| "no lines".to_string())
}

fn arrangements() -> Check {
    let t = &d4().tower;
    let v = xvars(3);
    let tp = |s: &str| TPoly::parse(s, &v, t).unwrap();
    let sys = |gs: &[&str]| -> Result<Vec<TPoly>, String> {
        ok(linear_rref(&gs.iter().map(|s| tp(s)).collect::<Vec<_>>()))?.ok_or_else(|| "inconsistent line".to_string())
    };
    let g_planes: Vec<TPoly> =
        ["x1 + a^2*x2 + a*x3", "x1 + a^2*x2 - a*x3", "x1 - a^2*x2 + i*a*x3", "x1 - a^2*x2 - i*a*x3"].map(tp).to_vec();
    let gb = g_bullet();
    let s = ok(arrangement_sing(&gb, &g_planes))?;
    let x1 = sys(&["x1 - a^2*x2", "x3"])?;
    let x1p = sys(&["x1 + a^2*x2", "x3"])?;
    let got = union_of(&s.real_pieces, t)?;
    let want = union_of(&[x1.clone(), x1p.clone()], t)?;
    need(ok(radical_equal(&got, &want))?, "g•: real pieces differ from X1 ∪ X1'")?;
    need(s.real_pieces.len() == 2, format!("g•: {} real pieces", s.real_pieces.len()))?;

    let mut planes = g_planes;
    planes.extend(["x1 + a^2*x2 + x3", "x1 - a^2*x2 + x3"].map(tp));
    let pb = galois_complete_polynomial(ok(d4().poly("p"))?, d4_group()).map_err(|e| e.to_string())?.g_bullet;
    let s = ok(arrangement_sing(&(&gb * &pb), &planes))?;
    let r = vec![
        x1p,
        sys(&["x2", "x1 + x3"])?,
        sys(&["x1 + a^2*x2 + a*x3", "x1 - a^2*x2 + x3"])?,
        sys(&["x1 + a^2*x2 - a*x3", "x1 - a^2*x2 + x3"])?,
        x1,
    ];
    let got = union_of(&s.real_pieces, t)?;
    let want = union_of(&r, t)?;
    need(ok(radical_equal(&got, &want))?, "q•: real pieces differ from r1 ∪ … ∪ r5")?;
    need(s.real_pieces.len() == 5, format!("q•: {} real pieces", s.real_pieces.len()))?;
    Ok("Sing(g•) = X1 ∪ X1', Sing(q•) = r1 ∪ r2 ∪ r3 ∪ r4 ∪ r5".into())
}

fn classification() -> Check {
    let b = SamplingBudget::default();
    let v = ok(k_geometric_verdict(&q("x1^3 - 2*x2^3", 2), None, b))?;
    need(v.is_proven() && v.recheck(), "x1^3 - 2*x2^3 geometric")?;
    match &v.certificate[0] {
        Evidence::SignChange { positive, negative, .. } => {
            need(*positive == [rat(1), rat(0)] && *negative == [rat(-1), rat(0)], "witnesses")?
        }
        e => return Err(format!("certificate {e}")),
    }
    let gb = g_bullet();
    let v = ok(k_geometric_verdict(&gb, None, b))?;
    need(v.is_proven() && v.recheck(), "g• geometric")?;
    let r = ok(k_reliable_verdict(&gb, &orbit(d4(), "g"), b))?;
    need(r.is_refuted() && r.recheck(), "g• reliable")?;
    let v = ok(k_geometric_verdict(&q("x1^2 + 1", 1), None, b))?;
    need(v.is_refuted() && v.recheck(), "x1^2 + 1")?;
    let f = q("x1^6 + x2^6 - 8", 2);
    let ft = f.to_tower(&TowerField::rationals());
    let r = ok(k_reliable_verdict(&f, &[ft.clone()], b))?;
    need(r.is_proven() && r.recheck(), "Fermat reliable")?;
    let cs = ok(build_conjugate_system(&[ft], &GaloisGroup::trivial(&TowerField::rationals())))?;
    let d = ok(defined_over_k_verdict(&cs, b))?;
    need(d.is_proven() && d.recheck(), "Fermat defined over Q")?;
    Ok("cubic geometric at (±1,0); g• geometric, not reliable; x1^2 + 1 refuted; Fermat reliable".into())
}

fn clustering() -> Check {
    let e = ok(parse_field("Q(r : r^2 - 2 in [1.41,1.42])"))?;
    let f = q("(x1^2 - 2)^2 - 2", 1).to_univariate(0).ok_or("not univariate")?;
    let Clustering::Complete(parts) = ok(clustering_over_intermediate(&f, &e, 2, 32))? else {
        return Err("clustering incomplete".into());
    };
    let mut t: Vec<String> = parts.iter().map(|(p, _)| p.to_text("t")).collect();
    t.sort();
    need(t == ["t^2 + r - 2", "t^2 - r - 2"], format!("{t:?}"))?;
    Ok("(t^2 - 2)^2 - 2 = (t^2 - 2 - r)(t^2 - 2 + r)".into())
}

fn real_structure() -> Check {
    let t = ok(parse_field("Q(i : i^2 + 1 in [0,0]+[0.9,1.1]i)"))?;
    let zs = vars(&["z1", "z2", "z3"]);
    let z2 = vars(&["z1", "z2"]);
    let f = ok(TPoly::parse("z2^3 - 2*z1^3", &z2, &t))?;
    let u = ok(underlying_real_structure(&[f]))?;
    let (a, b) = &u.pairs[0];
    let ea = ok(TPoly::parse("-2*x1^3 + 6*x1*y1^2 + x2^3 - 3*x2*y2^2", &u.vars, &t))?;
    let eb = ok(TPoly::parse("y2^3 - 3*x2^2*y2 - 2*y1^3 + 6*x1^2*y1", &u.vars, &t))?;
    need(*a == ea || a.neg() == ea, format!("a = {a}"))?;
    need(*b == eb || b.neg() == eb, format!("b = {b}"))?;
    let tests: [(&str, &_); 5] = [
        ("z1^2 + z2^2", &z2),
        ("z2^3 - 2*z1^3", &z2),
        ("z1 - i*z2", &z2),
        ("z1*z2 - 1", &z2),
        ("z1^2 + i*z2*z3 + 1", &zs),
    ];
    for (s, vs) in tests {
        let f = ok(TPoly::parse(s, vs, &t))?;
        let d = ok(Ideal::new(t.clone(), vs.clone(), vec![f.clone()]))?.krull_dimension();
        let u = ok(underlying_real_structure(&[f]))?;
        let dr = ok(Ideal::new(t.clone(), u.vars.clone(), u.generators()))?.krull_dimension();
        need(dr == 2 * d, format!("{s}: {dr} vs 2·{d}"))?;
    }
    Ok("a, b match; dim(𝔞^R) = 2·dim(𝔞) on 5 principal ideals".into())
}

fn dimension_invariance() -> Check {
    let cube = ok(Session::parse(CUBE))?;
    let towers: Vec<Tower> = vec![ok(parse_field("Q(r : r^2 - 2 in [1.41,1.42])"))?, cube.tower.clone(), d4().tower.clone()];
    let ideals: [&[&str]; 10] = [
        &["x1"],
        &["x1*x2"],
        &["x1^2 + x2^2 + x3^2 - 1"],
        &["x2 - x1^2", "x3 - x1^3"],
        &["x1^2 - 2"],
        &["x1^3 - 2", "x2"],
        &["x1*x2", "x1*x3"],
        &["x1*x2 + 1", "x1"],
        &["x1^2 + x2^2 + 1", "x3^2 - x1"],
        &["x1^2 - x2^2*x3"],
    ];
    let mut dims = Vec::new();
    for gens in ideals {
        let i = ok(Ideal::new(Q, xvars(3), gens.iter().map(|s| q(s, 3)).collect()))?;
        let d = i.krull_dimension();
        for t in &towers {
            let it = i.map_field(t, |c: &Rational| t.rational_coords(c));
            need(it.krull_dimension() == d, format!("{gens:?} over a tower of degree {}", t.dim()))?;
        }
        dims.push(d);
    }
    need(dims == [2, 2, 2, 1, 2, 1, 2, -1, 1, 2], format!("dimensions {dims:?}"))?;
    Ok(format!("dimensions {dims:?} agree over Q and 3 towers"))
}

fn projection() -> Check {
    let i = ok(Ideal::new(Q, xvars(4), ["x2 - x1^2", "x3 - x1^3", "x4 - x1^4"].map(|s| q(s, 4)).to_vec()))?;
    let (spec, _) = ok(find_generic_projection(&i, 3, 7, 5, 50))?;
    need(ok(apex_avoidance(&projective_closure(&i), &spec))?, "apex")?;
    let img = ok(generic_project(&i, &spec))?;
    need(i.krull_dimension() == 1 && img.krull_dimension() == 1, "dimension")?;
    for g in img.gens() {
        need(ok(radical_membership(&pullback(g, &spec), &i))?, format!("pullback of {g}"))?;
    }
    let t = ok(parse_field("Q(r : r^2 - 2 in [1.41,1.42])"))?;
    let r = FieldElement::generator(&t, 0);
    let samples: Vec<AlgebraicPoint> = (-4..=5)
        .map(|k| {
            let x = r.add(&FieldElement::from_int(&t, k));
            AlgebraicPoint::new((1..=4).map(|e| x.pow(e)).collect()).unwrap()
        })
        .collect();
    let v = ok(biregular_samples_verdict(i.gens(), &spec, &samples))?;
    need(v.is_proven() && v.recheck(), v.to_text())?;
    Ok(format!("A = {}: apex avoided, dimension 1, pullbacks in ideal, Proven at 10 samples", fmt_matrix(&spec.a)))
}

fn pullback(g: &QPoly, spec: &ProjectionSpec) -> QPoly {
    let v = xvars(spec.n);
    let x = |i: usize| QPoly::var(Q, v.clone(), i);
    let images: Vec<QPoly> = (0..spec.r)
        .map(|i| spec.a[i].iter().enumerate().fold(x(i), |acc, (j, c)| &acc - &x(spec.r + j).scale_q(c)))
        .collect();
    g.compose(&images).unwrap()
}

fn run_suite<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), proptest::test_runner::TestCaseError>,
) -> Result<(), String> {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn properties() -> Check {
    run_suite(
        "conjugation",
        500,
        (group_index(), d4_element(), d4_element(), d4_poly(), d4_poly()),
        |(k, x, y, p, q)| check_conjugation(k, &x, &y, &p, &q),
    )?;
    run_suite("components", 500, d4_poly(), |p| check_components(&p))?;
    run_suite("squarefree", 100, (q_poly(2), q_poly(1)), |(f, g)| check_squarefree(&f, &g))?;
    run_suite("gcd", 100, (q_poly(2), q_poly(2), q_poly(1)), |(a, b, h)| check_gcd(&a, &b, &h))?;
    need(group_closed(d4_group()) && d4_group().order() == 8, "D4 closure")?;
    let z2 = z2_group();
    need(group_closed(&z2) && z2.order() == 2, "Z/2 closure")?;
    run_suite("sign", 1000, sign_sample(), |x| check_sign(&x))?;

    let cube = ok(Session::parse(CUBE))?;
    let trivial = GaloisGroup::trivial(&TowerField::rationals());
    let rational = |s: &str, n: usize| q(s, n).to_tower(&TowerField::rationals());
    let systems: Vec<(String, Vec<TPoly>, GaloisGroup)> = vec![
        ("g".into(), vec![ok(d4().poly("g"))?.clone()], d4_group().clone()),
        ("p".into(), vec![ok(d4().poly("p"))?.clone()], d4_group().clone()),
        ("x1 - c".into(), vec![ok(cube.poly("g"))?.clone()], ok(cube.group(None))?),
        ("x1 - c*x2".into(), vec![ok(cube.poly("l"))?.clone()], ok(cube.group(None))?),
        ("x1^3 - 2*x2^3".into(), vec![rational("x1^3 - 2*x2^3", 2)], trivial.clone()),
    ];
    let mut systems = systems;
    for (f, n) in [("x1^3 - 2*x2^3", 2), ("(x1^2 - x2^2)^3 + 2*x3^6", 3), ("x2^2 - x3*x1^2", 3)] {
        let j = ok(jacobian_ideal(&q(f, n)))?;
        let gens = j.gens().iter().map(|g| g.to_tower(&TowerField::rationals())).collect();
        systems.push((format!("Jacobian system of {f}"), gens, trivial.clone()));
    }
    for (name, gens, grp) in &systems {
        need(diophantine_consistent(gens, grp, 20)?, format!("diophantine containment for {name}"))?;
    }
    Ok("conjugation 500, components 500, squarefree, gcd, closure D4 and Z/2, sign 1000, diophantine height 20".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("D4 Galois completion", d4_completion),
        ("second completion and product", product_completion),
        ("cube-root completion", cube_root),
        ("singular loci", singular_loci),
        ("bad sets", bad_sets),
        ("arrangement singular loci", arrangements),
        ("classification verdicts", classification),
        ("clustering", clustering),
        ("underlying real structure", real_structure),
        ("dimension invariance", dimension_invariance),
        ("generic projection", projection),
        ("property suites", properties),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2} s): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2} s): {why}", k + 1);
            }
        }
    }
    let secs = total.elapsed().as_secs_f64();
    println!("{} of {} criteria passed in {secs:.1} s", criteria.len() - failed, criteria.len());
    if failed > 0 || secs >= 60.0 {
        std::process::exit(1);
    }
}
