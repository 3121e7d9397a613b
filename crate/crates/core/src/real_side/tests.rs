use super::*;
use crate::galois_completion::{build_conjugate_system, galois_complete_polynomial};
use crate::multipoly::{vars, xvars};
use crate::syntax::{parse_field, parse_qpoly, Session};

const D4: &str = "field Q(a : a^4 - 2 in [1.18,1.20]; i : i^2 + 1 in [0,0]+[0.9,1.1]i)
auto s10 : a -> i*a
auto s01 : i -> -i
group G = generated(s10, s01)
poly g = x1 + a^2*x2 + a*x3
";

const CUBE: &str = "field Q(c : c^3 - 2 in [1.25,1.26]; s : s^2 + 3 in [0,0]+[1.7,1.8]i)
auto r : c -> (s - 1)/2*c
auto t : s -> -s
group G = generated(r, t)
poly g = x1 - c
poly l = x1 - c*x2
";

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

#[test]
fn linear_dimensions() {
    let s = Session::parse(D4).unwrap();
    let t = s.tower.clone();
    let v = xvars(3);
    let l = |x: &str| TPoly::parse(x, &v, &t).unwrap();
    assert_eq!(real_dim_linear(&[l("x1 - a^2*x2"), l("x3")], 3).unwrap(), 1);
    assert_eq!(real_dim_linear(&[], 3).unwrap(), 3);
    assert_eq!(real_dim_linear(&[l("x1"), l("x1 - 1")], 3).unwrap(), -1);
}

#[test]
fn underlying_structure_of_cubic() {
    let t = parse_field("Q(i : i^2 + 1 in [0,0]+[0.9,1.1]i)").unwrap();
    let f = TPoly::parse("z2^3 - 2*z1^3", &vars(&["z1", "z2"]), &t).unwrap();
    let u = underlying_real_structure(&[f]).unwrap();
    let (a, b) = &u.pairs[0];
    assert_eq!(a.to_text(), "-2*x1^3 + 6*x1*y1^2 + x2^3 - 3*x2*y2^2");
    let expected_b = TPoly::parse("y2^3 - 3*x2^2*y2 - 2*y1^3 + 6*x1^2*y1", &u.vars, &t).unwrap();
    assert!(*b == expected_b || b.neg() == expected_b);
}

#[test]
fn d4_real_completion() {
    let s = Session::parse(D4).unwrap();
    let cs = build_conjugate_system(&[s.poly("g").unwrap().clone()], &s.group(None).unwrap()).unwrap();
    let rs = real_galois_completion(&cs).unwrap();
    assert_eq!(rs.entries.len(), 3);
    assert!(rs.entries.iter().any(|e| texts(&e.system) == vec!["x1 - a^2*x2", "x3"] && e.sigmas.len() == 4));
}

#[test]
fn geometric_verdicts() {
    let b = SamplingBudget::default();
    let v = k_geometric_verdict(&q("x1^3 - 2*x2^3", 2), None, b).unwrap();
    assert!(v.is_proven() && v.recheck());
    match &v.certificate[0] {
        Evidence::SignChange { positive, negative, .. } => {
            assert_eq!(positive, &vec![rat(1), rat(0)]);
            assert_eq!(negative, &vec![rat(-1), rat(0)]);
        }
        e => panic!("{e}"),
    }
    let v = k_geometric_verdict(&q("x1^2 + 1", 1), None, b).unwrap();
    assert!(v.is_refuted() && v.recheck());
    let v = k_geometric_verdict(&q("(x1 - x2)^2*(x1 + 1)", 2), None, b).unwrap();
    assert!(v.is_refuted() && v.recheck());
    let v = k_geometric_verdict(&q("x1^2 + x2^2", 2), None, b).unwrap();
    assert!(v.is_refuted() && v.recheck());
}

#[test]
fn d4_verdicts_and_bad_set() {
    let b = SamplingBudget::default();
    let s = Session::parse(D4).unwrap();
    let g = s.poly("g").unwrap().clone();
    let gb = galois_complete_polynomial(&g, &s.group(None).unwrap()).unwrap().g_bullet;
    let v = k_geometric_verdict(&gb, None, b).unwrap();
    assert!(v.is_proven(), "{}", v.to_text());
    let fs = orbit(&s, "g");
    assert_eq!(fs.len(), 4);
    let r = k_reliable_verdict(&gb, &fs, b).unwrap();
    assert!(r.is_refuted(), "{}", r.to_text());
    let bs = bad_set(&gb, &fs, b).unwrap();
    assert!(bs.verdict.is_proven());
    assert_eq!(bs.components.len(), 1);
    assert_eq!(texts(&bs.components[0]), vec!["x1 - a^2*x2", "x3"]);
    let cs = build_conjugate_system(&[g], &s.group(None).unwrap()).unwrap();
    assert!(defined_over_k_verdict(&cs, b).unwrap().is_refuted());
}

#[test]
fn cubic_bad_point() {
    let b = SamplingBudget::default();
    let s = Session::parse(CUBE).unwrap();
    let fs = orbit(&s, "l");
    assert_eq!(fs.len(), 3);
    let bs = bad_set(&q("x1^3 - 2*x2^3", 2), &fs, b).unwrap();
    assert_eq!(bs.components.len(), 1);
    assert_eq!(texts(&bs.components[0]), vec!["x1", "x2"]);
    let cs = build_conjugate_system(&[s.poly("g").unwrap().clone()], &s.group(None).unwrap()).unwrap();
    assert!(defined_over_k_verdict(&cs, b).unwrap().is_refuted());
}

#[test]
fn real_quadratic_factor_bad_set() {
    let b = SamplingBudget::default();
    let t = parse_field("Q(c : c^3 - 2 in [1.25,1.26])").unwrap();
    let v = xvars(2);
    let g1 = TPoly::parse("x1 - c*x2", &v, &t).unwrap();
    let g2 = TPoly::parse("x1^2 + c*x1*x2 + c^2*x2^2", &v, &t).unwrap();
    let bs = bad_set(&q("x1^3 - 2*x2^3", 2), &[g1.clone(), g2.clone()], b).unwrap();
    assert_eq!(texts(&bs.components[0]), vec!["x1", "x2"]);
    let one = xvars(1);
    let h1 = TPoly::parse("x1 - c", &one, &t).unwrap();
    let h2 = TPoly::parse("x1^2 + c*x1 + c^2", &one, &t).unwrap();
    assert!(k_reliable_verdict(&q("x1^3 - 2", 1), &[h1, h2], b).unwrap().is_refuted());
}

#[test]
fn fermat_curve() {
    let b = SamplingBudget::default();
    let f = q("x1^6 + x2^6 - 8", 2);
    assert!(k_geometric_verdict(&f, None, b).unwrap().is_proven());
    let t = crate::exact_arith::TowerField::rationals();
    let ft = f.to_tower(&t);
    assert!(k_reliable_verdict(&f, &[ft.clone()], b).unwrap().is_proven());
    let cs = build_conjugate_system(&[ft], &crate::exact_arith::GaloisGroup::trivial(&t)).unwrap();
    assert!(defined_over_k_verdict(&cs, b).unwrap().is_proven());
}

#[test]
fn diophantine_containment() {
    let s = Session::parse(CUBE).unwrap();
    let cs = build_conjugate_system(&[s.poly("l").unwrap().clone()], &s.group(None).unwrap()).unwrap();
    let v = rational_points_in_conjugates(&cs, 20, 100_000).unwrap();
    assert!(v.is_proven(), "{}", v.to_text());
    let (pts, complete) = rational_zeros(&cs.base, 20, 100_000);
    assert!(complete);
    assert_eq!(pts, vec![vec![rat(0), rat(0)]]);
}

fn rat(n: i64) -> crate::exact_arith::Rational {
    crate::exact_arith::rat(n)
}
