#![allow(dead_code)]

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use subalg_core::exact_arith::{FieldElement, Rational, Tower};
use subalg_core::galois_completion::build_conjugate_system;
use subalg_core::multipoly::gcd::{mv_gcd, normalize, squarefree_part};
use subalg_core::multipoly::{xvars, Monomial};
use subalg_core::real_side::rational_zeros;
use subalg_core::syntax::{parse_field, Session};
use subalg_core::{GaloisGroup, QPoly, TPoly, Q};

pub const D4: &str = "field Q(a : a^4 - 2 in [1.18,1.20]; i : i^2 + 1 in [0,0]+[0.9,1.1]i)
auto s10 : a -> i*a
auto s01 : i -> -i
group G = generated(s10, s01)
poly g = x1 + a^2*x2 + a*x3
poly p = x1 + a^2*x2 + x3
";

pub const CUBE: &str = "field Q(c : c^3 - 2 in [1.25,1.26]; s : s^2 + 3 in [0,0]+[1.7,1.8]i)
auto r : c -> (s - 1)/2*c
auto t : s -> -s
group G = generated(r, t)
poly g = x1 - c
poly l = x1 - c*x2
";

pub const SQRT2: &str = "field Q(r : r^2 - 2 in [1.41,1.42])
auto s : r -> -r
group G = generated(s)
poly h = x1 - r*x2
";

/// Real tower used by the sign oracle.
pub const REAL_TOWER: &str = "Q(a : a^4 - 2 in [1.18,1.20]; r : r^2 - 3 in [1.73,1.74])";

pub fn d4() -> &'static Session {
    static S: OnceLock<Session> = OnceLock::new();
    S.get_or_init(|| Session::parse(D4).unwrap())
}

pub fn d4_group() -> &'static GaloisGroup {
    static G: OnceLock<GaloisGroup> = OnceLock::new();
    G.get_or_init(|| d4().group(None).unwrap())
}

pub fn real_tower() -> &'static Tower {
    static T: OnceLock<Tower> = OnceLock::new();
    T.get_or_init(|| parse_field(REAL_TOWER).unwrap())
}

pub fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg.into()))
    }
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

/// Coordinates with roughly a third of the entries zero.
pub fn coords(dim: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(prop_oneof![1 => Just(Rational::zero()), 2 => small_rational()], dim)
}

pub fn d4_element() -> impl Strategy<Value = FieldElement> {
    coords(d4().tower.dim()).prop_map(|c| FieldElement::from_coords(&d4().tower, c))
}

/// Polynomials in two variables over the D4 tower with at most four terms.
pub fn d4_poly() -> impl Strategy<Value = TPoly> {
    let dim = d4().tower.dim();
    proptest::collection::vec((0u32..3, 0u32..3, coords(dim)), 1..=4).prop_map(|terms| {
        let t = &d4().tower;
        let mut p = TPoly::zero(t.clone(), xvars(2));
        for (e1, e2, c) in terms {
            p.add_term(Monomial(vec![e1, e2]), c);
        }
        p
    })
}

/// Nonzero polynomials over ℚ in two variables of degree at most `deg`.
pub fn q_poly(deg: u32) -> impl Strategy<Value = QPoly> {
    proptest::collection::vec((0..=deg, 0..=deg, -5i64..=5), 1..=3)
        .prop_map(|terms| {
            let mut p = QPoly::zero(Q, xvars(2));
            for (e1, e2, c) in terms {
                p.add_term(Monomial(vec![e1, e2]), Rational::from_integer(c.into()));
            }
            p
        })
        .prop_filter("nonzero", |p| !p.is_zero())
}

pub fn group_index() -> impl Strategy<Value = usize> {
    0..d4_group().order()
}

pub fn check_conjugation(k: usize, x: &FieldElement, y: &FieldElement, p: &TPoly, q: &TPoly) -> Result<(), TestCaseError> {
    let s = &d4_group().elements()[k];
    let ap = |e: &FieldElement| s.apply(e).unwrap();
    ensure(ap(&x.add(y)) == ap(x).add(&ap(y)), "sum")?;
    ensure(ap(&x.mul(y)) == ap(x).mul(&ap(y)), "product")?;
    ensure(ap(&FieldElement::one(&d4().tower)).is_one(), "unit")?;
    if !x.is_zero() {
        ensure(ap(&x.inv().unwrap()) == ap(x).inv().unwrap(), "inverse")?;
    }
    let pq = p.try_mul(q).unwrap();
    ensure(pq.conjugate(s).unwrap() == p.conjugate(s).unwrap().try_mul(&q.conjugate(s).unwrap()).unwrap(), "polynomial product")?;
    let sum = p.try_add(q).unwrap();
    ensure(sum.conjugate(s).unwrap() == p.conjugate(s).unwrap().try_add(&q.conjugate(s).unwrap()).unwrap(), "polynomial sum")
}

pub fn check_components(p: &TPoly) -> Result<(), TestCaseError> {
    let comps = p.coefficient_components();
    ensure(comps.len() == p.tower().dim(), "component count")?;
    ensure(TPoly::from_components(p.tower(), &comps).unwrap() == *p, "round trip")
}

pub fn check_squarefree(f: &QPoly, g: &QPoly) -> Result<(), TestCaseError> {
    let h = f * &(g * g);
    let s = squarefree_part(&h);
    ensure(normalize(&squarefree_part(&s)) == normalize(&s), "idempotence")?;
    ensure(h.divexact(&s).is_ok(), "part divides")?;
    ensure(s.total_degree() <= h.total_degree(), "degree")?;
    let ns = normalize(&s);
    ensure(normalize(&squarefree_part(&(&ns * &ns))) == ns, "square")
}

pub fn check_gcd(f1: &QPoly, f2: &QPoly, h: &QPoly) -> Result<(), TestCaseError> {
    let a = f1 * h;
    let b = f2 * h;
    let g = mv_gcd(&a, &b);
    ensure(a.divexact(&g).is_ok() && b.divexact(&g).is_ok(), "gcd divides")?;
    ensure(g.divexact(h).is_ok(), "common factor divides gcd")?;
    let c = mv_gcd(&a.divexact(&g).unwrap(), &b.divexact(&g).unwrap());
    ensure(c.is_constant(), "cofactors coprime")
}

/// Closure, identity and inverses, comparing automorphisms by their images.
pub fn group_closed(g: &GaloisGroup) -> bool {
    let els = g.elements();
    let find = |s: &subalg_core::Automorphism| els.iter().position(|e| e.images() == s.images());
    if !els.iter().any(|e| e.is_identity()) {
        return false;
    }
    for x in els {
        let mut has_inverse = false;
        for y in els {
            let Ok(xy) = x.compose(y) else { return false };
            if find(&xy).is_none() {
                return false;
            }
            if xy.is_identity() {
                has_inverse = true;
            }
        }
        if !has_inverse {
            return false;
        }
    }
    true
}

pub fn z2_group() -> GaloisGroup {
    Session::parse(SQRT2).unwrap().group(None).unwrap()
}

const SCALE_DIGITS: u32 = 130;

/// Sign of an element of the real tower from floor approximations of
/// 2^(1/4) and 3^(1/2) with 130 digits. `None` when the value is below
/// 10^-100 in absolute value.
pub fn numeric_sign(x: &FieldElement) -> Option<i8> {
    let t = x.field();
    let s = BigInt::from(10u32).pow(SCALE_DIGITS);
    let a = (BigInt::from(2) * s.pow(4)).nth_root(4);
    let r = (BigInt::from(3) * s.pow(2)).sqrt();
    let top = 4u32;
    let mut num = BigInt::zero();
    let mut den = BigInt::from(1);
    let mut terms: Vec<(BigInt, BigInt)> = Vec::new();
    for (idx, c) in x.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = t.exponents(idx);
        let v = a.pow(e[0] as u32) * r.pow(e[1] as u32) * s.pow(top - e[0] as u32 - e[1] as u32);
        terms.push((c.numer() * v, c.denom().clone()));
        den = num_integer::Integer::lcm(&den, c.denom());
    }
    for (n, d) in terms {
        num += n * (&den / d);
    }
    // value = num / (den·s^top); the truncation error is far below 10^-100
    let bound = &den * s.pow(top) / BigInt::from(10u32).pow(100);
    if num.abs() <= bound {
        None
    } else if num.is_positive() {
        Some(1)
    } else {
        Some(-1)
    }
}

/// `a^k − p/q` with `p/q` a truncation of 2^(1/4) to `digits` digits, or
/// `a^2 − p/q` for 2^(1/2). Small but nonzero elements.
pub fn near_zero(digits: u32, square: bool) -> FieldElement {
    let t = real_tower();
    let d = BigInt::from(10u32).pow(digits);
    let (p, k) = if square { ((BigInt::from(2) * &d * &d).sqrt(), 2usize) } else { ((BigInt::from(2) * d.pow(4)).nth_root(4), 1) };
    let mut c = t.zero_coords();
    c[t.index_of(&[k, 0])] = Rational::from_integer(1.into());
    c[0] = -Rational::new(p, d);
    FieldElement::from_coords(t, c)
}

pub fn sign_sample() -> impl Strategy<Value = FieldElement> {
    let dim = real_tower().dim();
    prop_oneof![
        4 => coords(dim).prop_map(|c| FieldElement::from_coords(real_tower(), c)),
        1 => (1u32..40, any::<bool>(), small_rational()).prop_map(|(d, sq, q)| near_zero(d, sq).scale(&q)),
    ]
}

pub fn check_sign(x: &FieldElement) -> Result<(), TestCaseError> {
    let s = x.sign().map_err(|e| TestCaseError::fail(e.to_string()))?;
    match numeric_sign(x) {
        Some(n) => ensure(n == s, format!("sign {s} vs numeric {n} for {x}")),
        None => ensure(x.is_zero() && s == 0, format!("numerically tiny nonzero {x}")),
    }
}

/// Rational zeros of the base system against a brute-force grid search
/// (two variables only), and membership of each zero in every conjugate.
pub fn diophantine_consistent(gens: &[TPoly], group: &GaloisGroup, height: u64) -> Result<bool, String> {
    let cs = build_conjugate_system(gens, group).map_err(|e| e.to_string())?;
    let v = subalg_core::real_side::rational_points_in_conjugates(&cs, height, 1_000_000).map_err(|e| e.to_string())?;
    if !v.is_proven() || !v.recheck() {
        return Ok(false);
    }
    let (mut pts, complete) = rational_zeros(&cs.base, height, 1_000_000);
    if !complete {
        return Ok(false);
    }
    if gens[0].nvars() == 2 {
        let grid = subalg_core::real_side::grid_values(height);
        let comps: Vec<QPoly> = gens.iter().flat_map(|g| g.coefficient_components()).filter(|c| !c.is_zero()).collect();
        let mut brute = Vec::new();
        for x in &grid {
            for y in &grid {
                let pt = [x.clone(), y.clone()];
                if comps.iter().all(|c| c.evaluate(&pt).unwrap().is_zero()) {
                    brute.push(pt.to_vec());
                }
            }
        }
        pts.sort();
        brute.sort();
        if pts != brute {
            return Ok(false);
        }
    }
    Ok(true)
}
