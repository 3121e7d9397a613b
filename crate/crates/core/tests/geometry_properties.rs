use proptest::prelude::*;
use subalg_core::exact_arith::{FieldElement, Rational};
use subalg_core::groebner::Ideal;
use subalg_core::local_geometry::{point_ideal_generators, rank_at_point, tangent_space, AlgebraicPoint};
use subalg_core::multipoly::{xvars, Monomial};
use subalg_core::projection::ProjectionSpec;
use subalg_core::syntax::{parse_field, parse_qpoly};
use subalg_core::{QPoly, TowerField, Q};

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn cubic() -> Vec<QPoly> {
    ["x2 - x1^2", "x3 - x1^3"].iter().map(|s| parse_qpoly(s, &xvars(3)).unwrap()).collect()
}

fn cubic_point(k: &Rational, b: &Rational) -> AlgebraicPoint {
    let t = parse_field("Q(r : r^2 - 2 in [1.41,1.42])").unwrap();
    let x = FieldElement::generator(&t, 0).scale(b).add(&FieldElement::from_rational(&t, k.clone()));
    AlgebraicPoint::new((1..=3).map(|e| x.pow(e)).collect()).unwrap()
}

fn q3() -> impl Strategy<Value = QPoly> {
    proptest::collection::vec((0u32..3, 0u32..3, 0u32..3, -5i64..=5), 1..=4).prop_map(|terms| {
        let mut p = QPoly::zero(Q, xvars(3));
        for (a, b, c, k) in terms {
            p.add_term(Monomial(vec![a, b, c]), Rational::from_integer(k.into()));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn point_ideals_cut_out_the_point(k in rational(), b in rational()) {
        let a = cubic_point(&k, &b);
        let gens = point_ideal_generators(&a, &xvars(3)).unwrap();
        prop_assert_eq!(gens.len(), 3);
        prop_assert!(a.lies_on(&gens).unwrap());
        prop_assert_eq!(Ideal::new(Q, xvars(3), gens).unwrap().krull_dimension(), 0);
    }

    #[test]
    fn rank_and_tangent_space_are_complementary(k in rational(), b in rational()) {
        let a = cubic_point(&k, &b);
        let rank = rank_at_point(&cubic(), &a).unwrap();
        let tangent = tangent_space(&cubic(), &a).unwrap();
        prop_assert_eq!(rank, 2);
        prop_assert_eq!(rank + tangent.len(), 3);
        let x = &a.coords()[0];
        let v = [FieldElement::one(x.field()), x.scale(&Rational::from_integer(2.into())), x.pow(2).scale(&Rational::from_integer(3.into()))];
        for g in cubic() {
            let d: Vec<FieldElement> = g.gradient().iter().map(|p| p.evaluate_at(a.coords()).unwrap()).collect();
            let dot = d.iter().zip(&v).fold(FieldElement::zero(x.field()), |acc, (p, w)| acc.add(&p.mul(w)));
            prop_assert!(dot.is_zero());
        }
    }

    #[test]
    fn change_of_coordinates_matches_projection(g in q3(), x in proptest::collection::vec(rational(), 3), a in proptest::collection::vec(rational(), 2)) {
        let spec = ProjectionSpec::new(3, 2, vec![vec![a[0].clone()], vec![a[1].clone()]]).unwrap();
        let t = TowerField::rationals();
        let pt: Vec<FieldElement> = x.iter().map(|c| FieldElement::from_rational(&t, c.clone())).collect();
        let mut y = spec.apply_point(&pt).unwrap();
        y.push(pt[2].clone());
        let h = spec.change_coordinates(&[g.clone()]).unwrap().remove(0);
        prop_assert_eq!(h.evaluate_at(&y).unwrap(), g.evaluate_at(&pt).unwrap());
    }

    #[test]
    fn projection_is_linear(u in proptest::collection::vec(rational(), 4), v in proptest::collection::vec(rational(), 4), a in proptest::collection::vec(rational(), 3)) {
        let spec = ProjectionSpec::new(4, 3, a.into_iter().map(|c| vec![c]).collect()).unwrap();
        let t = TowerField::rationals();
        let fe = |w: &[Rational]| -> Vec<FieldElement> { w.iter().map(|c| FieldElement::from_rational(&t, c.clone())).collect() };
        let sum: Vec<Rational> = u.iter().zip(&v).map(|(p, q)| p + q).collect();
        let lhs = spec.apply_vector(&fe(&sum)).unwrap();
        let (pu, pv) = (spec.apply_vector(&fe(&u)).unwrap(), spec.apply_vector(&fe(&v)).unwrap());
        let rhs: Vec<FieldElement> = pu.iter().zip(&pv).map(|(p, q)| p.add(q)).collect();
        prop_assert_eq!(lhs, rhs);
    }
}
