mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_is_a_homomorphism(k in group_index(), x in d4_element(), y in d4_element(), p in d4_poly(), q in d4_poly()) {
        check_conjugation(k, &x, &y, &p, &q)?;
    }

    #[test]
    fn coefficient_components_round_trip(p in d4_poly()) {
        check_components(&p)?;
    }

    #[test]
    fn squarefree_part_is_idempotent(f in q_poly(2), g in q_poly(1)) {
        check_squarefree(&f, &g)?;
    }

    #[test]
    fn gcd_divides_and_cofactors_are_coprime(f1 in q_poly(2), f2 in q_poly(2), h in q_poly(1)) {
        check_gcd(&f1, &f2, &h)?;
    }

    #[test]
    fn sign_matches_numeric_value(x in sign_sample()) {
        check_sign(&x)?;
    }
}

#[test]
fn groups_are_closed() {
    assert!(group_closed(d4_group()));
    assert!(group_closed(&z2_group()));
}
