mod support;

use proptest::prelude::*;

use support::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rational_functions_form_a_field(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn polynomial_gcd_divides(a in bipoly(3, 4, 4), b in bipoly(3, 4, 4), c in nonzero_bipoly()) {
        gcd_divides(&a, &b, &c)?;
    }

    #[test]
    fn render_parse_round_trip(a in ratfunc(), p in bipoly(3, 5, 5)) {
        render_round_trip(&a, &p)?;
    }

    #[test]
    fn x_shift_inverts(a in ratfunc(), k in -3i64..=3) {
        prop_assert_eq!(a.shift_x(k).shift_x(-k), a);
    }

    #[test]
    fn oplus_is_a_commutative_monoid(p in partition(), q in partition(), r in partition()) {
        oplus_monoid(&p, &q, &r)?;
    }

    #[test]
    fn truncations_split(p in partition(), m in 0u32..=10) {
        prop_assert_eq!(p.truncate_le(m).oplus(&p.truncate_gt(m)), p.clone());
        prop_assert!(p.truncate_le(m).parts().iter().all(|&x| x <= m));
        prop_assert!(p.truncate_gt(m).parts().iter().all(|&x| x > m));
    }

    #[test]
    fn appell_partial_sums(a in prop::collection::vec(-20i64..=20, 1..=9), extra in 0usize..6) {
        appell(&a, extra)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn minimization_preserves_language((k, r) in sized_regex()) {
        minimization(k, &r)?;
    }

    #[test]
    fn elimination_preserves_solutions((step, ones, terms) in random_system(), target in 0usize..3) {
        elimination(&build_system(step, &ones, &terms), target, 25)?;
    }
}
