//! Additivity of each example operator, one property per branch of its
//! definition. Generators force the arguments into the branch named by the
//! test.

use modal_core::algebra::interval::rat;
use modal_core::algebra::{FcSet, IntervalSet, Rat};
use modal_core::bundles::exuf::IdealChoice;
use modal_core::bundles::{exdensepc, exfc, exfree, exnotdense, exuf, jon2};
use modal_core::operator::{ElementMap, RuleOp};
use proptest::prelude::*;

fn additive_at<A: modal_core::algebra::BooleanAlgebra + 'static>(f: &RuleOp<A>, x: &A::Elem, y: &A::Elem) -> bool {
    let alg = f.carrier();
    f.apply(&alg.join(x, y)) == alg.join(&f.apply(x), &f.apply(y))
}

fn finite_set() -> impl Strategy<Value = FcSet> {
    prop::collection::btree_set(0u64..40, 0..6).prop_map(FcSet::finite)
}

fn cofinite_set() -> impl Strategy<Value = FcSet> {
    prop::collection::btree_set(0u64..40, 0..6).prop_map(FcSet::cofinite)
}

/// Unions of intervals with endpoints in `[lo, hi]`, denominators up to 64.
fn intervals_within(lo: Rat, hi: Rat) -> impl Strategy<Value = IntervalSet> {
    prop::collection::vec(0i64..=64, 0..6).prop_map(move |steps| {
        let mut points: Vec<Rat> = steps.iter().map(|k| &lo + (&hi - &lo) * rat(*k, 64)).collect();
        points.sort();
        points.dedup();
        IntervalSet::normalize(points.chunks_exact(2).map(|p| (p[0].clone(), p[1].clone()))).expect("ordered endpoints")
    })
}

fn nonzero_within(lo: Rat, hi: Rat) -> impl Strategy<Value = IntervalSet> {
    intervals_within(lo, hi).prop_filter("nonzero", |x| !x.is_empty())
}

fn anywhere() -> impl Strategy<Value = IntervalSet> {
    intervals_within(rat(0, 1), rat(1, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn jon2_finite_finite(x in finite_set(), y in finite_set()) {
        prop_assert!(additive_at(&jon2::f(), &x, &y));
    }

    #[test]
    fn jon2_finite_cofinite(x in finite_set(), y in cofinite_set()) {
        prop_assert!(additive_at(&jon2::f(), &x, &y));
    }

    #[test]
    fn jon2_cofinite_cofinite(x in cofinite_set(), y in cofinite_set()) {
        prop_assert!(additive_at(&jon2::f(), &x, &y));
    }

    #[test]
    fn jon2_g_atoms_and_larger(x in finite_set(), y in prop_oneof![finite_set(), cofinite_set()]) {
        prop_assert!(additive_at(&jon2::g(), &x, &y));
    }

    #[test]
    fn exfc_finite_finite(x in finite_set(), y in finite_set()) {
        prop_assert!(additive_at(&exfc::f(), &x, &y));
    }

    #[test]
    fn exfc_finite_cofinite(x in finite_set(), y in cofinite_set()) {
        prop_assert!(additive_at(&exfc::f(), &x, &y));
    }

    #[test]
    fn exfc_cofinite_cofinite(x in cofinite_set(), y in cofinite_set()) {
        prop_assert!(additive_at(&exfc::f(), &x, &y));
    }

    #[test]
    fn exfc_companions(i in 1u64..12, x in prop_oneof![finite_set(), cofinite_set()], y in prop_oneof![finite_set(), cofinite_set()]) {
        prop_assert!(additive_at(&exfc::g(i).unwrap(), &x, &y));
    }

    #[test]
    fn exfree_last_end_on_the_left(x in nonzero_within(rat(1, 2), rat(1, 1)), y in anywhere()) {
        prop_assume!(x.last_end() >= y.last_end());
        prop_assert!(additive_at(&exfree::f(), &x, &y));
    }

    #[test]
    fn exfree_last_end_on_the_right(x in intervals_within(rat(0, 1), rat(1, 2)), y in nonzero_within(rat(1, 2), rat(1, 1))) {
        prop_assert!(additive_at(&exfree::f(), &x, &y));
    }

    #[test]
    fn exfree_shared_last_end(x in anywhere(), y in anywhere(), e in 1i64..64) {
        let cut = rat(e, 64);
        let tail = IntervalSet::interval(rat(e - 1, 64), cut.clone()).unwrap();
        let below = IntervalSet::interval(rat(0, 1), cut).unwrap();
        let (x, y) = (x.intersection(&below).union(&tail), y.intersection(&below).union(&tail));
        prop_assert_eq!(x.last_end(), y.last_end());
        prop_assert!(additive_at(&exfree::f(), &x, &y));
    }

    // the ideal avoids 1/3: sets bounded away from it are members
    #[test]
    fn exuf_member_member(x in intervals_within(rat(0, 1), rat(1, 4)), y in intervals_within(rat(1, 2), rat(1, 1))) {
        let f = exuf::f(&IdealChoice::AvoidPoint(rat(1, 3))).unwrap();
        prop_assert!(additive_at(&f, &x, &y));
    }

    #[test]
    fn exuf_member_outsider(x in intervals_within(rat(1, 2), rat(1, 1)), y in anywhere(), s in 0i64..20) {
        let f = exuf::f(&IdealChoice::AvoidPoint(rat(1, 3))).unwrap();
        // closure of [s, 1/3) contains 1/3
        let y = y.union(&IntervalSet::interval(rat(s, 64), rat(1, 3)).unwrap());
        prop_assert!(additive_at(&f, &x, &y));
    }

    #[test]
    fn exuf_outsider_outsider(x in anywhere(), y in anywhere()) {
        let f = exuf::f(&IdealChoice::AvoidPoint(rat(1, 3))).unwrap();
        let around = IntervalSet::interval(rat(1, 4), rat(1, 2)).unwrap();
        prop_assert!(additive_at(&f, &x.union(&around), &y.union(&around)));
    }

    // a = [0,1/2)
    #[test]
    fn exnotdense_both_meet_a(x in nonzero_within(rat(0, 1), rat(1, 2)), y in nonzero_within(rat(0, 1), rat(1, 2)), u in anywhere(), v in anywhere()) {
        let f = exnotdense::f(&exnotdense::default_a()).unwrap();
        prop_assert!(additive_at(&f, &x.union(&u), &y.union(&v)));
    }

    #[test]
    fn exnotdense_one_meets_a(x in nonzero_within(rat(0, 1), rat(1, 2)), y in intervals_within(rat(1, 2), rat(1, 1))) {
        let f = exnotdense::f(&exnotdense::default_a()).unwrap();
        prop_assert!(additive_at(&f, &x, &y));
    }

    #[test]
    fn exnotdense_neither_meets_a(x in intervals_within(rat(1, 2), rat(1, 1)), y in intervals_within(rat(1, 2), rat(1, 1))) {
        let f = exnotdense::f(&exnotdense::default_a()).unwrap();
        prop_assert!(additive_at(&f, &x, &y));
    }

    // a = [0,1/4), b = [1/4,1/2), c = [1/2,1)
    #[test]
    fn exdensepc_both_meet_a(x in nonzero_within(rat(0, 1), rat(1, 4)), y in anywhere()) {
        let (a, b, c) = exdensepc::default_parts();
        let f = exdensepc::f(&a, &b, &c).unwrap();
        prop_assert!(additive_at(&f, &x, &y.union(&x)));
    }

    #[test]
    fn exdensepc_one_meets_a(x in nonzero_within(rat(0, 1), rat(1, 4)), y in intervals_within(rat(1, 4), rat(1, 1))) {
        let (a, b, c) = exdensepc::default_parts();
        let f = exdensepc::f(&a, &b, &c).unwrap();
        prop_assert!(additive_at(&f, &x, &y));
    }

    #[test]
    fn exdensepc_neither_meets_a(x in intervals_within(rat(1, 4), rat(1, 1)), y in intervals_within(rat(1, 4), rat(1, 1))) {
        let (a, b, c) = exdensepc::default_parts();
        let f = exdensepc::f(&a, &b, &c).unwrap();
        prop_assert!(additive_at(&f, &x, &y));
    }

    #[test]
    fn exdensepc_companion(x in anywhere(), y in anywhere()) {
        let (a, _, _) = exdensepc::default_parts();
        prop_assert!(additive_at(&exdensepc::g(&a), &x, &y));
    }
}
