use modal_core::algebra::{FiniteCofinite, IntervalAlgebra, Powerset, Subset};
use modal_core::laws::{boolean_laws, fc_pool, interval_pool, operator_laws, powerset_suite, sampled_suite, Units};
use modal_core::operator::FiniteOp;
use proptest::prelude::*;

const SYMBOLIC_INSTANCES: usize = 10_000;

#[test]
fn exhaustive_on_two_atoms() {
    let r = powerset_suite(2).unwrap();
    // 4³ element triples, then 16³ operator triples at 4² point pairs
    assert_eq!(r.instances, 64 + 4096 * 16);
    assert_eq!(r.violations, 0, "{:?}", r.first);
}

#[test]
fn boolean_laws_exhaustive_on_three_atoms() {
    let alg = Powerset::new(3).unwrap();
    for a in 0..8 {
        for b in 0..8 {
            for c in 0..8 {
                let v = boolean_laws(&alg, &Subset(a), &Subset(b), &Subset(c));
                assert!(v.is_empty(), "{v:?} at ({a}, {b}, {c})");
            }
        }
    }
}

#[test]
fn finite_cofinite_sampled() {
    let r = sampled_suite(&FiniteCofinite, &fc_pool(0).unwrap(), 0, SYMBOLIC_INSTANCES).unwrap();
    assert_eq!(r.instances, 2 * SYMBOLIC_INSTANCES as u64);
    assert_eq!(r.violations, 0, "{:?}", r.first);
}

#[test]
fn intervals_sampled() {
    let r = sampled_suite(&IntervalAlgebra, &interval_pool(0).unwrap(), 0, SYMBOLIC_INSTANCES).unwrap();
    assert_eq!(r.instances, 2 * SYMBOLIC_INSTANCES as u64);
    assert_eq!(r.violations, 0, "{:?}", r.first);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn operator_laws_on_three_atoms(f in 0u64..512, g in 0u64..512, h in 0u64..512, x in 0u32..8, y in 0u32..8) {
        let alg = Powerset::new(3).unwrap();
        let [f, g, h] = [f, g, h].map(|i| FiniteOp::nth(&alg, i));
        let v = operator_laws(&Units::of(&alg), &f, &g, &h, &Subset(x), &Subset(y)).unwrap();
        prop_assert!(v.is_empty(), "{:?}", v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn fc_laws_under_other_seeds(seed in any::<u64>()) {
        let r = sampled_suite(&FiniteCofinite, &fc_pool(seed).unwrap(), seed, 20).unwrap();
        prop_assert_eq!(r.violations, 0, "{:?}", r.first);
    }

    #[test]
    fn interval_laws_under_other_seeds(seed in any::<u64>()) {
        let r = sampled_suite(&IntervalAlgebra, &interval_pool(seed).unwrap(), seed, 20).unwrap();
        prop_assert_eq!(r.violations, 0, "{:?}", r.first);
    }
}
