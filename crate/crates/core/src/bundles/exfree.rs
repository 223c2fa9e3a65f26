//! An operator on the rational interval algebra without a dual
//! pseudocomplement.
//!
//! `f(x) = [0, h(e))` where `e` is the right end of the last relevant
//! interval of `x` and `h` is an order isomorphism from `(0,1) ∩ ℚ` onto
//! `(p,1) ∩ ℚ` with `p = √2/2`. The companions `f_s(x) = [s,1)` for rational
//! `s < p` meet to `[p,1)`, which is not an element.

use std::cmp::Ordering;
use std::sync::Arc;

use rand::Rng;

use super::backforth::BackAndForth;
use super::{BundleReport, RunConfig};
use crate::algebra::completion::{interval_meet, IntervalFamily, RealInterval};
use crate::algebra::interval::rat;
use crate::algebra::{
    seeded_rng, BooleanAlgebra, IntervalAlgebra, IntervalSet, QuadIrrational, Rat, RealPoint, Surface,
};
use crate::dda::is_decomposing;
use crate::error::OperatorError;
use crate::operator::{leq_on, ElementMap, RuleOp};
use crate::semilattice::budgeted_annihilator_search;

pub const F_NAME: &str = "exfree.f";

/// Sampled pairs for the order check on `h`.
pub const ORDER_PAIRS: usize = 1000;

pub fn p() -> RealPoint {
    RealPoint::Quadratic(QuadIrrational::half_sqrt2())
}

/// The isomorphism `h` shared by every operator of the bundle.
pub fn iso() -> Arc<BackAndForth> {
    Arc::new(BackAndForth::new(p()).expect("√2/2 lies in (0,1)"))
}

pub fn f_with(h: Arc<BackAndForth>) -> RuleOp<IntervalAlgebra> {
    RuleOp::new(&IntervalAlgebra, F_NAME, move |x: &IntervalSet| match x.last_end() {
        None => IntervalSet::empty(),
        Some(e) => {
            let v = h.h(e).expect("last end lies in (0,1]");
            IntervalSet::interval(rat(0, 1), v).expect("image inside [0,1]")
        }
    })
}

pub fn f() -> RuleOp<IntervalAlgebra> {
    f_with(iso())
}

/// `f_s(x) = [s, 1)` for nonzero `x`.
pub fn f_s(s: &Rat) -> Result<RuleOp<IntervalAlgebra>, OperatorError> {
    let value = IntervalSet::interval(s.clone(), rat(1, 1))?;
    if *s <= rat(0, 1) || p().cmp_rational(s) != Ordering::Greater {
        return Err(OperatorError::BadParameters(format!("f_s needs 0 < s < p, got {s}")));
    }
    Ok(RuleOp::new(&IntervalAlgebra, format!("exfree.f_s[{s}]"), move |x: &IntervalSet| {
        if x.is_empty() {
            IntervalSet::empty()
        } else {
            value.clone()
        }
    }))
}

/// Random rationals of `(0, 1)` with denominators up to 4096.
fn random_unit_rat(rng: &mut impl Rng) -> Rat {
    let d = rng.gen_range(2..=4096i64);
    rat(rng.gen_range(1..d), d)
}

pub fn run(cfg: &RunConfig) -> Result<BundleReport, OperatorError> {
    let alg = IntervalAlgebra;
    let mut r = BundleReport::new("exfree", "intervals");
    let mode = cfg.mode();
    let surface = Surface::of(&alg, cfg.seed, cfg.samples);
    let h = iso();
    let p = p();

    let mut rng = seeded_rng(cfg.seed);
    let mut bad_order = None;
    for _ in 0..ORDER_PAIRS {
        let (a, b) = (random_unit_rat(&mut rng), random_unit_rat(&mut rng));
        let (ha, hb) = (h.h(&a).expect("in range"), h.h(&b).expect("in range"));
        let inside = |v: &Rat| p.cmp_rational(v) == Ordering::Less && *v < rat(1, 1);
        if a.cmp(&b) != ha.cmp(&hb) || !inside(&ha) || !inside(&hb) {
            bad_order = Some((a, b));
            break;
        }
    }
    r.check(
        "h is an order embedding into (p,1)",
        bad_order.is_none(),
        format!("randomized({ORDER_PAIRS} pairs)"),
        match &bad_order {
            None => format!("{} memoized nodes", h.memo_len()),
            Some((a, b)) => format!("fails at ({a}, {b})"),
        },
    );

    let f = f_with(h.clone());
    let f = r.certify("f is modal", vec![f], cfg).remove(0);
    r.exact("f(0) = 0", f.apply(&alg.zero()).is_empty(), "f(0) computed");

    let max_law = surface.pairs.iter().find(|(x, y)| {
        let joint = x.union(y);
        let ends = [x.last_end(), y.last_end()];
        joint.last_end() != ends.into_iter().flatten().max() || f.apply(&joint) != f.apply(x).union(&f.apply(y))
    });
    r.check(
        "the last right end of a join is the larger one",
        max_law.is_none(),
        mode,
        max_law.map_or("no counterexample".into(), |(x, y)| format!("fails at ({x}, {y})")),
    );

    // f_s for the dyadic approximations of p from below
    let levels = cfg.budget.max(1) as u32;
    let companions: Vec<RuleOp<IntervalAlgebra>> = (1..=levels)
        .map(|k| f_s(&p.dyadic_floor(k)))
        .collect::<Result<_, _>>()?;
    let companions = r.certify("the f_s are modal", companions, cfg);
    let bad_s = companions.iter().find(|g| !is_decomposing(&f, *g, &surface).holds());
    r.check(
        "f ∨ f_s is the discriminator for dyadic s < p",
        bad_s.is_none(),
        mode,
        bad_s.map_or(format!("{} values of s", companions.len()), |g| format!("{} fails", g.name())),
    );
    let chain = companions.windows(2).all(|w| leq_on(&w[1], &w[0], &surface).holds());
    r.check("f_s decreases as s grows", chain, mode, "consecutive dyadic levels");

    let search = budgeted_annihilator_search(&f, &companions, cfg.budget, cfg.seed, cfg.samples);
    match search.found() {
        None => r.check(
            "budgeted search finds a companion",
            false,
            mode,
            format!("none within {} candidates", search.tried()),
        ),
        Some(g) => {
            // −f(y) <= g(x) for 0 < y <= x
            let mut bad = None;
            'outer: for x in surface.nonzero(&alg) {
                for _ in 0..4 {
                    if let Some(y) = alg.random_below(x, &mut rng) {
                        if !alg.complement(&f.apply(&y)).is_subset(&g.apply(x)) {
                            bad = Some((x.clone(), y));
                            break 'outer;
                        }
                    }
                }
            }
            r.check(
                "a found companion bounds every −f(y) below x",
                bad.is_none(),
                mode,
                match bad {
                    None => format!("found {} after {} candidates", g.name(), search.tried()),
                    Some((x, y)) => format!("{} fails at x = {x}, y = {y}", g.name()),
                },
            );
        }
    }

    let rising = IntervalFamily::RisingStart {
        end: rat(1, 1),
        limit: p.clone(),
        starts: {
            let p = p.clone();
            Box::new(move |k| p.dyadic_floor(k as u32 + 1))
        },
    };
    let expected_upper = vec![RealInterval {
        start: p.clone(),
        end: RealPoint::Rational(rat(1, 1)),
    }];
    let meet = interval_meet(&rising, cfg.budget)?;
    let value = meet.value().cloned();
    r.exact(
        "the f_s meet to [p,1) outside the carrier",
        value.as_ref().is_some_and(|v| v.0 == expected_upper && !v.in_carrier()),
        value.map_or(format!("{meet:?}"), |v| format!("meet = {v}")),
    );

    let falling = IntervalFamily::FallingEnd {
        start: rat(0, 1),
        limit: p.clone(),
        ends: {
            let h = h.clone();
            Box::new(move |k| h.h(&rat(1, k as i64 + 2)).expect("in range"))
        },
    };
    let expected_lower = vec![RealInterval {
        start: RealPoint::Rational(rat(0, 1)),
        end: p.clone(),
    }];
    let meet = interval_meet(&falling, cfg.budget)?;
    let value = meet.value().cloned();
    r.exact(
        "the images f(y) for small y meet to [0,p)",
        value.as_ref().is_some_and(|v| v.0 == expected_lower && !v.in_carrier()),
        value.map_or(format!("{meet:?}"), |v| format!("meet = {v}")),
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_simple_elements() {
        let f = f();
        let x = IntervalSet::parse("[0,1/4)+[1/3,1/2)").unwrap();
        assert_eq!(f.apply(&x), IntervalSet::parse("[0,3/4)").unwrap());
        assert_eq!(f.apply(&IntervalSet::parse("[1/2,1)").unwrap()), IntervalSet::unit());
    }

    #[test]
    fn f_s_needs_s_below_p() {
        assert!(f_s(&rat(1, 2)).is_ok());
        assert!(f_s(&rat(3, 4)).is_err());
        assert!(f_s(&rat(0, 1)).is_err());
    }

    #[test]
    fn bundle_passes() {
        let r = run(&RunConfig::default()).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}
