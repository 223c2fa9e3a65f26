//! A closure operator whose image is not dense and which has no proper
//! companion.
//!
//! For `0 < a < 1` and an isomorphism `π: ↓a → ↓−a`, `f(x) = x + π(x·a)`.
//! No nonzero element below `a` is a value of `f`, and
//! `∏{f(y) : 0 < y <= x} = 0` for every nonzero `x`.

use super::iso::PiecewiseIso;
use super::{BundleReport, RunConfig};
use crate::algebra::completion::{interval_meet, CompletionMeet, IntervalFamily};
use crate::algebra::interval::rat;
use crate::algebra::{IntervalAlgebra, IntervalSet, Surface};
use crate::dda::{no_companion_via_density, DensityReason, DensityVerdict};
use crate::error::OperatorError;
use crate::operator::{check_closure, ElementMap, RuleOp};

pub const F_NAME: &str = "exnotdense.f";

pub fn default_a() -> IntervalSet {
    IntervalSet::interval(rat(0, 1), rat(1, 2)).expect("[0,1/2)")
}

/// `π: ↓a → ↓−a`.
pub fn pi(a: &IntervalSet) -> Result<PiecewiseIso, OperatorError> {
    if a.is_empty() || *a == IntervalSet::unit() {
        return Err(OperatorError::BadParameters(format!("a must satisfy 0 < a < 1, got {a}")));
    }
    PiecewiseIso::new(a, &a.complement())
}

pub fn f(a: &IntervalSet) -> Result<RuleOp<IntervalAlgebra>, OperatorError> {
    let pi = pi(a)?;
    let a = a.clone();
    Ok(RuleOp::new(&IntervalAlgebra, format!("{F_NAME}[a = {a}]"), move |x: &IntervalSet| {
        x.union(&pi.apply(&x.intersection(&a)))
    }))
}

/// Two disjoint nonzero elements below `x`, both on one side of `a`.
fn disjoint_pair(x: &IntervalSet, a: &IntervalSet) -> Option<(IntervalSet, IntervalSet)> {
    let inside = x.intersection(a);
    let side = if inside.is_empty() { x.intersection(&a.complement()) } else { inside };
    let (s, t) = side.parts().first()?;
    let mid = (s + t) / rat(2, 1);
    Some((
        IntervalSet::interval(s.clone(), mid.clone()).ok()?,
        IntervalSet::interval(mid, t.clone()).ok()?,
    ))
}

pub fn run(a: &IntervalSet, cfg: &RunConfig) -> Result<BundleReport, OperatorError> {
    let alg = IntervalAlgebra;
    let mut r = BundleReport::new("exnotdense", "intervals");
    let mode = cfg.mode();
    let surface = Surface::of(&alg, cfg.seed, cfg.samples);
    let pi = pi(a)?;
    let f = r.certify("f is modal", vec![f(a)?], cfg).remove(0);
    r.note(format!("a = {a}"));

    let iso_bad = surface.pairs.iter().find(|(x, y)| {
        let (x, y) = (x.intersection(a), y.intersection(a));
        pi.apply(&x.union(&y)) != pi.apply(&x).union(&pi.apply(&y))
            || pi.apply(&x.intersection(&y)) != pi.apply(&x).intersection(&pi.apply(&y))
            || pi.inverse().apply(&pi.apply(&x)) != x
    });
    r.check(
        "π is an isomorphism onto ↓−a",
        iso_bad.is_none() && pi.apply(a) == a.complement(),
        mode,
        iso_bad.map_or(format!("π(a) = {}", pi.apply(a)), |(x, y)| format!("fails at ({x}, {y})")),
    );

    let closure = check_closure(&f, &surface);
    r.check(
        "f is a closure operator",
        closure.holds(),
        mode,
        closure.witness().map_or("no counterexample".into(), |x| format!("fails at {x}")),
    );

    let mut bad_trace = None;
    let mut bad_image = None;
    let mut bad_pi = None;
    for x in &surface.elements {
        let fx = f.apply(x);
        if fx.intersection(a) != x.intersection(a) && bad_trace.is_none() {
            bad_trace = Some(x.clone());
        }
        if !fx.is_empty() && fx.is_subset(a) && bad_image.is_none() {
            bad_image = Some(x.clone());
        }
        if pi.apply(&fx.intersection(a)) != pi.apply(&x.intersection(a)) && bad_pi.is_none() {
            bad_pi = Some(x.clone());
        }
    }
    for (label, bad) in [
        ("f(x)·a = x·a", bad_trace),
        ("no nonzero value of f lies below a", bad_image),
        ("π(f(x)·a) = π(x·a)", bad_pi),
    ] {
        r.check(
            label,
            bad.is_none(),
            mode,
            bad.map_or("no counterexample".into(), |x| format!("fails at {x}")),
        );
    }

    // ∏{f(y) : 0 < y <= x} = 0 via two disjoint y below x
    let mut bad_meet = None;
    for x in surface.nonzero(&alg) {
        let zero = disjoint_pair(x, a).is_some_and(|(y1, y2)| {
            let (f1, f2) = (f.apply(&y1), f.apply(&y2));
            let family = IntervalFamily::Explicit(vec![f1.clone(), f1.intersection(&f2)]);
            matches!(interval_meet(&family, 2), Ok(CompletionMeet::ZeroCertified { .. }))
        });
        if !zero {
            bad_meet = Some(x.clone());
            break;
        }
    }
    r.check(
        "the values of f below any nonzero x meet to 0",
        bad_meet.is_none(),
        mode,
        bad_meet.map_or("two disjoint witnesses per sample".into(), |x| format!("fails at {x}")),
    );

    let density = no_companion_via_density(&f, 1, cfg.budget, cfg.seed, cfg.samples);
    let not_dense = matches!(
        density.verdict,
        DensityVerdict::Inapplicable(DensityReason::NotDense { .. })
    );
    r.check(
        "the density criterion is inapplicable: f[B] is not dense",
        not_dense,
        density.mode,
        format!("{:?}", density.verdict),
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_for_the_default_a() {
        let f = f(&default_a()).unwrap();
        let x = IntervalSet::parse("[1/4,3/4)").unwrap();
        assert_eq!(f.apply(&x), IntervalSet::parse("[1/4,1)").unwrap());
        let y = IntervalSet::parse("[0,1/8)").unwrap();
        assert_eq!(f.apply(&y), IntervalSet::parse("[0,1/8)+[1/2,5/8)").unwrap());
    }

    #[test]
    fn rejects_trivial_a() {
        assert!(pi(&IntervalSet::empty()).is_err());
        assert!(pi(&IntervalSet::unit()).is_err());
    }

    #[test]
    fn bundle_passes() {
        let r = run(&default_a(), &RunConfig::default()).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn bundle_passes_for_a_split_a() {
        let a = IntervalSet::parse("[1/8,1/4)+[1/2,2/3)").unwrap();
        let r = run(&a, &RunConfig::default()).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}
