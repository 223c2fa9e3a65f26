//! An operator with dense image and a proper companion.
//!
//! `a`, `b`, `c` partition the unit, `π: ↓b → ↓a` and `ψ: ↓c → ↓−a` are
//! isomorphisms. `f(x) = 1` when `x·a ≠ 0` and `π(x·b) + ψ(x·c)` otherwise;
//! `g` is `a` on `↓a ∖ {0}` and `1` on the other nonzero elements.

use super::iso::PiecewiseIso;
use super::{BundleReport, RunConfig};
use crate::algebra::interval::rat;
use crate::algebra::{BooleanAlgebra, IntervalAlgebra, IntervalSet, Surface};
use crate::dda::{is_decomposing, no_companion_via_density, proper_companion_decide, Decision, DensityReason, DensityVerdict};
use crate::error::OperatorError;
use crate::operator::{is_unary_discriminator, ElementMap, RuleOp};

pub const F_NAME: &str = "exdensepc.f";
pub const G_NAME: &str = "exdensepc.g";

pub fn default_parts() -> (IntervalSet, IntervalSet, IntervalSet) {
    let iv = |s, t| IntervalSet::interval(s, t).expect("dyadic");
    (
        iv(rat(0, 1), rat(1, 4)),
        iv(rat(1, 4), rat(1, 2)),
        iv(rat(1, 2), rat(1, 1)),
    )
}

/// The isomorphisms `π` and `ψ` after checking that `a`, `b`, `c` are
/// nonzero, pairwise disjoint and sum to 1.
pub fn isos(a: &IntervalSet, b: &IntervalSet, c: &IntervalSet) -> Result<(PiecewiseIso, PiecewiseIso), OperatorError> {
    let bad = |why: &str| Err(OperatorError::BadParameters(format!("a = {a}, b = {b}, c = {c}: {why}")));
    if a.is_empty() || b.is_empty() || c.is_empty() {
        return bad("parts must be nonzero");
    }
    let disjoint = [(a, b), (a, c), (b, c)].iter().all(|(x, y)| x.intersection(y).is_empty());
    if !disjoint {
        return bad("parts must be disjoint");
    }
    if a.union(b).union(c) != IntervalSet::unit() {
        return bad("parts must sum to 1");
    }
    Ok((PiecewiseIso::new(b, a)?, PiecewiseIso::new(c, &a.complement())?))
}

pub fn f(a: &IntervalSet, b: &IntervalSet, c: &IntervalSet) -> Result<RuleOp<IntervalAlgebra>, OperatorError> {
    let (pi, psi) = isos(a, b, c)?;
    let a = a.clone();
    let name = format!("{F_NAME}[a = {a}, b = {}, c = {}]", pi.from(), psi.from());
    Ok(RuleOp::new(&IntervalAlgebra, name, move |x: &IntervalSet| {
        if !x.intersection(&a).is_empty() {
            IntervalSet::unit()
        } else {
            pi.apply(x).union(&psi.apply(x))
        }
    }))
}

pub fn g(a: &IntervalSet) -> RuleOp<IntervalAlgebra> {
    let a = a.clone();
    RuleOp::new(&IntervalAlgebra, format!("{G_NAME}[a = {a}]"), move |x: &IntervalSet| {
        if x.is_empty() {
            IntervalSet::empty()
        } else if x.is_subset(&a) {
            a.clone()
        } else {
            IntervalSet::unit()
        }
    })
}

pub fn run(a: &IntervalSet, b: &IntervalSet, c: &IntervalSet, cfg: &RunConfig) -> Result<BundleReport, OperatorError> {
    let alg = IntervalAlgebra;
    let mut r = BundleReport::new("exdensepc", "intervals");
    let mode = cfg.mode();
    let surface = Surface::of(&alg, cfg.seed, cfg.samples);
    let (pi, psi) = isos(a, b, c)?;
    let mut ops = r.certify("f and g are modal", vec![f(a, b, c)?, g(a)], cfg);
    let g = ops.pop().expect("g");
    let f = ops.pop().expect("f");
    r.note(format!("a = {a}, b = {b}, c = {c}"));

    let restricted = surface.elements.iter().find(|x| {
        let (xb, xc) = (x.intersection(b), x.intersection(c));
        f.apply(&xb) != pi.apply(&xb) || f.apply(&xc) != psi.apply(&xc)
    });
    r.check(
        "f is π below b and ψ below c",
        restricted.is_none(),
        mode,
        restricted.map_or("no counterexample".into(), |x| format!("fails at {x}")),
    );

    // a preimage below b or c through the inverse isomorphisms
    let (pi_inv, psi_inv) = (pi.inverse(), psi.inverse());
    let not_dense = surface.nonzero(&alg).find(|z| {
        let za = z.intersection(a);
        let t = if za.is_empty() {
            psi_inv.apply(&z.intersection(&a.complement()))
        } else {
            pi_inv.apply(&za)
        };
        let ft = f.apply(&t);
        ft.is_empty() || !ft.is_subset(z)
    });
    r.check(
        "f[B] is dense",
        not_dense.is_none(),
        mode,
        not_dense.map_or("no counterexample".into(), |z| format!("fails at {z}")),
    );

    let dec = is_decomposing(&f, &g, &surface);
    let proper = !is_unary_discriminator(&g, &surface).holds();
    r.check(
        "g is a proper companion of f",
        dec.holds() && proper && g.apply(a) == *a,
        mode,
        dec.witness().map_or(format!("g(a) = {}", g.apply(a)), |x| format!("fails at {x}")),
    );
    let top = g.apply(&alg.one());
    r.exact("g(1) = 1", top == alg.one(), format!("g(1) = {top}"));

    let decided = proper_companion_decide(&f, cfg.budget, cfg.seed, cfg.samples);
    r.check(
        "the witness search finds a proper companion",
        decided.decision == Decision::ProperExists,
        mode,
        match (&decided.x, &decided.z) {
            (Some(x), Some(z)) => format!("x = {x}, z = {z}"),
            _ => format!("{} after {} grid elements", decided.decision, decided.budget_used),
        },
    );

    let density = no_companion_via_density(&f, 1, cfg.budget, cfg.seed, cfg.samples);
    let not_transitive = matches!(
        density.verdict,
        DensityVerdict::Inapplicable(DensityReason::NotTransitive { .. })
    );
    r.check(
        "the density criterion is inapplicable: f is not transitive",
        not_transitive,
        density.mode,
        format!("{:?}", density.verdict),
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_for_the_default_parts() {
        let (a, b, c) = default_parts();
        let f = f(&a, &b, &c).unwrap();
        assert_eq!(f.apply(&IntervalSet::parse("[1/4,3/8)").unwrap()), IntervalSet::parse("[0,1/8)").unwrap());
        assert_eq!(f.apply(&IntervalSet::parse("[1/2,3/4)").unwrap()), IntervalSet::parse("[1/4,5/8)").unwrap());
        assert_eq!(f.apply(&IntervalSet::parse("[1/8,3/4)").unwrap()), IntervalSet::unit());
    }

    #[test]
    fn rejects_bad_partitions() {
        let (a, b, c) = default_parts();
        assert!(isos(&a, &c, &c).is_err());
        assert!(isos(&a, &b, &IntervalSet::parse("[1/2,3/4)").unwrap()).is_err());
        assert!(isos(&IntervalSet::empty(), &b, &c).is_err());
    }

    #[test]
    fn bundle_passes() {
        let (a, b, c) = default_parts();
        let r = run(&a, &b, &c, &RunConfig::default()).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}
