//! The successor operator on `FC(ω)`, whose dual pseudocomplement exists.

use rand::Rng;

use super::{BundleReport, RunConfig};
use crate::algebra::{seeded_rng, BooleanAlgebra, FcSet, FiniteCofinite, Surface};
use crate::dda::is_decomposing;
use crate::error::OperatorError;
use crate::operator::{eq_on, leq_on, power, ElementMap, RuleOp};
use crate::semilattice::budgeted_annihilator_search;

pub const F_NAME: &str = "jon2.f";

/// Largest exponent for the descent `fⁿ(ω)`.
pub const MAX_DESCENT: u64 = 64;

/// `f(M) = {n + 1 : n ∈ M}`.
pub fn f() -> RuleOp<FiniteCofinite> {
    RuleOp::new(&FiniteCofinite, F_NAME, |m: &FcSet| {
        let shifted = m.stored().iter().map(|n| n + 1);
        if m.is_cofinite() {
            FcSet::cofinite(std::iter::once(0).chain(shifted))
        } else {
            FcSet::finite(shifted)
        }
    })
}

/// `ω ∖ {n+1}` on `{n}`, `ω` on every other nonzero element.
pub fn g() -> RuleOp<FiniteCofinite> {
    template_with("jon2.g", |_| false)
}

/// A companion of `f` with `h({n}) = ω` for the atoms picked by `mask`
/// (bit `n mod 64`) and the value of `g` elsewhere.
pub fn template(mask: u64) -> RuleOp<FiniteCofinite> {
    template_with(&format!("jon2.h[{mask:#x}]"), move |n| mask >> (n % 64) & 1 == 1)
}

fn template_with(name: &str, full_at: impl Fn(u64) -> bool + Send + Sync + 'static) -> RuleOp<FiniteCofinite> {
    RuleOp::new(&FiniteCofinite, name, move |m: &FcSet| match m.as_atom() {
        _ if m.is_empty() => FcSet::empty(),
        Some(n) if !full_at(n) => FcSet::cofinite([n + 1]),
        _ => FcSet::omega(),
    })
}

pub fn run(cfg: &RunConfig) -> Result<BundleReport, OperatorError> {
    let fc = FiniteCofinite;
    let mut r = BundleReport::new("jon2", "fc");
    let mut ops = r.certify("f and g are modal", vec![f(), g()], cfg).into_iter();
    let (f, g) = (ops.next().expect("f"), ops.next().expect("g"));
    let mode = cfg.mode();
    let surface = Surface::of(&fc, cfg.seed, cfg.samples);

    let v = f.apply(&FcSet::finite([1, 3]));
    r.exact("f shifts {1,3} to {2,4}", v == FcSet::finite([2, 4]), format!("f({{1,3}}) = {v}"));
    let v = g.apply(&FcSet::singleton(5));
    r.exact("g({5}) is ω without 6", v == FcSet::cofinite([6]), format!("g({{5}}) = {v}"));
    let v = g.apply(&FcSet::finite([1, 2]));
    r.exact("g is ω off the atoms", v == FcSet::omega(), format!("g({{1,2}}) = {v}"));
    let dec = is_decomposing(&f, &g, &surface);
    r.check(
        "f ∨ g is the discriminator",
        dec.holds(),
        mode,
        dec.witness().map_or("no counterexample".into(), |x| format!("fails at {x}")),
    );

    // companions of f drawn from the template family all lie above g
    let mut rng = seeded_rng(cfg.seed);
    let small = Surface::of(&fc, cfg.seed ^ 0x5eed, cfg.samples / 10);
    let templates = 1000;
    let mut bad = None;
    for _ in 0..templates {
        let mask: u64 = rng.gen();
        let h = template(mask);
        if !is_decomposing(&f, &h, &small).holds() || !leq_on(&g, &h, &small).holds() {
            bad = Some(mask);
            break;
        }
    }
    r.check(
        "g lies below every sampled companion",
        bad.is_none(),
        format!("{templates} templates, {}", small.mode),
        bad.map_or("no template below g".into(), |m| format!("template {m:#x} fails")),
    );

    let descent = (1..=MAX_DESCENT).find(|&n| power(&f, n as u32, &fc.one()) != FcSet::cofinite(0..n));
    r.exact(
        "fⁿ(ω) drops the first n naturals",
        descent.is_none(),
        match descent {
            None => format!("checked n <= {MAX_DESCENT}"),
            Some(n) => format!("fails at n = {n}"),
        },
    );

    let search = budgeted_annihilator_search(&f, &[], cfg.budget, cfg.seed, cfg.samples);
    let found = search.found().map(|h| (h.name().to_string(), eq_on(h, &g, &surface).holds()));
    r.check(
        "budgeted search recovers g",
        matches!(found, Some((_, true))),
        mode,
        match found {
            Some((name, same)) => format!("found {name} after {} candidates, equal to g: {same}", search.tried()),
            None => format!("none within {} candidates", search.tried()),
        },
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_on_cofinite_sets() {
        let f = f();
        assert_eq!(f.apply(&FcSet::cofinite([2])), FcSet::cofinite([0, 3]));
        assert_eq!(f.apply(&FcSet::omega()), FcSet::cofinite([0]));
        assert_eq!(f.apply(&FcSet::empty()), FcSet::empty());
    }

    #[test]
    fn template_with_empty_mask_is_g() {
        let s = Surface::of(&FiniteCofinite, 3, 200);
        assert!(eq_on(&template(0), &g(), &s).holds());
        assert_eq!(template(1).apply(&FcSet::singleton(0)), FcSet::omega());
    }

    #[test]
    fn bundle_passes() {
        let r = run(&RunConfig::default()).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}
