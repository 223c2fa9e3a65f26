//! A closure operator with dense image and no proper companion.
//!
//! For a dense ideal `I` of the interval algebra, `f(x) = x` on `I` and
//! `f(x) = 1` elsewhere. A companion `g` has `g(y) = 1` on `I⁺` because each
//! such `y` splits into two disjoint nonzero members of `I`, and then on every
//! nonzero element by density.

use std::fmt;
use std::sync::Arc;

use super::{BundleReport, RunConfig};
use crate::algebra::ideal::{avoiding_point, Ideal};
use crate::algebra::interval::rat;
use crate::algebra::{seeded_rng, BooleanAlgebra, IntervalAlgebra, IntervalSet, Rat, Surface};
use crate::dda::{is_decomposing, no_companion_via_density, proper_companion_decide, Decision};
use crate::error::OperatorError;
use crate::operator::{check_axiom, check_closure, is_unary_discriminator, Axiom, ElementMap, RuleOp};
use crate::semilattice::budgeted_annihilator_search;

pub const F_NAME: &str = "exuf.f";

/// The dense ideal used by the bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealChoice {
    /// Elements whose closure avoids the given point of `(0, 1]`.
    AvoidPoint(Rat),
}

impl Default for IdealChoice {
    /// Elements bounded away from 1.
    fn default() -> Self {
        IdealChoice::AvoidPoint(rat(1, 1))
    }
}

impl fmt::Display for IdealChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealChoice::AvoidPoint(q) => write!(f, "avoid({q})"),
        }
    }
}

impl IdealChoice {
    pub fn ideal(&self) -> Result<Ideal<IntervalAlgebra>, OperatorError> {
        match self {
            IdealChoice::AvoidPoint(q) => Ok(avoiding_point(q.clone())?),
        }
    }
}

pub fn f(choice: &IdealChoice) -> Result<RuleOp<IntervalAlgebra>, OperatorError> {
    let ideal = Arc::new(choice.ideal()?);
    Ok(RuleOp::new(&IntervalAlgebra, format!("{F_NAME}[{choice}]"), move |x: &IntervalSet| {
        if ideal.contains(x) {
            x.clone()
        } else {
            IntervalSet::unit()
        }
    }))
}

/// Splits the first relevant interval of `x` at its midpoint; the rest of
/// `x` goes to the second half.
fn split(x: &IntervalSet) -> Option<(IntervalSet, IntervalSet)> {
    let (s, t) = x.parts().first()?;
    let mid = (s + t) / rat(2, 1);
    let left = IntervalSet::interval(s.clone(), mid).ok()?;
    let right = x.intersection(&left.complement());
    Some((left, right))
}

pub fn run(choice: &IdealChoice, cfg: &RunConfig) -> Result<BundleReport, OperatorError> {
    let alg = IntervalAlgebra;
    let mut r = BundleReport::new("exuf", "intervals");
    let mode = cfg.mode();
    let surface = Surface::of(&alg, cfg.seed, cfg.samples);
    let ideal = choice.ideal()?;
    let f = r.certify("f is modal", vec![f(choice)?], cfg).remove(0);
    r.note(format!("ideal: {}", ideal.name()));

    if *choice == IdealChoice::default() {
        let x = IntervalSet::parse("[0,1/2)")?;
        let v = f.apply(&x);
        r.exact("f fixes [0,1/2), a member of the ideal", v == x, format!("f([0,1/2)) = {v}"));
    }

    let closure = check_closure(&f, &surface);
    r.check(
        "f is a closure operator",
        closure.holds(),
        mode,
        closure.witness().map_or("no counterexample".into(), |x| format!("fails at {x}")),
    );
    let t4 = check_axiom(&f, Axiom::T, &surface).holds() && check_axiom(&f, Axiom::Four, &surface).holds();
    r.check("f satisfies T and 4", t4, mode, "x <= f(x) and f(f(x)) <= f(x)");

    // the two steps that force g(x) = 1
    let mut rng = seeded_rng(cfg.seed);
    let mut bad_split = None;
    let mut bad_dense = None;
    for x in surface.nonzero(&alg) {
        if ideal.contains(x) {
            let ok = split(x).is_some_and(|(y, z)| {
                !y.is_empty()
                    && !z.is_empty()
                    && ideal.contains(&y)
                    && ideal.contains(&z)
                    && y.intersection(&z).is_empty()
                    && y.union(&z) == *x
                    && y.complement().union(&z.complement()) == alg.one()
            });
            if !ok && bad_split.is_none() {
                bad_split = Some(x.clone());
            }
        } else if ideal.sample_below(x, &mut rng).is_none() && bad_dense.is_none() {
            bad_dense = Some(x.clone());
        }
    }
    r.check(
        "members of the ideal split into disjoint nonzero members",
        bad_split.is_none(),
        mode,
        bad_split.map_or("no counterexample".into(), |x| format!("fails at {x}")),
    );
    r.check(
        "every nonzero element lies above a nonzero member of the ideal",
        bad_dense.is_none(),
        mode,
        bad_dense.map_or("no counterexample".into(), |x| format!("fails at {x}")),
    );

    let density = no_companion_via_density(&f, 1, cfg.budget, cfg.seed, cfg.samples);
    r.check(
        "the density criterion applies with n = 1",
        density.applies(),
        density.mode,
        format!("{:?}, {} targets", density.verdict, density.dense_checked),
    );

    let decided = proper_companion_decide(&f, cfg.budget, cfg.seed, cfg.samples);
    r.check(
        "the witness search finds no proper companion",
        decided.decision != Decision::ProperExists,
        mode,
        format!("{} after {} grid elements", decided.decision, decided.budget_used),
    );

    let grid_only = budgeted_annihilator_search(&f, &[], cfg.budget, cfg.seed, cfg.samples);
    r.check(
        "no f_x on the grid is a companion",
        grid_only.found().is_none(),
        mode,
        format!("{} candidates", grid_only.tried()),
    );
    let with_top = budgeted_annihilator_search(
        &f,
        &[RuleOp::discriminator(&alg)],
        cfg.budget,
        cfg.seed,
        cfg.samples,
    );
    let top_like = with_top
        .found()
        .map(|g| is_decomposing(&f, g, &surface).holds() && is_unary_discriminator(g, &surface).holds());
    r.check(
        "every companion found is the discriminator on the sample",
        top_like == Some(true),
        mode,
        match with_top.found() {
            Some(g) => format!("found {}", g.name()),
            None => format!("none within {} candidates", with_top.tried()),
        },
    );
    Ok(r)
}
