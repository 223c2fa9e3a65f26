//! An operator on `FC(ω)` without a dual pseudocomplement.
//!
//! `f({0}) = {0}`, `f({n}) = ω ∖ {0}` for positive even `n` and
//! `f({n}) = ω ∖ {n}` for odd `n`, extended by unions. Every cofinite set
//! maps to `ω`. The companions `g_i` differ only on cofinite sets avoiding
//! `0`, where they omit the `i`-th positive even number.

use super::{BundleReport, RunConfig};
use crate::algebra::completion::{fc_meet, CompletionMeet, FcFamily, OmegaSet};
use crate::algebra::{FcSet, FiniteCofinite, Surface};
use crate::dda::is_decomposing;
use crate::duality::fc::{FcCanonicalFrame, FcPoint, FcPointSet};
use crate::error::OperatorError;
use crate::operator::{ElementMap, RuleOp};
use crate::semilattice::budgeted_annihilator_search;

pub const F_NAME: &str = "exfc.f";

/// Members `g_i` checked by the bundle.
pub const CHECKED_MEMBERS: u64 = 12;

/// Principal points covered by the canonical-frame checks.
pub const FRAME_TRUNCATION: u64 = 64;

pub struct ExFc {
    pub f: RuleOp<FiniteCofinite>,
    pub p: RuleOp<FiniteCofinite>,
}

impl ExFc {
    pub fn g(&self, i: u64) -> Result<RuleOp<FiniteCofinite>, OperatorError> {
        g(i)
    }
}

pub fn bundle() -> ExFc {
    ExFc { f: f(), p: p() }
}

fn f_atom(n: u64) -> FcSet {
    match n {
        0 => FcSet::singleton(0),
        n if n % 2 == 0 => FcSet::cofinite([0]),
        n => FcSet::cofinite([n]),
    }
}

/// Union of the atom images over a finite set.
fn union_of_atoms(m: &FcSet, atom: impl Fn(u64) -> FcSet) -> FcSet {
    m.stored()
        .iter()
        .fold(FcSet::empty(), |acc, n| acc.union(&atom(*n)))
}

pub fn f() -> RuleOp<FiniteCofinite> {
    RuleOp::new(&FiniteCofinite, F_NAME, |m: &FcSet| {
        if m.is_cofinite() {
            FcSet::omega()
        } else {
            union_of_atoms(m, f_atom)
        }
    })
}

/// The `i`-th positive even number.
pub fn n_i(i: u64) -> u64 {
    2 * i
}

/// `g_i`, `i >= 1`.
pub fn g(i: u64) -> Result<RuleOp<FiniteCofinite>, OperatorError> {
    if i == 0 {
        return Err(OperatorError::BadParameters("g_i needs i >= 1".into()));
    }
    let omit = n_i(i);
    Ok(RuleOp::new(&FiniteCofinite, format!("exfc.g{i}"), move |m: &FcSet| {
        if m.is_empty() {
            FcSet::empty()
        } else if m.contains(0) {
            FcSet::omega()
        } else if m.is_cofinite() {
            FcSet::cofinite([omit])
        } else {
            union_of_atoms(m, |n| if n % 2 == 0 { FcSet::singleton(0) } else { FcSet::singleton(n) })
        }
    }))
}

/// `{0}` on positive even atoms, `{n}` on odd atoms, `ω ∖ {0}` on `{0}` and
/// `ω` on cofinite sets.
pub fn p() -> RuleOp<FiniteCofinite> {
    RuleOp::new(&FiniteCofinite, "exfc.p", |m: &FcSet| {
        if m.is_cofinite() {
            FcSet::omega()
        } else {
            union_of_atoms(m, |n| match n {
                0 => FcSet::cofinite([0]),
                n if n % 2 == 0 => FcSet::singleton(0),
                n => FcSet::singleton(n),
            })
        }
    })
}

/// The edge display as printed in the source of this example.
fn printed_edge(n: u64, m: u64) -> bool {
    (n == 0 && (m == 0 || m % 2 == 1)) || (n.is_multiple_of(2) && m != 0) || (n % 2 == 1 && n != m)
}

pub fn run(cfg: &RunConfig) -> Result<BundleReport, OperatorError> {
    let fc = FiniteCofinite;
    let mut r = BundleReport::new("exfc", "fc");
    let mode = cfg.mode();
    let surface = Surface::of(&fc, cfg.seed, cfg.samples);
    let mut ops = vec![f(), p()];
    for i in 1..=CHECKED_MEMBERS {
        ops.push(g(i)?);
    }
    let mut ops = r.certify("f, p and g_1..g_12 are modal", ops, cfg);
    let gs = ops.split_off(2);
    let (f, p) = (ops[0].clone(), ops[1].clone());

    for (n, expected, label) in [
        (2, FcSet::cofinite([0]), "positive even atom maps to ω ∖ {0}"),
        (3, FcSet::cofinite([3]), "odd atom n maps to ω ∖ {n}"),
        (0, FcSet::singleton(0), "{0} maps to itself"),
    ] {
        let v = f.apply(&FcSet::singleton(n));
        r.exact(label, v == expected, format!("f({{{n}}}) = {v}"));
    }

    // every cofinite set holds a positive even and an odd number
    let cof_bad = surface.elements.iter().filter(|m| m.is_cofinite()).find(|m| {
        let bound = m.stored().iter().max().copied().unwrap_or(0) + 4;
        let even = (1..bound).find(|n| n % 2 == 0 && m.contains(*n));
        let odd = (1..bound).find(|n| n % 2 == 1 && m.contains(*n));
        match (even, odd) {
            (Some(e), Some(o)) => !f_atom(e).union(&f_atom(o)).is_omega() || !f.apply(m).is_omega(),
            _ => true,
        }
    });
    r.check(
        "cofinite sets map to ω through two atoms",
        cof_bad.is_none(),
        mode,
        cof_bad.map_or("no counterexample".into(), |m| format!("fails at {m}")),
    );

    let bad_g = gs.iter().find(|g| !is_decomposing(&f, *g, &surface).holds());
    r.check(
        "f ∨ g_i is the discriminator for i <= 12",
        bad_g.is_none(),
        mode,
        bad_g.map_or("no counterexample".into(), |g| format!("{} fails", g.name())),
    );
    let dec_p = is_decomposing(&f, &p, &surface);
    r.check(
        "f ∨ p is the discriminator",
        dec_p.holds(),
        mode,
        dec_p.witness().map_or("no counterexample".into(), |x| format!("fails at {x}")),
    );
    let witness = FcSet::cofinite([0]);
    let p_above = gs.iter().all(|g| !p.apply(&witness).is_subset(&g.apply(&witness)));
    r.exact(
        "p is not below any g_i at ω ∖ {0}",
        p_above,
        format!("p(ω ∖ {{0}}) = {}, g_i(ω ∖ {{0}}) = ω ∖ {{2i}}", p.apply(&witness)),
    );
    r.note("p({0}) is taken as ω ∖ {0}: the value {0} there leaves f({0}) ∪ p({0}) = {0}.");

    let search = budgeted_annihilator_search(&f, &gs, cfg.budget, cfg.seed, cfg.samples);
    let name = search.found().map(|g| g.name().to_string());
    r.check(
        "budgeted search finds g_1",
        name.as_deref() == Some("exfc.g1"),
        mode,
        format!("found {name:?} after {} candidates", search.tried()),
    );

    // a least companion would lie below every g_i at ω ∖ {0}
    let family = FcFamily::RemoveProgression {
        base: FcSet::omega(),
        start: 2,
        step: 2,
    };
    let prefix_ok = (1..=CHECKED_MEMBERS as usize).all(|k| {
        let meet = gs[..k]
            .iter()
            .fold(FcSet::omega(), |acc, g| acc.intersection(&g.apply(&witness)));
        family.term(k) == meet
    });
    let meet = fc_meet(&family, cfg.budget)?;
    let outside = matches!(meet, CompletionMeet::Value(OmegaSet::MinusProgression { .. }));
    r.exact(
        "the meet of the g_i at ω ∖ {0} is not in FC(ω)",
        prefix_ok && outside,
        match meet.value() {
            Some(v) => format!("meet = {v}"),
            None => format!("{meet:?}"),
        },
    );

    frame_checks(&mut r, &f, &gs)?;
    Ok(r)
}

fn frame_checks(r: &mut BundleReport, f: &RuleOp<FiniteCofinite>, gs: &[RuleOp<FiniteCofinite>]) -> Result<(), OperatorError> {
    let frame = FcCanonicalFrame::new(f)?;
    let all = FcPointSet::stone(&FcSet::omega());
    let derived = |m: u64| match m {
        0 => FcPointSet::stone(&FcSet::cofinite([0])),
        m if m % 2 == 0 => FcPointSet::stone(&FcSet::singleton(0)),
        m => FcPointSet::stone(&FcSet::singleton(m)),
    };
    let bad = (0..FRAME_TRUNCATION).find(|m| frame.poss_complement_singleton(*m) != derived(*m));
    r.check(
        "⟨−R⟩ on principal points follows the complement of f",
        bad.is_none(),
        format!("bounded({FRAME_TRUNCATION})"),
        bad.map_or("rows m < 64 match".into(), |m| format!("row {m} differs")),
    );
    let odd_ok = (0..FRAME_TRUNCATION)
        .filter(|m| m % 2 == 1)
        .all(|m| frame.poss_complement_singleton(m) == FcPointSet::stone(&FcSet::singleton(m)));
    r.check(
        "⟨−R⟩({F_m}) = {F_m} for odd m",
        odd_ok,
        format!("bounded({FRAME_TRUNCATION})"),
        "odd rows checked",
    );
    let poss_ok = (0..FRAME_TRUNCATION).all(|m| {
        let row = frame.poss_singleton(m);
        match m {
            0 => row == FcPointSet::stone(&FcSet::singleton(0)),
            m if m % 2 == 0 => row.principal == FcSet::cofinite([0]) && row.contains_u,
            m => row.principal == FcSet::cofinite([m]) && row.contains_u && row != all,
        }
    });
    r.check(
        "⟨R⟩ on principal points is the image under f",
        poss_ok,
        format!("bounded({FRAME_TRUNCATION})"),
        "rows m < 64 checked",
    );
    let below = gs.iter().all(|g| {
        (0..FRAME_TRUNCATION).all(|m| {
            frame
                .poss_complement_singleton(m)
                .is_subset(&FcPointSet::stone(&g.apply(&FcSet::singleton(m))))
        })
    });
    r.check(
        "⟨−R⟩ lies below every g_i on atoms",
        below,
        format!("bounded({FRAME_TRUNCATION})"),
        "i <= 12, m < 64",
    );
    let u_ok = (0..FRAME_TRUNCATION).all(|n| {
        frame.related(FcPoint::Cofinite, FcPoint::Principal(n)) == (n != 0)
            && frame.related(FcPoint::Principal(n), FcPoint::Cofinite)
    }) && frame.related(FcPoint::Cofinite, FcPoint::Cofinite);
    r.check(
        "edges at U",
        u_ok,
        format!("bounded({FRAME_TRUNCATION})"),
        "U R F_n iff n ≠ 0; F_n R U; U R U",
    );
    let mismatches: Vec<String> = (0..16u64)
        .flat_map(|n| (0..16u64).map(move |m| (n, m)))
        .filter(|&(n, m)| printed_edge(n, m) != frame.related(FcPoint::Principal(n), FcPoint::Principal(m)))
        .take(6)
        .map(|(n, m)| format!("(F{n}, F{m})"))
        .collect();
    if !mismatches.is_empty() {
        r.note(format!(
            "the printed edge display disagrees with f({{m}}) ∋ n at {} and similar cells; the tables above follow f",
            mismatches.join(", ")
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_on_each_case() {
        let g3 = g(3).unwrap();
        assert_eq!(g3.apply(&FcSet::finite([0, 5])), FcSet::omega());
        assert_eq!(g3.apply(&FcSet::finite([2, 5])), FcSet::finite([0, 5]));
        assert_eq!(g3.apply(&FcSet::cofinite([0, 1])), FcSet::cofinite([6]));
        assert!(g(0).is_err());
    }

    #[test]
    fn p_is_a_companion() {
        let s = Surface::of(&FiniteCofinite, 1, 300);
        assert!(is_decomposing(&f(), &p(), &s).holds());
    }

    #[test]
    fn bundle_passes() {
        let r = run(&RunConfig::default()).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(!r.notes.is_empty());
    }
}
