//! Sufficient condition for the absence of a proper companion on atomless
//! carriers: `f` is `n`-transitive and `fⁿ[B]` is dense.

use serde::Serialize;

use crate::algebra::{seeded_rng, Surface, Verification, WitnessGrid};
use crate::operator::{check_axiom, power, Axiom, ElementMap, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "reason")]
pub enum DensityReason {
    AtomicCarrier,
    NotTransitive { x: String },
    /// No `t` with `0 < fⁿ(t) <= x` was found within the budget.
    NotDense { x: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum DensityVerdict {
    CriterionApplies,
    Inapplicable(DensityReason),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub n: u32,
    pub verdict: DensityVerdict,
    pub mode: Verification,
    /// Elements `x` for which a dense witness was found.
    pub dense_checked: usize,
}

impl DensityReport {
    pub fn applies(&self) -> bool {
        self.verdict == DensityVerdict::CriterionApplies
    }
}

/// Checks `n`-transitivity on a sample and density of `fⁿ[B]` on the grid
/// plus random elements. Candidate preimages of `x` are `x`, the grid and
/// `budget · 8` random elements below `x`.
pub fn no_companion_via_density<A, M>(f: &M, n: u32, budget: usize, seed: u64, samples: usize) -> DensityReport
where
    A: WitnessGrid,
    M: ElementMap<A> + ?Sized,
{
    let alg = f.carrier();
    let surface = Surface::of(alg, seed, samples);
    let report = |verdict, dense_checked| DensityReport {
        n,
        verdict,
        mode: surface.mode,
        dense_checked,
    };
    let grid = alg.witness_grid(budget);
    if alg.elements().is_some() || grid.iter().any(|x| alg.is_atom(x)) {
        return report(DensityVerdict::Inapplicable(DensityReason::AtomicCarrier), 0);
    }
    if let Verdict::FailsAt(x) = check_axiom(f, Axiom::NTransitive(n), &surface) {
        return report(
            DensityVerdict::Inapplicable(DensityReason::NotTransitive { x: alg.render(&x) }),
            0,
        );
    }
    let mut rng = seeded_rng(seed);
    let mut targets = grid.clone();
    targets.extend(
        surface
            .nonzero(alg)
            .take(samples.min(200))
            .cloned(),
    );
    let tries = budget.max(1) * 8;
    let mut checked = 0;
    for x in &targets {
        let hit = |t: &A::Elem| {
            let v = power(f, n, t);
            !alg.is_zero(&v) && alg.leq(&v, x)
        };
        let mut found = hit(x) || grid.iter().any(hit);
        let mut k = 0;
        while !found && k < tries {
            if let Some(t) = alg.random_below(x, &mut rng) {
                found = hit(&t);
            }
            k += 1;
        }
        if !found {
            return report(
                DensityVerdict::Inapplicable(DensityReason::NotDense { x: alg.render(x) }),
                checked,
            );
        }
        checked += 1;
    }
    report(DensityVerdict::CriterionApplies, checked)
}
