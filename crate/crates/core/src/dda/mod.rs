//! Decomposing pairs and companions.
//!
//! `(f, g)` is decomposing when `f(x) + g(x) = 1` for every `x ≠ 0`; `g` is
//! then a companion of `f`, proper when `g ≠ f¹`. A proper companion exists
//! iff some `x ≠ 0` has a nonzero lower bound `z` of `{f(y) : 0 < y <= x}`.
//! On finite carriers that is decided exactly by computing the meet; on
//! symbolic carriers witnesses are searched on a grid.

mod density;
mod pairs;
mod si;

pub use density::{no_companion_via_density, DensityReason, DensityReport, DensityVerdict};
pub use pairs::{
    covering_check, from_wmia, is_minimal_pair, kmpa_check, minimal_pairs, to_wmia,
    ultrafilter_dichotomy_check, CoveringReport, KmpaReport, UOperator, MAX_MINPAIR_ATOMS,
};
pub use si::{
    congruence_ideal_oracle, pc_holds, pc_prime_holds, prodprop_holds, prodprop_prime_holds,
    rautenberg_si, rautenberg_si_with, CongruenceIdealLattice, RautForm, SiReport, SiVerdict,
    MAX_SI_ATOMS,
};

use serde::Serialize;

use crate::algebra::{seeded_rng, BooleanAlgebra, Powerset, Subset, Surface, Verification, WitnessGrid};
use crate::error::OperatorError;
use crate::operator::{check_all, ElementMap, FiniteOp, RuleOp, Verdict};

/// Random elements below a witness drawn when its meet is estimated.
const BELOW_SAMPLES: usize = 64;

/// `f(x) + g(x) = 1` for all nonzero `x` of the surface.
pub fn is_decomposing<A, F, G>(f: &F, g: &G, surface: &Surface<A::Elem>) -> Verdict<A::Elem>
where
    A: BooleanAlgebra,
    F: ElementMap<A> + ?Sized,
    G: ElementMap<A> + ?Sized,
{
    let alg = f.carrier();
    check_all(surface, |x| alg.is_zero(x) || alg.is_one(&alg.join(&f.apply(x), &g.apply(x))))
}

/// Exact on a finite carrier: additivity reduces the condition to atoms.
pub fn is_decomposing_finite(f: &FiniteOp, g: &FiniteOp) -> bool {
    let full = f.alg().full();
    f.alg() == g.alg()
        && f.table()
            .iter()
            .zip(g.table())
            .all(|(a, b)| a.union(*b) == full)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    ProperExists,
    NoneExists,
    Unknown,
}

impl std::fmt::Display for Decision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Decision::ProperExists => "proper_exists",
            Decision::NoneExists => "none_exists",
            Decision::Unknown => "unknown",
        };
        write!(f, "{s}")
    }
}

/// Outcome of a proper-companion query.
#[derive(Clone, Debug)]
pub struct CompanionReport<E, G> {
    pub decision: Decision,
    pub x: Option<E>,
    pub z: Option<E>,
    pub companion: Option<G>,
    pub certificates: Vec<String>,
    /// Number of candidate witnesses `x` examined.
    pub budget_used: usize,
}

/// `∏{f(y) : 0 < y <= x}`, exact.
pub fn lower_meet(f: &FiniteOp, x: Subset) -> Subset {
    let values = f.values();
    x.nonzero_below()
        .fold(f.alg().full(), |acc, y| acc.intersection(values[y.0 as usize]))
}

/// Nonzero elements in increasing cardinality, ties by bit pattern.
fn by_cardinality(alg: &Powerset) -> Vec<Subset> {
    let mut xs: Vec<Subset> = (1..alg.size() as u32).map(Subset).collect();
    xs.sort_by_key(|x| (x.len(), x.0));
    xs
}

/// Exact decision on a finite carrier. Atoms are scanned first; a witness
/// found there is the first in cardinality order as well.
pub fn proper_companion_decide_finite(f: &FiniteOp) -> CompanionReport<Subset, FiniteOp> {
    let alg = f.alg();
    let mut used = 0;
    for x in by_cardinality(alg) {
        used += 1;
        let z = lower_meet(f, x);
        if z.is_empty() {
            continue;
        }
        let mut certificates = vec![format!(
            "z <= f(y) for every 0 < y <= x ({})",
            Verification::Exhaustive
        )];
        return match construct_companion_finite(f, x, z) {
            Ok(g) => {
                certificates.push(format!("companion decomposing ({})", Verification::Exhaustive));
                certificates.push("companion differs from the discriminator".into());
                CompanionReport {
                    decision: Decision::ProperExists,
                    x: Some(x),
                    z: Some(z),
                    companion: Some(g),
                    certificates,
                    budget_used: used,
                }
            }
            Err(e) => {
                certificates.push(format!("construction failed: {e}"));
                CompanionReport {
                    decision: Decision::Unknown,
                    x: Some(x),
                    z: Some(z),
                    companion: None,
                    certificates,
                    budget_used: used,
                }
            }
        };
    }
    CompanionReport {
        decision: Decision::NoneExists,
        x: None,
        z: None,
        companion: None,
        certificates: vec![format!(
            "every meet of f over a nonzero downset is 0 ({})",
            Verification::Exhaustive
        )],
        budget_used: used,
    }
}

/// Which of the two companion shapes is used for the witnesses `(x, z)`.
/// With `x = 1` and `z = 1` the first shape would be `f¹` itself, so the
/// second one (then `f⁰`) is used instead.
fn uses_first_shape<A: BooleanAlgebra>(alg: &A, x: &A::Elem, z: &A::Elem) -> bool {
    alg.is_one(z) && !alg.is_one(x)
}

/// `g(y) = x` (first shape, `z = 1`) or `g(y) = −z` (second shape) for
/// `0 < y <= x`, and `1` on every other nonzero `y`.
fn companion_rule<A: BooleanAlgebra + 'static>(alg: &A, x: &A::Elem, z: &A::Elem) -> impl Fn(&A::Elem) -> A::Elem + Send + Sync + 'static {
    let below = if uses_first_shape(alg, x, z) {
        x.clone()
    } else {
        alg.complement(z)
    };
    let (alg, x) = (alg.clone(), x.clone());
    move |y| {
        if alg.is_zero(y) {
            alg.zero()
        } else if alg.leq(y, &x) {
            below.clone()
        } else {
            alg.one()
        }
    }
}

fn check_witnesses<A: BooleanAlgebra>(alg: &A, x: &A::Elem, z: &A::Elem) -> Result<(), OperatorError> {
    if alg.is_zero(x) || alg.is_zero(z) {
        return Err(OperatorError::ZeroWitness);
    }
    Ok(())
}

/// Builds the companion on a finite carrier after checking `z <= f(y)` for
/// every `0 < y <= x`, then verifies it is a proper companion.
pub fn construct_companion_finite(f: &FiniteOp, x: Subset, z: Subset) -> Result<FiniteOp, OperatorError> {
    let alg = f.alg();
    check_witnesses(alg, &x, &z)?;
    let values = f.values();
    if let Some(y) = x.nonzero_below().find(|y| !z.is_subset(values[y.0 as usize])) {
        return Err(OperatorError::WitnessRefused { y: alg.format(y) });
    }
    let rule = companion_rule(alg, &x, &z);
    let g = FiniteOp::from_fn(alg, |y| rule(&y))?;
    verify_proper_finite(f, &g)?;
    Ok(g)
}

fn verify_proper_finite(f: &FiniteOp, g: &FiniteOp) -> Result<(), OperatorError> {
    let alg = f.alg();
    let fv = f.values();
    let gv = g.values();
    if let Some(x) = (1..alg.size()).find(|&x| fv[x].union(gv[x]) != alg.full()) {
        return Err(OperatorError::NotDecomposing {
            x: alg.format(Subset(x as u32)),
            value: alg.format(fv[x].union(gv[x])),
        });
    }
    if g.is_discriminator() {
        return Err(OperatorError::Unsupported("constructed companion is the discriminator".into()));
    }
    Ok(())
}

/// Elements `y` with `0 < y <= x` on which a witness is tested: all of them
/// on finite carriers, otherwise `x`, grid members below `x`, their meets
/// with `x`, and random elements below `x`.
fn test_points_below<A: WitnessGrid>(alg: &A, x: &A::Elem, grid: &[A::Elem], seed: u64, samples: usize) -> Vec<A::Elem> {
    if let Some(all) = alg.elements() {
        return all
            .into_iter()
            .filter(|y| !alg.is_zero(y) && alg.leq(y, x))
            .collect();
    }
    let mut out = vec![x.clone()];
    for g in grid {
        let m = alg.meet(g, x);
        if !alg.is_zero(&m) && !out.contains(&m) {
            out.push(m);
        }
    }
    let mut rng = seeded_rng(seed);
    out.extend((0..samples).filter_map(|_| alg.random_below(x, &mut rng)));
    out
}

/// Symbolic counterpart of [`construct_companion_finite`]. The witness
/// condition and the decomposition are checked on samples only.
pub fn construct_companion<A, M>(
    f: &M,
    x: &A::Elem,
    z: &A::Elem,
    seed: u64,
    samples: usize,
) -> Result<RuleOp<A>, OperatorError>
where
    A: WitnessGrid + 'static,
    M: ElementMap<A> + ?Sized,
{
    let alg = f.carrier();
    check_witnesses(alg, x, z)?;
    let grid = alg.witness_grid(crate::DEFAULT_BUDGET);
    let ys = test_points_below(alg, x, &grid, seed, samples.max(BELOW_SAMPLES));
    if let Some(y) = ys.iter().find(|y| !alg.leq(z, &f.apply(y))) {
        return Err(OperatorError::WitnessRefused { y: alg.render(y) });
    }
    let name = if uses_first_shape(alg, x, z) {
        format!("companion[x = {}]", alg.render(x))
    } else {
        format!("companion[x = {}, −z = {}]", alg.render(x), alg.render(&alg.complement(z)))
    };
    let g = RuleOp::new(alg, name, companion_rule(alg, x, z)).certified(seed, samples)?;
    let surface = Surface::of(alg, seed, samples);
    if let Verdict::FailsAt(bad) = is_decomposing(f, &g, &surface) {
        return Err(OperatorError::NotDecomposing {
            x: alg.render(&bad),
            value: alg.render(&alg.join(&f.apply(&bad), &g.apply(&bad))),
        });
    }
    Ok(g)
}

/// Estimate of `∏{f(y) : 0 < y <= x}`: exact on atoms, otherwise the meet
/// over the test points.
fn estimated_meet<A, M>(f: &M, x: &A::Elem, grid: &[A::Elem], seed: u64) -> A::Elem
where
    A: WitnessGrid,
    M: ElementMap<A> + ?Sized,
{
    let alg = f.carrier();
    if alg.is_atom(x) {
        return f.apply(x);
    }
    test_points_below(alg, x, grid, seed, BELOW_SAMPLES)
        .iter()
        .fold(alg.one(), |acc, y| alg.meet(&acc, &f.apply(y)))
}

/// Witness search over the carrier's grid. A hit is certified on samples;
/// an exhausted budget yields `Unknown`, never `NoneExists`.
pub fn proper_companion_decide<A, M>(
    f: &M,
    budget: usize,
    seed: u64,
    samples: usize,
) -> CompanionReport<A::Elem, RuleOp<A>>
where
    A: WitnessGrid + 'static,
    M: ElementMap<A> + ?Sized,
{
    let alg = f.carrier();
    let grid = alg.witness_grid(budget);
    let mode = Surface::of(alg, seed, samples).mode;
    let mut used = 0;
    for (i, x) in grid.iter().enumerate() {
        used += 1;
        let z = estimated_meet(f, x, &grid, seed.wrapping_add(i as u64));
        if alg.is_zero(&z) {
            continue;
        }
        let exact = if alg.is_atom(x) { Verification::Exhaustive } else { mode };
        if let Ok(g) = construct_companion(f, x, &z, seed, samples) {
            return CompanionReport {
                decision: Decision::ProperExists,
                x: Some(x.clone()),
                z: Some(z),
                companion: Some(g),
                certificates: vec![
                    format!("z <= f(y) for every 0 < y <= x ({exact})"),
                    format!("companion decomposing ({mode})"),
                    "companion differs from the discriminator".into(),
                ],
                budget_used: used,
            };
        }
    }
    CompanionReport {
        decision: Decision::Unknown,
        x: None,
        z: None,
        companion: None,
        certificates: vec![format!("no witness among {used} grid elements")],
        budget_used: used,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FcSet, FiniteCofinite};

    fn b(n: usize) -> Powerset {
        Powerset::new(n).unwrap()
    }

    #[test]
    fn zero_has_no_proper_companion() {
        let r = proper_companion_decide_finite(&FiniteOp::zero(&b(3)));
        assert_eq!(r.decision, Decision::NoneExists);
        assert_eq!(r.budget_used, 7);
    }

    #[test]
    fn atom_witness_comes_first() {
        let alg = b(2);
        let id = FiniteOp::identity(&alg);
        let r = proper_companion_decide_finite(&id);
        assert_eq!(r.decision, Decision::ProperExists);
        assert_eq!(r.x, Some(Subset(0b01)));
        assert_eq!(r.z, Some(Subset(0b01)));
        // −a on ↓a, 1 elsewhere
        let g = r.companion.unwrap();
        assert_eq!(g.table(), &[Subset(0b10), Subset(0b11)]);
    }

    #[test]
    fn first_shape_for_a_full_lower_bound() {
        let alg = b(2);
        let f = FiniteOp::discriminator(&alg);
        let g = construct_companion_finite(&f, Subset(0b01), alg.full()).unwrap();
        assert_eq!(g.table(), &[Subset(0b01), Subset(0b11)]);
    }

    #[test]
    fn one_atom_discriminator_gets_the_zero_companion() {
        let alg = b(1);
        let f = FiniteOp::discriminator(&alg);
        let r = proper_companion_decide_finite(&f);
        assert_eq!(r.decision, Decision::ProperExists);
        assert_eq!(r.companion, Some(FiniteOp::zero(&alg)));
    }

    #[test]
    fn refused_witnesses() {
        let alg = b(2);
        let f0 = FiniteOp::zero(&alg);
        assert_eq!(
            construct_companion_finite(&f0, Subset(0b01), Subset(0b01)),
            Err(OperatorError::WitnessRefused { y: "a".into() })
        );
        assert_eq!(
            construct_companion_finite(&f0, Subset(0), Subset(0b01)),
            Err(OperatorError::ZeroWitness)
        );
    }

    #[test]
    fn symbolic_witness_on_fc() {
        let fc = FiniteCofinite;
        let id = RuleOp::identity(&fc);
        let r = proper_companion_decide(&id, 4, 0, 200);
        assert_eq!(r.decision, Decision::ProperExists);
        assert_eq!(r.x, Some(FcSet::singleton(0)));
        let g = r.companion.unwrap();
        assert_eq!(g.apply(&FcSet::singleton(0)), FcSet::cofinite([0]));
        assert_eq!(g.apply(&FcSet::singleton(1)), FcSet::omega());
    }

    #[test]
    fn zero_on_fc_stays_unknown() {
        let r = proper_companion_decide(&RuleOp::zero(&FiniteCofinite), 4, 0, 100);
        assert_eq!(r.decision, Decision::Unknown);
        assert_eq!(r.budget_used, 8);
    }
}
