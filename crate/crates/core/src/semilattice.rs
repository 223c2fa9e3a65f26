//! Dual annihilators and dual pseudocomplements in the semilattice `M(B)`.
//!
//! On finite carriers the dual pseudocomplement is computed by the sum
//! formula `f^⊥(x) = Σ{−f(y) : 0 < y <= x}`. Symbolic carriers are not
//! complete, so only a budgeted search for some annihilator is offered.

use crate::algebra::{BooleanAlgebra, Powerset, Subset, Surface, Verification, WitnessGrid};
use crate::error::OperatorError;
use crate::operator::{ElementMap, FiniteOp, RuleOp};

/// Atom cap for the sum formula: `3^n` terms in total.
pub const MAX_PC_ATOMS: usize = 8;

/// `f^⊥` by the sum formula over every `↓x`, certified modal.
pub fn dual_pseudocomplement(f: &FiniteOp) -> Result<FiniteOp, OperatorError> {
    let alg = f.alg();
    let n = alg.atom_count();
    if n > MAX_PC_ATOMS {
        return Err(OperatorError::AboveCap {
            what: "dual pseudocomplement",
            cap: MAX_PC_ATOMS,
            n,
        });
    }
    let values = f.values();
    let full = alg.full();
    let sums: Vec<Subset> = (0..alg.size() as u32)
        .map(|x| {
            Subset(x)
                .nonzero_below()
                .fold(Subset::EMPTY, |acc, y| {
                    acc.union(Subset(full.0 & !values[y.0 as usize].0))
                })
        })
        .collect();
    FiniteOp::from_fn(alg, |x| sums[x.0 as usize])
}

/// Refuses carriers whose completeness is not guaranteed.
pub fn require_complete<A: BooleanAlgebra>(alg: &A) -> Result<(), OperatorError> {
    match alg.elements() {
        Some(_) => Ok(()),
        None => Err(OperatorError::IncompleteCarrier(alg.name())),
    }
}

/// `f ∨ g = f¹`.
pub fn annihilates(f: &FiniteOp, g: &FiniteOp) -> bool {
    f.join(g).map(|j| j.is_discriminator()).unwrap_or(false)
}

/// Every dual annihilator of `f`, in enumeration order.
pub fn annihilators(f: &FiniteOp) -> Result<Vec<FiniteOp>, OperatorError> {
    Ok(FiniteOp::enumerate(f.alg())?
        .filter(|g| annihilates(f, g))
        .collect())
}

/// The least dual annihilator found by scanning all of `M(B)`.
pub fn least_annihilator_brute(f: &FiniteOp) -> Result<Option<FiniteOp>, OperatorError> {
    let all = annihilators(f)?;
    let Some(first) = all.first() else {
        return Ok(None);
    };
    let table: Vec<Subset> = (0..f.alg().atom_count())
        .map(|i| {
            all.iter()
                .fold(first.table()[i], |acc, g| acc.intersection(g.table()[i]))
        })
        .collect();
    let meet = FiniteOp::new(f.alg(), table)?;
    Ok(all.iter().find(|g| **g == meet).cloned())
}

/// The only dual annihilator of `f` is `f¹`.
pub fn is_dually_dense(f: &FiniteOp) -> Result<bool, OperatorError> {
    Ok(dual_pseudocomplement(f)?.is_discriminator())
}

/// `{f^⊥ : f ∈ M(B)}`, sorted.
pub fn open_elements(alg: &Powerset) -> Result<Vec<FiniteOp>, OperatorError> {
    let mut out = FiniteOp::enumerate(alg)?
        .map(|f| dual_pseudocomplement(&f))
        .collect::<Result<Vec<_>, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// The meet in `M_c(B)`: `(f^⊥ ∨ g^⊥)^⊥`.
pub fn mc_meet(f: &FiniteOp, g: &FiniteOp) -> Result<FiniteOp, OperatorError> {
    dual_pseudocomplement(&dual_pseudocomplement(f)?.join(&dual_pseudocomplement(g)?)?)
}

/// `(⋁{f_x : x ∈ M})(y₀)` for the first atom `y₀`, checked against `Σ M`.
pub fn semilattice_sup_via_relativizations(
    alg: &Powerset,
    members: &[Subset],
) -> Result<Subset, OperatorError> {
    if members.is_empty() {
        return Err(OperatorError::BadParameters("empty family".into()));
    }
    let mut sup = FiniteOp::zero(alg);
    for x in members.iter().filter(|x| !x.is_empty()) {
        sup = sup.join(&FiniteOp::relativized(alg, *x)?)?;
    }
    let value = sup.eval(Subset::atom(0));
    let sum = members.iter().fold(Subset::EMPTY, |acc, x| acc.union(*x));
    if value != sum {
        return Err(OperatorError::BadParameters(format!(
            "join of relativizations gives {} but the sum is {}",
            alg.format(value),
            alg.format(sum)
        )));
    }
    Ok(value)
}

/// Result of the budgeted search; a hit is verified on a sample only and is
/// not claimed to be minimal.
#[derive(Clone, Debug)]
pub enum AnnihilatorSearch<A: BooleanAlgebra> {
    Found {
        g: RuleOp<A>,
        tried: usize,
        certificate: Verification,
    },
    NoneWithinBudget {
        tried: usize,
    },
}

impl<A: BooleanAlgebra> AnnihilatorSearch<A> {
    pub fn found(&self) -> Option<&RuleOp<A>> {
        match self {
            AnnihilatorSearch::Found { g, .. } => Some(g),
            AnnihilatorSearch::NoneWithinBudget { .. } => None,
        }
    }

    pub fn tried(&self) -> usize {
        match self {
            AnnihilatorSearch::Found { tried, .. } | AnnihilatorSearch::NoneWithinBudget { tried } => {
                *tried
            }
        }
    }
}

/// `f(x) + g(x) = 1` for every nonzero `x` of the surface; the failing `x` otherwise.
pub fn decomposes_on<A, F, G>(f: &F, g: &G, surface: &Surface<A::Elem>) -> Option<A::Elem>
where
    A: BooleanAlgebra,
    F: ElementMap<A> + ?Sized,
    G: ElementMap<A> + ?Sized,
{
    let alg = f.carrier();
    surface
        .nonzero(alg)
        .find(|x| !alg.is_one(&alg.join(&f.apply(x), &g.apply(x))))
        .cloned()
}

/// `g(0) = 0`, `−f(x)` on atoms and `1` elsewhere; the dual pseudocomplement
/// whenever it is modal.
pub fn atom_complement_template<A>(f: &RuleOp<A>) -> RuleOp<A>
where
    A: WitnessGrid + 'static,
{
    let alg = f.carrier().clone();
    let f = f.clone();
    let name = format!("atomwise −{}", f.name());
    RuleOp::new(&alg.clone(), name, move |x| {
        if alg.is_zero(x) {
            alg.zero()
        } else if alg.is_atom(x) {
            alg.complement(&f.apply(x))
        } else {
            alg.one()
        }
    })
}

/// Tries, in order: `f⁰`, the atom-complement template (atomic carriers
/// only), the supplied `extra` candidates, then `f_x` over the witness grid.
/// `budget` bounds the number of candidates examined.
pub fn budgeted_annihilator_search<A>(
    f: &RuleOp<A>,
    extra: &[RuleOp<A>],
    budget: usize,
    seed: u64,
    samples: usize,
) -> AnnihilatorSearch<A>
where
    A: WitnessGrid + 'static,
{
    let alg = f.carrier().clone();
    let surface = Surface::of(&alg, seed, samples);
    let grid = alg.witness_grid(budget);
    let atomic = grid.iter().any(|x| alg.is_atom(x));
    let mut candidates: Vec<Box<dyn Fn() -> Option<RuleOp<A>> + '_>> = Vec::new();
    candidates.push(Box::new(|| Some(RuleOp::zero(&alg))));
    if atomic {
        candidates.push(Box::new(|| Some(atom_complement_template(f))));
    }
    for g in extra {
        candidates.push(Box::new(move || Some(g.clone())));
    }
    for x in grid.iter().filter(|x| !alg.is_one(x)) {
        let alg = &alg;
        candidates.push(Box::new(move || RuleOp::relativized(alg, x.clone()).ok()));
    }
    let mut tried = 0;
    for make in candidates.iter().take(budget) {
        tried += 1;
        let Some(g) = make() else { continue };
        if let Ok(g) = g.certified(seed, samples) {
            if decomposes_on(f, &g, &surface).is_none() {
                return AnnihilatorSearch::Found {
                    g,
                    tried,
                    certificate: surface.mode,
                };
            }
        }
    }
    AnnihilatorSearch::NoneWithinBudget { tried }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FcSet, FiniteCofinite};

    fn b(n: usize) -> Powerset {
        Powerset::new(n).unwrap()
    }

    #[test]
    fn pseudocomplements_of_the_bounds() {
        let alg = b(3);
        let f0 = FiniteOp::zero(&alg);
        let f1 = FiniteOp::discriminator(&alg);
        assert_eq!(dual_pseudocomplement(&f1).unwrap(), f0);
        assert_eq!(dual_pseudocomplement(&f0).unwrap(), f1);
        assert!(is_dually_dense(&f0).unwrap());
        assert!(!is_dually_dense(&f1).unwrap());
    }

    #[test]
    fn identity_on_two_atoms() {
        let alg = b(2);
        let id = FiniteOp::identity(&alg);
        let pc = dual_pseudocomplement(&id).unwrap();
        // −a on a, −b on b, top on top
        assert_eq!(pc.table(), &[Subset(0b10), Subset(0b01)]);
        assert_eq!(pc.eval(alg.full()), alg.full());
        assert_eq!(least_annihilator_brute(&id).unwrap(), Some(pc));
        assert!(!is_dually_dense(&id).unwrap());
    }

    #[test]
    fn open_elements_cover_m_b() {
        let alg = b(2);
        assert_eq!(open_elements(&alg).unwrap().len(), 16);
        for f in FiniteOp::enumerate(&alg).unwrap() {
            let pc = dual_pseudocomplement(&f).unwrap();
            assert_eq!(dual_pseudocomplement(&pc).unwrap(), f);
        }
        let f1 = FiniteOp::discriminator(&alg);
        assert_eq!(mc_meet(&f1, &f1).unwrap(), f1);
    }

    #[test]
    fn sup_of_relativizations() {
        let alg = b(3);
        let a = Subset(0b001);
        let ab = Subset(0b011);
        assert_eq!(semilattice_sup_via_relativizations(&alg, &[a]).unwrap(), a);
        assert_eq!(semilattice_sup_via_relativizations(&alg, &[a, ab]).unwrap(), ab);
        let atoms: Vec<Subset> = alg.atoms().collect();
        assert_eq!(
            semilattice_sup_via_relativizations(&alg, &atoms).unwrap(),
            alg.full()
        );
        assert!(semilattice_sup_via_relativizations(&alg, &[]).is_err());
    }

    #[test]
    fn symbolic_carriers_are_refused() {
        assert_eq!(
            require_complete(&FiniteCofinite),
            Err(OperatorError::IncompleteCarrier("fc".into()))
        );
        assert!(require_complete(&b(2)).is_ok());
    }

    #[test]
    fn discriminator_on_fc_is_annihilated_by_zero() {
        let f1 = RuleOp::discriminator(&FiniteCofinite);
        let found = budgeted_annihilator_search(&f1, &[], 12, 0, 200);
        let g = found.found().expect("found");
        assert_eq!(g.name(), "f⁰");
        assert_eq!(found.tried(), 1);
        assert_eq!(g.apply(&FcSet::omega()), FcSet::empty());
    }
}
