//! Boolean carriers.
//!
//! Three concrete algebras implement [`BooleanAlgebra`]: finite powerset
//! algebras ([`Powerset`]), the finite–cofinite algebra on the naturals
//! ([`FiniteCofinite`]) and the interval algebra of the rational unit
//! interval ([`IntervalAlgebra`]). The first one is enumerable, the other two
//! are handled symbolically and checked on seeded samples.

pub mod cofinite;
pub mod completion;
pub mod ideal;
pub mod interval;
pub mod powerset;
pub mod real;

use std::fmt::Debug;
use std::hash::Hash;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use cofinite::{FcSet, FiniteCofinite};
pub use interval::{IntervalAlgebra, IntervalSet, Rat};
pub use powerset::{Powerset, Subset, MAX_ATOMS};
pub use real::{QuadIrrational, RealPoint};

/// Generator used for every randomized check. Seeded, platform independent.
pub type SampleRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Default number of random samples for symbolic carriers.
pub const DEFAULT_SAMPLES: usize = 1000;

pub trait BooleanAlgebra: Clone + Send + Sync {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    /// Short human readable name of the carrier.
    fn name(&self) -> String;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn complement(&self, a: &Self::Elem) -> Self::Elem;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        &self.join(a, b) == b
    }

    /// `a < b`.
    fn lt(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a != b && self.leq(a, b)
    }

    fn symdiff(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let left = self.meet(a, &self.complement(b));
        let right = self.meet(&self.complement(a), b);
        self.join(&left, &right)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a == &self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        a == &self.one()
    }

    /// Every element, if the carrier is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// Fixed elements that every sampled surface contains.
    fn probe_elements(&self) -> Vec<Self::Elem>;

    fn random_element(&self, rng: &mut SampleRng) -> Self::Elem;

    /// Some `y` with `0 < y <= x`; `None` when `x` is zero.
    fn random_below(&self, x: &Self::Elem, rng: &mut SampleRng) -> Option<Self::Elem>;

    /// Serialized form used in reports.
    fn element_json(&self, a: &Self::Elem) -> serde_json::Value;

    /// Compact textual form, parseable by the script language.
    fn render(&self, a: &Self::Elem) -> String;
}

/// How a universally quantified statement was checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum Verification {
    /// Every element (or pair of elements) of a finite carrier.
    Exhaustive,
    /// Only a seeded sample; a positive verdict means "no counterexample seen".
    Randomized { samples: usize },
}

impl Verification {
    pub fn is_exhaustive(&self) -> bool {
        matches!(self, Verification::Exhaustive)
    }
}

impl std::fmt::Display for Verification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verification::Exhaustive => write!(f, "exhaustive"),
            Verification::Randomized { samples } => write!(f, "randomized({samples})"),
        }
    }
}

/// Largest finite carrier on which [`Surface::of`] enumerates all pairs.
pub const EXHAUSTIVE_PAIR_LIMIT: usize = 256;

/// Carriers that offer a deterministic list of candidate witnesses.
pub trait WitnessGrid: BooleanAlgebra {
    /// Nonzero candidates, coarse to fine; `depth` bounds the refinement.
    fn witness_grid(&self, depth: usize) -> Vec<Self::Elem>;

    fn is_atom(&self, x: &Self::Elem) -> bool;
}

/// Elements and element pairs on which universally quantified checks run.
#[derive(Clone, Debug)]
pub struct Surface<E> {
    pub elements: Vec<E>,
    pub pairs: Vec<(E, E)>,
    pub mode: Verification,
}

impl<E: Clone> Surface<E> {
    /// Exhaustive surface on finite carriers, otherwise probes plus `samples`
    /// random elements and `samples` random pairs.
    pub fn of<A>(alg: &A, seed: u64, samples: usize) -> Self
    where
        A: BooleanAlgebra<Elem = E>,
    {
        if let Some(all) = alg.elements().filter(|all| all.len() <= EXHAUSTIVE_PAIR_LIMIT) {
            let pairs = all
                .iter()
                .flat_map(|a| all.iter().map(move |b| (a.clone(), b.clone())))
                .collect();
            return Surface {
                elements: all,
                pairs,
                mode: Verification::Exhaustive,
            };
        }
        let mut rng = seeded_rng(seed);
        let probes = alg.probe_elements();
        let mut elements = probes.clone();
        elements.extend((0..samples).map(|_| alg.random_element(&mut rng)));
        let mut pairs: Vec<(E, E)> = probes
            .iter()
            .flat_map(|a| probes.iter().map(move |b| (a.clone(), b.clone())))
            .collect();
        pairs.extend((0..samples).map(|_| (alg.random_element(&mut rng), alg.random_element(&mut rng))));
        Surface {
            elements,
            pairs,
            mode: Verification::Randomized { samples },
        }
    }

    pub fn nonzero<'a, A>(&'a self, alg: &'a A) -> impl Iterator<Item = &'a E> + 'a
    where
        A: BooleanAlgebra<Elem = E>,
    {
        self.elements.iter().filter(move |e| !alg.is_zero(e))
    }
}
