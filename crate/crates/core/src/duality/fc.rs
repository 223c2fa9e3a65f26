//! The canonical frame of the shipped finite–cofinite operator.
//!
//! Points are the principal ultrafilters `F_n` and the ultrafilter `U` of
//! cofinite sets. `F R G` iff `f[G] ⊆ F`; for a principal `G = F_m` this is
//! `f({m}) ∈ F`. `⟨R⟩(Y)` collects the predecessors of `Y`, so
//! `⟨R⟩({F_m}) = h(f({m}))` and `⟨−R⟩({F_m}) = h(−f({m}))`.

use std::fmt;

use serde::Serialize;

use crate::algebra::{FcSet, FiniteCofinite};
use crate::bundles::exfc;
use crate::error::OperatorError;
use crate::operator::{ElementMap, RuleOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FcPoint {
    Principal(u64),
    Cofinite,
}

impl fmt::Display for FcPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FcPoint::Principal(n) => write!(f, "F{n}"),
            FcPoint::Cofinite => write!(f, "U"),
        }
    }
}

/// A set of ultrafilters of the form `{F_n : n ∈ M}`, plus possibly `U`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FcPointSet {
    pub principal: FcSet,
    pub contains_u: bool,
}

impl FcPointSet {
    pub fn empty() -> Self {
        FcPointSet {
            principal: FcSet::empty(),
            contains_u: false,
        }
    }

    /// The Stone image `h(M)`.
    pub fn stone(m: &FcSet) -> Self {
        FcPointSet {
            principal: m.clone(),
            contains_u: m.is_cofinite(),
        }
    }

    pub fn contains(&self, p: FcPoint) -> bool {
        match p {
            FcPoint::Principal(n) => self.principal.contains(n),
            FcPoint::Cofinite => self.contains_u,
        }
    }

    pub fn is_subset(&self, other: &FcPointSet) -> bool {
        self.principal.is_subset(&other.principal) && (!self.contains_u || other.contains_u)
    }
}

impl fmt::Display for FcPointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = if self.contains_u { " ∪ {U}" } else { "" };
        write!(f, "F[{}]{u}", self.principal)
    }
}

pub struct FcCanonicalFrame {
    f: RuleOp<FiniteCofinite>,
}

impl FcCanonicalFrame {
    /// Only the shipped operator is accepted: edges into `U` rely on its
    /// property `f(M) = ω` for cofinite `M`.
    pub fn new(f: &RuleOp<FiniteCofinite>) -> Result<Self, OperatorError> {
        if f.name() != exfc::F_NAME {
            return Err(OperatorError::Unsupported(format!(
                "symbolic canonical frame is only available for {}, not {}",
                exfc::F_NAME,
                f.name()
            )));
        }
        Ok(FcCanonicalFrame { f: f.clone() })
    }

    pub fn related(&self, p: FcPoint, q: FcPoint) -> bool {
        match q {
            FcPoint::Cofinite => true,
            FcPoint::Principal(m) => {
                let image = self.f.apply(&FcSet::singleton(m));
                match p {
                    FcPoint::Principal(n) => image.contains(n),
                    FcPoint::Cofinite => image.is_cofinite(),
                }
            }
        }
    }

    /// `⟨R⟩({F_m})`.
    pub fn poss_singleton(&self, m: u64) -> FcPointSet {
        FcPointSet::stone(&self.f.apply(&FcSet::singleton(m)))
    }

    /// `⟨−R⟩({F_m})`.
    pub fn poss_complement_singleton(&self, m: u64) -> FcPointSet {
        FcPointSet::stone(&self.f.apply(&FcSet::singleton(m)).complement())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use FcPoint::*;

    #[test]
    fn edges_of_the_shipped_operator() {
        let b = exfc::bundle();
        let frame = FcCanonicalFrame::new(&b.f).unwrap();
        assert!(frame.related(Principal(0), Principal(3)));
        assert!(!frame.related(Cofinite, Principal(0)));
        assert!(frame.related(Cofinite, Cofinite));
        assert!(frame.related(Cofinite, Principal(4)));
        assert!(frame.related(Principal(5), Cofinite));
        assert!(!frame.related(Principal(3), Principal(3)));
    }

    #[test]
    fn poss_agrees_with_predecessors_on_a_truncation() {
        let b = exfc::bundle();
        let frame = FcCanonicalFrame::new(&b.f).unwrap();
        for m in 0..12 {
            let poss = frame.poss_singleton(m);
            for n in 0..12 {
                assert_eq!(poss.contains(Principal(n)), frame.related(Principal(n), Principal(m)));
            }
            assert_eq!(poss.contains(Cofinite), frame.related(Cofinite, Principal(m)));
        }
    }

    #[test]
    fn other_operators_are_rejected() {
        let f1 = RuleOp::discriminator(&FiniteCofinite);
        assert!(FcCanonicalFrame::new(&f1).is_err());
    }
}
