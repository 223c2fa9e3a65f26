use std::fmt;
use std::sync::Arc;

use super::{certify, ElementMap};
use crate::algebra::{BooleanAlgebra, Surface, Verification, DEFAULT_SAMPLES};
use crate::error::OperatorError;

type Rule<E> = Arc<dyn Fn(&E) -> E + Send + Sync>;

/// A rule-based operator on a symbolic carrier.
///
/// The name records how the rule was built. Certification is sampled.
pub struct RuleOp<A: BooleanAlgebra> {
    alg: A,
    name: String,
    rule: Rule<A::Elem>,
    verified: Option<Verification>,
}

impl<A: BooleanAlgebra> Clone for RuleOp<A> {
    fn clone(&self) -> Self {
        RuleOp {
            alg: self.alg.clone(),
            name: self.name.clone(),
            rule: self.rule.clone(),
            verified: self.verified,
        }
    }
}

impl<A: BooleanAlgebra> fmt::Debug for RuleOp<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RuleOp")
            .field("carrier", &self.alg.name())
            .field("name", &self.name)
            .field("verified", &self.verified)
            .finish()
    }
}

impl<A: BooleanAlgebra + 'static> RuleOp<A> {
    /// An uncertified rule.
    pub fn new(
        alg: &A,
        name: impl Into<String>,
        rule: impl Fn(&A::Elem) -> A::Elem + Send + Sync + 'static,
    ) -> Self {
        RuleOp {
            alg: alg.clone(),
            name: name.into(),
            rule: Arc::new(rule),
            verified: None,
        }
    }

    /// Certifies normality and additivity on a seeded sample.
    pub fn certified(mut self, seed: u64, samples: usize) -> Result<Self, OperatorError> {
        let surface = Surface::of(&self.alg, seed, samples);
        self.verified = Some(certify(&self, &surface)?);
        Ok(self)
    }

    fn certified_default(self) -> Result<Self, OperatorError> {
        self.certified(0, DEFAULT_SAMPLES)
    }

    pub fn verification(&self) -> Option<Verification> {
        self.verified
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn zero(alg: &A) -> Self {
        let z = alg.zero();
        RuleOp::new(alg, "f⁰", move |_| z.clone()).trusted()
    }

    pub fn discriminator(alg: &A) -> Self {
        let a = alg.clone();
        RuleOp::new(alg, "f¹", move |x| if a.is_zero(x) { a.zero() } else { a.one() }).trusted()
    }

    pub fn identity(alg: &A) -> Self {
        RuleOp::new(alg, "1′", |x: &A::Elem| x.clone()).trusted()
    }

    /// `f_x`.
    pub fn relativized(alg: &A, x: A::Elem) -> Result<Self, OperatorError> {
        if alg.is_zero(&x) {
            return Err(OperatorError::DegenerateParameter);
        }
        let a = alg.clone();
        let name = format!("f_{}", alg.render(&x));
        Ok(RuleOp::new(alg, name, move |y| if a.is_zero(y) { a.zero() } else { x.clone() }).trusted())
    }

    /// Marks a rule whose modality follows from its shape alone; still certified.
    fn trusted(self) -> Self {
        self.certified(0, 64).expect("structurally modal")
    }

    /// `(f ∨ g)(x) = f(x) + g(x)`.
    pub fn join(&self, other: &RuleOp<A>) -> Result<RuleOp<A>, OperatorError> {
        let (f, g, a) = (self.rule.clone(), other.rule.clone(), self.alg.clone());
        let name = format!("({} ∨ {})", self.name, other.name);
        self.inherit(other, RuleOp::new(&self.alg, name, move |x| a.join(&f(x), &g(x))))
    }

    /// `(f ∘ g)(x) = f(g(x))`.
    pub fn compose(&self, other: &RuleOp<A>) -> Result<RuleOp<A>, OperatorError> {
        let (f, g) = (self.rule.clone(), other.rule.clone());
        let name = format!("({} ∘ {})", self.name, other.name);
        self.inherit(other, RuleOp::new(&self.alg, name, move |x| f(&g(x))))
    }

    /// Joins and composites of modal operators are modal, so a result built
    /// from two certified operands keeps the weaker certificate. Otherwise
    /// the result is certified afresh.
    fn inherit(&self, other: &RuleOp<A>, op: RuleOp<A>) -> Result<RuleOp<A>, OperatorError> {
        let verified = match (self.verified, other.verified) {
            (Some(Verification::Exhaustive), Some(v)) | (Some(v), Some(Verification::Exhaustive)) => v,
            (Some(Verification::Randomized { samples: a }), Some(Verification::Randomized { samples: b })) => {
                Verification::Randomized { samples: a.min(b) }
            }
            _ => return op.certified_default(),
        };
        Ok(RuleOp {
            verified: Some(verified),
            ..op
        })
    }

    /// `f^n`, `n >= 1`.
    pub fn iterate(&self, n: u32) -> Result<RuleOp<A>, OperatorError> {
        if n == 0 {
            return Err(OperatorError::ZeroIteration);
        }
        let f = self.rule.clone();
        let name = format!("{}^{n}", self.name);
        let op = RuleOp::new(&self.alg, name, move |x| {
            let mut y = f(x);
            for _ in 1..n {
                y = f(&y);
            }
            y
        });
        match self.verified {
            // composites of a certified operator keep its certificate mode
            Some(mode) => Ok(RuleOp {
                verified: Some(mode),
                ..op
            }),
            None => op.certified_default(),
        }
    }
}

impl<A: BooleanAlgebra> ElementMap<A> for RuleOp<A> {
    fn carrier(&self) -> &A {
        &self.alg
    }

    fn apply(&self, x: &A::Elem) -> A::Elem {
        (self.rule)(x)
    }
}

impl<A: BooleanAlgebra> fmt::Display for RuleOp<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FcSet, FiniteCofinite, IntervalAlgebra, IntervalSet};
    use crate::operator::{check_axiom, check_closure, eq_on, Axiom};

    #[test]
    fn builtins_on_the_symbolic_carriers() {
        let fc = FiniteCofinite;
        let f1 = RuleOp::discriminator(&fc);
        assert_eq!(f1.apply(&FcSet::singleton(4)), FcSet::omega());
        assert_eq!(f1.apply(&FcSet::empty()), FcSet::empty());
        let rel = RuleOp::relativized(&fc, FcSet::finite([1, 2])).unwrap();
        assert_eq!(rel.apply(&FcSet::cofinite([9])), FcSet::finite([1, 2]));
        assert!(RuleOp::relativized(&fc, FcSet::empty()).is_err());
        assert_eq!(
            RuleOp::relativized(&fc, FcSet::omega()).unwrap().apply(&FcSet::singleton(0)),
            FcSet::omega()
        );
    }

    #[test]
    fn certification_rejects_non_additive_rules() {
        let fc = FiniteCofinite;
        // keeps only the smallest member: not additive
        let bad = RuleOp::new(&fc, "min", |x: &FcSet| {
            match (0..64).find(|n| x.contains(*n)) {
                Some(n) => FcSet::singleton(n),
                None => FcSet::empty(),
            }
        });
        assert!(matches!(
            bad.certified(0, 200),
            Err(OperatorError::NotAdditive { .. })
        ));
        let shift = RuleOp::new(&fc, "const", |_x: &FcSet| FcSet::singleton(0));
        assert!(matches!(shift.certified(0, 10), Err(OperatorError::NotNormal { .. })));
    }

    #[test]
    fn semilattice_units_on_intervals() {
        let alg = IntervalAlgebra;
        let s = Surface::of(&alg, 1, 300);
        let x = IntervalSet::parse("[0,1/2)").unwrap();
        let fx = RuleOp::relativized(&alg, x).unwrap();
        let f0 = RuleOp::zero(&alg);
        let f1 = RuleOp::discriminator(&alg);
        let id = RuleOp::identity(&alg);
        assert!(eq_on(&f0.join(&fx).unwrap(), &fx, &s).holds());
        assert!(eq_on(&fx.join(&f1).unwrap(), &f1, &s).holds());
        assert!(eq_on(&id.compose(&fx).unwrap(), &fx, &s).holds());
        assert!(eq_on(&f1.iterate(3).unwrap(), &f1, &s).holds());
        assert!(check_closure(&f1, &s).holds());
        assert!(check_axiom(&id, Axiom::B, &s).holds());
        assert!(matches!(
            f1.verification(),
            Some(Verification::Randomized { .. })
        ));
    }
}
