//! Ideals given by a membership predicate plus a sampler of nonzero members
//! below a given element. A sampler that always succeeds witnesses density.

use std::fmt;
use std::sync::Arc;

use super::interval::{rat, IntervalAlgebra, IntervalSet, Rat};
use super::{BooleanAlgebra, SampleRng};
use crate::error::AlgebraError;

type Member<E> = Arc<dyn Fn(&E) -> bool + Send + Sync>;
type Sampler<E> = Arc<dyn Fn(&E, &mut SampleRng) -> Option<E> + Send + Sync>;

pub struct Ideal<A: BooleanAlgebra> {
    name: String,
    alg: A,
    member: Member<A::Elem>,
    sampler: Sampler<A::Elem>,
}

impl<A: BooleanAlgebra> Clone for Ideal<A> {
    fn clone(&self) -> Self {
        Ideal {
            name: self.name.clone(),
            alg: self.alg.clone(),
            member: self.member.clone(),
            sampler: self.sampler.clone(),
        }
    }
}

impl<A: BooleanAlgebra> fmt::Debug for Ideal<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal").field("name", &self.name).finish()
    }
}

impl<A: BooleanAlgebra> Ideal<A> {
    pub fn new(
        name: impl Into<String>,
        alg: A,
        member: impl Fn(&A::Elem) -> bool + Send + Sync + 'static,
        sampler: impl Fn(&A::Elem, &mut SampleRng) -> Option<A::Elem> + Send + Sync + 'static,
    ) -> Self {
        Ideal {
            name: name.into(),
            alg,
            member: Arc::new(member),
            sampler: Arc::new(sampler),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn contains(&self, x: &A::Elem) -> bool {
        (self.member)(x)
    }

    /// A member `y` with `0 < y <= x`. Samples violating the contract are dropped.
    pub fn sample_below(&self, x: &A::Elem, rng: &mut SampleRng) -> Option<A::Elem> {
        let y = (self.sampler)(x, rng)?;
        let ok = !self.alg.is_zero(&y) && self.alg.leq(&y, x) && self.contains(&y);
        ok.then_some(y)
    }
}

/// True when `q` lies in the closure of `x`, i.e. `s <= q <= t` for some piece.
pub fn touches(x: &IntervalSet, q: &Rat) -> bool {
    x.parts().iter().any(|(s, t)| s <= q && q <= t)
}

/// The ideal of elements whose closure avoids `q`; dense in the interval
/// algebra. With `q = 1` these are the elements bounded away from the top.
pub fn avoiding_point(q: Rat) -> Result<Ideal<IntervalAlgebra>, AlgebraError> {
    if q <= rat(0, 1) || q > rat(1, 1) {
        return Err(AlgebraError::EndpointOutOfRange(q.to_string()));
    }
    let name = format!("avoid({q})");
    let member_q = q.clone();
    let member = move |x: &IntervalSet| !touches(x, &member_q);
    let sampler = move |x: &IntervalSet, rng: &mut SampleRng| {
        let (s, t) = x.parts().first()?.clone();
        let (lo, hi) = if t < q || s > q {
            (s, t)
        } else if s < q {
            let mid = (&s + &q) / rat(2, 1);
            (s, mid)
        } else {
            let mid = (&q + &t) / rat(2, 1);
            (mid, t)
        };
        let piece = IntervalSet::interval(lo, hi).ok()?;
        IntervalAlgebra.random_below(&piece, rng)
    };
    Ok(Ideal::new(name, IntervalAlgebra, member, sampler))
}
