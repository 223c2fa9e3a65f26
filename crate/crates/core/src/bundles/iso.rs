//! Order isomorphisms `↓from → ↓to` between relative interval algebras.
//!
//! A point of `from` is sent to the point of `to` with the same relative
//! position in measure. The map is increasing, piecewise affine with
//! rational slope `μ(to)/μ(from)`, and sends half-open intervals to finite
//! unions of half-open intervals. With one-piece `from` and `to` it is
//! affine.

use num_traits::Zero;

use crate::algebra::interval::rat;
use crate::algebra::{IntervalSet, Rat};
use crate::error::OperatorError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseIso {
    from: IntervalSet,
    to: IntervalSet,
    ratio: Rat,
}

/// `μ(x ∩ [0, q))`.
fn cumulative(x: &IntervalSet, q: &Rat) -> Rat {
    x.parts()
        .iter()
        .filter(|(s, _)| s < q)
        .fold(Rat::zero(), |acc, (s, t)| acc + (t.min(q) - s))
}

impl PiecewiseIso {
    pub fn new(from: &IntervalSet, to: &IntervalSet) -> Result<Self, OperatorError> {
        if from.is_empty() || to.is_empty() {
            return Err(OperatorError::BadParameters(
                "an isomorphism of relative algebras needs nonzero bounds".into(),
            ));
        }
        Ok(PiecewiseIso {
            from: from.clone(),
            to: to.clone(),
            ratio: to.measure() / from.measure(),
        })
    }

    pub fn from(&self) -> &IntervalSet {
        &self.from
    }

    pub fn to(&self) -> &IntervalSet {
        &self.to
    }

    pub fn inverse(&self) -> PiecewiseIso {
        PiecewiseIso {
            from: self.to.clone(),
            to: self.from.clone(),
            ratio: rat(1, 1) / &self.ratio,
        }
    }

    /// The image of `x · from`.
    pub fn apply(&self, x: &IntervalSet) -> IntervalSet {
        let mut out = IntervalSet::empty();
        for (s, t) in x.intersection(&self.from).parts() {
            let d1 = cumulative(&self.from, s) * &self.ratio;
            let d2 = cumulative(&self.from, t) * &self.ratio;
            let mut base = Rat::zero();
            for (u, v) in self.to.parts() {
                let lo = (u + &d1 - &base).max(u.clone());
                let hi = (u + &d2 - &base).min(v.clone());
                if lo < hi {
                    let piece = IntervalSet::interval(lo, hi).expect("inside the target");
                    out = out.union(&piece);
                }
                base += v - u;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{seeded_rng, BooleanAlgebra, IntervalAlgebra};

    fn set(text: &str) -> IntervalSet {
        IntervalSet::parse(text).unwrap()
    }

    #[test]
    fn one_piece_is_affine() {
        let iso = PiecewiseIso::new(&set("[0,1/2)"), &set("[1/2,1)")).unwrap();
        assert_eq!(iso.apply(&set("[1/8,1/4)")), set("[5/8,3/4)"));
        let stretch = PiecewiseIso::new(&set("[1/2,1)"), &set("[1/4,1)")).unwrap();
        assert_eq!(stretch.apply(&set("[1/2,3/4)")), set("[1/4,5/8)"));
        assert_eq!(stretch.apply(&set("[0,1)")), set("[1/4,1)"));
    }

    #[test]
    fn split_targets() {
        let iso = PiecewiseIso::new(&set("[0,1/2)"), &set("[0,1/8)+[3/4,1)")).unwrap();
        assert_eq!(iso.apply(&set("[0,1/2)")), set("[0,1/8)+[3/4,1)"));
        assert_eq!(iso.apply(&set("[1/8,1/4)")), set("[3/32,1/8)+[3/4,13/16)"));
    }

    #[test]
    fn boolean_isomorphism_on_samples() {
        let alg = IntervalAlgebra;
        let from = set("[0,1/4)+[1/2,2/3)");
        let to = set("[1/3,1/2)+[3/4,1)");
        let iso = PiecewiseIso::new(&from, &to).unwrap();
        let inv = iso.inverse();
        let mut rng = seeded_rng(5);
        for _ in 0..300 {
            let x = alg.random_element(&mut rng).intersection(&from);
            let y = alg.random_element(&mut rng).intersection(&from);
            assert!(iso.apply(&x).is_subset(&to));
            assert_eq!(inv.apply(&iso.apply(&x)), x);
            assert_eq!(iso.apply(&x.union(&y)), iso.apply(&x).union(&iso.apply(&y)));
            assert_eq!(
                iso.apply(&x.intersection(&y)),
                iso.apply(&x).intersection(&iso.apply(&y))
            );
            assert_eq!(iso.apply(&x).measure(), x.measure() * to.measure() / from.measure());
        }
    }
}
