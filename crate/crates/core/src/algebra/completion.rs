//! Meets of descending families, evaluated in the completion of a carrier.
//!
//! The completion is never built. Each carrier accepts the family shapes it
//! can analyse exactly and answers with a description of the infimum, a
//! certificate that a finite subfamily already meets to zero, or `Unknown`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use super::cofinite::FcSet;
use super::interval::{IntervalSet, Rat};
use super::powerset::{Powerset, Subset};
use super::real::RealPoint;
use crate::error::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompletionMeet<D> {
    /// The infimum in the completion.
    Value(D),
    /// The first `terms` members of the family already meet to zero.
    ZeroCertified { terms: usize },
    /// No verdict after examining `steps` members.
    Unknown { steps: usize },
}

impl<D> CompletionMeet<D> {
    pub fn value(&self) -> Option<&D> {
        match self {
            CompletionMeet::Value(d) => Some(d),
            _ => None,
        }
    }
}

/// Finite carriers: every family is finite, so the meet is exact.
pub fn powerset_meet(
    alg: &Powerset,
    family: &[Subset],
) -> Result<CompletionMeet<Subset>, AlgebraError> {
    let mut acc = alg.full();
    for (k, x) in family.iter().enumerate() {
        if k > 0 && !x.is_subset(family[k - 1]) {
            return Err(AlgebraError::NotDescending(k));
        }
        acc = acc.intersection(*x);
        if acc.is_empty() {
            return Ok(CompletionMeet::ZeroCertified { terms: k + 1 });
        }
    }
    Ok(CompletionMeet::Value(acc))
}

/// Descending families in `FC(ω)`.
pub enum FcFamily {
    /// `x_k = base ∖ {start + step·i : i < k}`.
    RemoveProgression { base: FcSet, start: u64, step: u64 },
    /// Anything else; only finite prefixes can be inspected.
    Opaque(Box<dyn Fn(usize) -> FcSet + Send + Sync>),
}

impl FcFamily {
    pub fn term(&self, k: usize) -> FcSet {
        match self {
            FcFamily::RemoveProgression { base, start, step } => {
                let removed = (0..k as u64).map(|i| start + step * i);
                base.intersection(&FcSet::cofinite(removed))
            }
            FcFamily::Opaque(f) => f(k),
        }
    }
}

/// A subset of `ω`, possibly outside `FC(ω)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OmegaSet {
    Fc(FcSet),
    /// `base ∖ {start + step·i : i ∈ ω}` for a cofinite base and `step >= 2`:
    /// infinite and coinfinite.
    MinusProgression { base: FcSet, start: u64, step: u64 },
}

impl OmegaSet {
    pub fn in_carrier(&self) -> bool {
        matches!(self, OmegaSet::Fc(_))
    }

    pub fn contains(&self, n: u64) -> bool {
        match self {
            OmegaSet::Fc(x) => x.contains(n),
            OmegaSet::MinusProgression { base, start, step } => {
                base.contains(n) && !(n >= *start && (n - start).is_multiple_of(*step))
            }
        }
    }
}

impl fmt::Display for OmegaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaSet::Fc(x) => write!(f, "{x}"),
            OmegaSet::MinusProgression { base, start, step } => {
                write!(f, "{base} ∖ {{{start} + {step}·i : i ∈ ω}}")
            }
        }
    }
}

pub fn fc_meet(family: &FcFamily, budget: usize) -> Result<CompletionMeet<OmegaSet>, AlgebraError> {
    let mut prev = family.term(0);
    let mut acc = prev.clone();
    if acc.is_empty() {
        return Ok(CompletionMeet::ZeroCertified { terms: 1 });
    }
    for k in 1..budget {
        let x = family.term(k);
        if !x.is_subset(&prev) {
            return Err(AlgebraError::NotDescending(k));
        }
        acc = acc.intersection(&x);
        if acc.is_empty() {
            return Ok(CompletionMeet::ZeroCertified { terms: k + 1 });
        }
        prev = x;
    }
    match family {
        FcFamily::Opaque(_) => Ok(CompletionMeet::Unknown { steps: budget }),
        FcFamily::RemoveProgression { base, start, step } => {
            if *step == 0 {
                return Err(AlgebraError::BadFamily {
                    step: 0,
                    reason: "progression step must be positive".into(),
                });
            }
            let in_prog = |n: u64| n >= *start && (n - start).is_multiple_of(*step);
            if base.is_finite() {
                let rest: Vec<u64> = base.stored().iter().copied().filter(|n| !in_prog(*n)).collect();
                if rest.is_empty() {
                    // some finite prefix already removed every member
                    let last = base.stored().iter().max().copied().unwrap_or(0);
                    let terms = if last >= *start { ((last - start) / step + 2) as usize } else { 1 };
                    return Ok(CompletionMeet::ZeroCertified { terms });
                }
                return Ok(CompletionMeet::Value(OmegaSet::Fc(FcSet::finite(rest))));
            }
            if *step == 1 {
                // a cofinite set minus a final segment: finite
                let rest = (0..*start).filter(|n| base.contains(*n));
                return Ok(CompletionMeet::Value(OmegaSet::Fc(FcSet::finite(rest))));
            }
            Ok(CompletionMeet::Value(OmegaSet::MinusProgression {
                base: base.clone(),
                start: *start,
                step: *step,
            }))
        }
    }
}

/// A half-open interval of the real unit interval with exact endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealInterval {
    pub start: RealPoint,
    pub end: RealPoint,
}

impl RealInterval {
    pub fn in_carrier(&self) -> bool {
        self.start.is_rational() && self.end.is_rational()
    }
}

impl fmt::Display for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.start, self.end)
    }
}

/// A finite union of real half-open intervals; empty means zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealIntervalUnion(pub Vec<RealInterval>);

impl RealIntervalUnion {
    pub fn from_set(x: &IntervalSet) -> Self {
        RealIntervalUnion(
            x.parts()
                .iter()
                .map(|(s, t)| RealInterval {
                    start: RealPoint::Rational(s.clone()),
                    end: RealPoint::Rational(t.clone()),
                })
                .collect(),
        )
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn in_carrier(&self) -> bool {
        self.0.iter().all(RealInterval::in_carrier)
    }
}

impl fmt::Display for RealIntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}

type RatSeq = Box<dyn Fn(usize) -> Rat + Send + Sync>;

/// Descending families in the interval algebra.
pub enum IntervalFamily {
    /// `[s_k, end)` with `s_k` non-decreasing and converging to `limit` from below.
    RisingStart { end: Rat, limit: RealPoint, starts: RatSeq },
    /// `[start, t_k)` with `t_k` non-increasing and converging to `limit` from above.
    FallingEnd { start: Rat, limit: RealPoint, ends: RatSeq },
    Explicit(Vec<IntervalSet>),
    Opaque(Box<dyn Fn(usize) -> IntervalSet + Send + Sync>),
}

impl IntervalFamily {
    pub fn term(&self, k: usize) -> Result<IntervalSet, AlgebraError> {
        match self {
            IntervalFamily::RisingStart { end, starts, .. } => {
                IntervalSet::interval(starts(k), end.clone())
            }
            IntervalFamily::FallingEnd { start, ends, .. } => {
                IntervalSet::interval(start.clone(), ends(k))
            }
            IntervalFamily::Explicit(items) => Ok(items
                .get(k)
                .or(items.last())
                .cloned()
                .unwrap_or_else(IntervalSet::unit)),
            IntervalFamily::Opaque(f) => Ok(f(k)),
        }
    }

    fn check_shape(&self, k: usize) -> Result<(), AlgebraError> {
        let fail = |reason: &str| AlgebraError::BadFamily {
            step: k,
            reason: reason.to_string(),
        };
        match self {
            IntervalFamily::RisingStart { limit, starts, .. } => {
                if limit.cmp_rational(&starts(k)) != Ordering::Greater {
                    return Err(fail("start not below the limit"));
                }
                if k > 0 && starts(k) < starts(k - 1) {
                    return Err(fail("starts not monotone"));
                }
            }
            IntervalFamily::FallingEnd { limit, ends, .. } => {
                if limit.cmp_rational(&ends(k)) != Ordering::Less {
                    return Err(fail("end not above the limit"));
                }
                if k > 0 && ends(k) > ends(k - 1) {
                    return Err(fail("ends not monotone"));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

pub fn interval_meet(
    family: &IntervalFamily,
    budget: usize,
) -> Result<CompletionMeet<RealIntervalUnion>, AlgebraError> {
    let steps = match family {
        IntervalFamily::Explicit(items) => items.len(),
        _ => budget,
    };
    let mut acc = IntervalSet::unit();
    let mut prev: Option<IntervalSet> = None;
    for k in 0..steps {
        family.check_shape(k)?;
        let x = family.term(k)?;
        if let Some(p) = &prev {
            if !x.is_subset(p) {
                return Err(AlgebraError::NotDescending(k));
            }
        }
        acc = acc.intersection(&x);
        if acc.is_empty() {
            return Ok(CompletionMeet::ZeroCertified { terms: k + 1 });
        }
        prev = Some(x);
    }
    let one = Rat::one();
    let zero = Rat::zero();
    match family {
        IntervalFamily::Explicit(_) => Ok(CompletionMeet::Value(RealIntervalUnion::from_set(&acc))),
        IntervalFamily::Opaque(_) => Ok(CompletionMeet::Unknown { steps }),
        IntervalFamily::RisingStart { end, limit, .. } => {
            let clipped = limit.cmp_rational(end) == Ordering::Less && limit.cmp_rational(&zero) != Ordering::Less;
            let parts = if clipped {
                vec![RealInterval {
                    start: limit.clone(),
                    end: RealPoint::Rational(end.clone()),
                }]
            } else {
                Vec::new()
            };
            Ok(CompletionMeet::Value(RealIntervalUnion(parts)))
        }
        IntervalFamily::FallingEnd { start, limit, .. } => {
            let clipped = limit.cmp_rational(start) == Ordering::Greater && limit.cmp_rational(&one) != Ordering::Greater;
            let parts = if clipped {
                vec![RealInterval {
                    start: RealPoint::Rational(start.clone()),
                    end: limit.clone(),
                }]
            } else {
                Vec::new()
            };
            Ok(CompletionMeet::Value(RealIntervalUnion(parts)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::interval::rat;
    use crate::algebra::real::QuadIrrational;

    #[test]
    fn powerset_family_meets_exactly() {
        let b = Powerset::new(3).unwrap();
        let fam = [Subset(0b111), Subset(0b110), Subset(0b110), Subset(0b100)];
        assert_eq!(powerset_meet(&b, &fam).unwrap(), CompletionMeet::Value(Subset(0b100)));
        let to_zero = [Subset(0b11), Subset(0b01), Subset(0)];
        assert_eq!(
            powerset_meet(&b, &to_zero).unwrap(),
            CompletionMeet::ZeroCertified { terms: 3 }
        );
        assert_eq!(
            powerset_meet(&b, &[Subset(0b01), Subset(0b10)]),
            Err(AlgebraError::NotDescending(1))
        );
    }

    #[test]
    fn cofinite_tails_meet_to_empty_in_the_completion() {
        let fam = FcFamily::RemoveProgression {
            base: FcSet::omega(),
            start: 0,
            step: 1,
        };
        // every finite prefix is cofinite, the infinite meet is empty
        for k in 0..20 {
            assert!(fam.term(k).is_cofinite());
        }
        let meet = fc_meet(&fam, 32).unwrap();
        assert_eq!(meet, CompletionMeet::Value(OmegaSet::Fc(FcSet::empty())));
    }

    #[test]
    fn removing_the_evens_leaves_the_carrier() {
        let fam = FcFamily::RemoveProgression {
            base: FcSet::omega(),
            start: 0,
            step: 2,
        };
        let meet = fc_meet(&fam, 16).unwrap();
        let value = meet.value().unwrap();
        assert!(!value.in_carrier());
        assert!(value.contains(3) && !value.contains(4));
    }

    #[test]
    fn finite_base_reaches_zero() {
        let fam = FcFamily::RemoveProgression {
            base: FcSet::finite([0, 1, 2]),
            start: 0,
            step: 1,
        };
        assert!(matches!(
            fc_meet(&fam, 8).unwrap(),
            CompletionMeet::ZeroCertified { .. }
        ));
        let opaque = FcFamily::Opaque(Box::new(|k| FcSet::cofinite(0..k as u64 * 2)));
        assert_eq!(fc_meet(&opaque, 10).unwrap(), CompletionMeet::Unknown { steps: 10 });
        let rising = FcFamily::Opaque(Box::new(|k| FcSet::finite(0..k as u64 + 1)));
        assert_eq!(fc_meet(&rising, 10), Err(AlgebraError::NotDescending(1)));
    }

    #[test]
    fn rising_starts_towards_an_irrational() {
        let p = RealPoint::Quadratic(QuadIrrational::half_sqrt2());
        let lim = p.clone();
        let fam = IntervalFamily::RisingStart {
            end: rat(1, 1),
            limit: p.clone(),
            starts: Box::new(move |k| lim.dyadic_floor(k as u32 + 1)),
        };
        let meet = interval_meet(&fam, 24).unwrap();
        let value = meet.value().unwrap();
        assert_eq!(value.0.len(), 1);
        assert_eq!(value.0[0].start, p);
        assert!(!value.in_carrier());
    }

    #[test]
    fn falling_ends_and_shape_checks() {
        let fam = IntervalFamily::FallingEnd {
            start: rat(0, 1),
            limit: RealPoint::Rational(rat(1, 3)),
            ends: Box::new(|k| rat(1, 3) + rat(1, k as i64 + 2)),
        };
        let meet = interval_meet(&fam, 16).unwrap();
        assert_eq!(meet.value().unwrap().to_string(), "[0, 1/3)");
        let wrong = IntervalFamily::FallingEnd {
            start: rat(0, 1),
            limit: RealPoint::Rational(rat(1, 2)),
            ends: Box::new(|_| rat(1, 3)),
        };
        assert!(matches!(
            interval_meet(&wrong, 4),
            Err(AlgebraError::BadFamily { .. })
        ));
        let explicit = IntervalFamily::Explicit(vec![
            IntervalSet::parse("[0,1/2)").unwrap(),
            IntervalSet::parse("[1/4,1/2)").unwrap(),
        ]);
        assert_eq!(
            interval_meet(&explicit, 0).unwrap().value().unwrap().to_string(),
            "[1/4, 1/2)"
        );
    }
}
