//! The interval algebra of the rational unit interval `[0,1) ∩ ℚ`.
//!
//! An element is a finite union of half-open intervals `[s, t)` with exact
//! rational endpoints in `[0, 1]`; the right endpoint `1` stands for the
//! top of the order. Elements are always kept in standard representation:
//! `s_0 < t_0 < s_1 < t_1 < …`, so equality is structural.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::{BooleanAlgebra, SampleRng, WitnessGrid};
use crate::error::AlgebraError;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Order of two rationals by cross-multiplication. `Ord` on `Rat` recurses
/// once per continued-fraction term and overflows the stack on deep
/// convergents.
pub fn cmp_rat(a: &Rat, b: &Rat) -> std::cmp::Ordering {
    // denominators of a normalized `Ratio` are positive
    (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()))
}

/// Parses `p/q` or an integer.
pub fn parse_rat(text: &str) -> Result<Rat, AlgebraError> {
    let t = text.trim();
    let bad = || AlgebraError::BadElement(t.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// A normalized finite union of half-open rational intervals in `[0, 1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalSet {
    parts: Vec<(Rat, Rat)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { parts: Vec::new() }
    }

    pub fn unit() -> Self {
        IntervalSet {
            parts: vec![(Rat::zero(), Rat::one())],
        }
    }

    /// `[s, t)`; an empty set when `s >= t`.
    pub fn interval(s: Rat, t: Rat) -> Result<Self, AlgebraError> {
        check_endpoint(&s)?;
        check_endpoint(&t)?;
        if s >= t {
            return Ok(IntervalSet::empty());
        }
        Ok(IntervalSet { parts: vec![(s, t)] })
    }

    /// Brings raw pairs into standard representation: sorted, disjoint, with
    /// overlapping and adjacent intervals fused.
    pub fn normalize(raw: impl IntoIterator<Item = (Rat, Rat)>) -> Result<Self, AlgebraError> {
        let mut parts: Vec<(Rat, Rat)> = Vec::new();
        for (s, t) in raw {
            check_endpoint(&s)?;
            check_endpoint(&t)?;
            if s >= t {
                return Err(AlgebraError::MalformedInterval {
                    start: s.to_string(),
                    end: t.to_string(),
                });
            }
            parts.push((s, t));
        }
        Ok(Self::fuse(parts))
    }

    fn fuse(mut parts: Vec<(Rat, Rat)>) -> Self {
        parts.sort();
        let mut out: Vec<(Rat, Rat)> = Vec::with_capacity(parts.len());
        for (s, t) in parts {
            match out.last_mut() {
                Some(last) if s <= last.1 => {
                    if t > last.1 {
                        last.1 = t;
                    }
                }
                _ => out.push((s, t)),
            }
        }
        IntervalSet { parts: out }
    }

    pub fn parts(&self) -> &[(Rat, Rat)] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, q: &Rat) -> bool {
        self.parts.iter().any(|(s, t)| s <= q && q < t)
    }

    /// Right endpoint of the last relevant interval.
    pub fn last_end(&self) -> Option<&Rat> {
        self.parts.last().map(|p| &p.1)
    }

    pub fn first_start(&self) -> Option<&Rat> {
        self.parts.first().map(|p| &p.0)
    }

    /// Total length, as a rational.
    pub fn measure(&self) -> Rat {
        self.parts
            .iter()
            .fold(Rat::zero(), |acc, (s, t)| acc + (t - s))
    }

    /// The relevant points `{s_j} ∪ {t_j}` of a nonzero element, ascending.
    pub fn relevant_points(&self) -> Result<Vec<Rat>, AlgebraError> {
        if self.is_empty() {
            return Err(AlgebraError::EmptyElement);
        }
        Ok(self
            .parts
            .iter()
            .flat_map(|(s, t)| [s.clone(), t.clone()])
            .collect())
    }

    /// The relevant intervals of a nonzero element, each as a one-piece set.
    pub fn relevant_intervals(&self) -> Result<Vec<IntervalSet>, AlgebraError> {
        if self.is_empty() {
            return Err(AlgebraError::EmptyElement);
        }
        Ok(self
            .parts
            .iter()
            .map(|p| IntervalSet {
                parts: vec![p.clone()],
            })
            .collect())
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        Self::fuse(self.parts.iter().chain(&other.parts).cloned().collect())
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let (a0, a1) = &self.parts[i];
            let (b0, b1) = &other.parts[j];
            let lo = a0.max(b0);
            let hi = a1.min(b1);
            if lo < hi {
                out.push((lo.clone(), hi.clone()));
            }
            if a1 < b1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet { parts: out }
    }

    pub fn complement(&self) -> IntervalSet {
        let mut out = Vec::new();
        let mut cursor = Rat::zero();
        for (s, t) in &self.parts {
            if &cursor < s {
                out.push((cursor.clone(), s.clone()));
            }
            cursor = t.clone();
        }
        if cursor < Rat::one() {
            out.push((cursor, Rat::one()));
        }
        IntervalSet { parts: out }
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.parts.iter().all(|(s, t)| {
            other
                .parts
                .iter()
                .any(|(u, v)| u <= s && t <= v)
        })
    }

    /// Parses `0`, `1`, or `[p/q, r/s) + [..)`.
    pub fn parse(text: &str) -> Result<IntervalSet, AlgebraError> {
        let t = text.trim();
        match t {
            "0" => return Ok(IntervalSet::empty()),
            "1" => return Ok(IntervalSet::unit()),
            _ => {}
        }
        let bad = || AlgebraError::BadElement(text.to_string());
        let mut raw = Vec::new();
        for piece in t.split('+').map(str::trim) {
            let inner = piece
                .strip_prefix('[')
                .and_then(|p| p.strip_suffix(')'))
                .ok_or_else(bad)?;
            let (s, e) = inner.split_once(',').ok_or_else(bad)?;
            raw.push((parse_rat(s)?, parse_rat(e)?));
        }
        Self::normalize(raw)
    }

    /// `[["0","1/2"],…]`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.parts
                .iter()
                .map(|(s, t)| serde_json::json!([s.to_string(), t.to_string()]))
                .collect(),
        )
    }

    pub fn from_json(value: &serde_json::Value) -> Result<IntervalSet, AlgebraError> {
        let bad = || AlgebraError::BadElement(value.to_string());
        let items = value.as_array().ok_or_else(bad)?;
        let mut raw = Vec::new();
        for item in items {
            let pair = item.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
            let s = pair[0].as_str().ok_or_else(bad)?;
            let t = pair[1].as_str().ok_or_else(bad)?;
            raw.push((parse_rat(s)?, parse_rat(t)?));
        }
        Self::normalize(raw)
    }
}

fn check_endpoint(q: &Rat) -> Result<(), AlgebraError> {
    if q < &Rat::zero() || q > &Rat::one() {
        return Err(AlgebraError::EndpointOutOfRange(q.to_string()));
    }
    Ok(())
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let body = self
            .parts
            .iter()
            .map(|(s, t)| format!("[{s},{t})"))
            .collect::<Vec<_>>()
            .join("+");
        write!(f, "{body}")
    }
}

/// `IntAlg([0,1) ∩ ℚ)`; atomless.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalAlgebra;

impl IntervalAlgebra {
    pub fn atoms(&self) -> Result<std::iter::Empty<IntervalSet>, AlgebraError> {
        Err(AlgebraError::Atomless)
    }
}

/// Denominators for sampled endpoints.
const DENOMINATORS: [i64; 10] = [2, 3, 4, 5, 6, 7, 8, 12, 16, 64];

fn random_rat(rng: &mut SampleRng) -> Rat {
    let d = DENOMINATORS[rng.gen_range(0..DENOMINATORS.len())];
    rat(rng.gen_range(0..=d), d)
}

/// A random rational strictly between `s` and `t`, `s < t`.
fn random_between(s: &Rat, t: &Rat, rng: &mut SampleRng) -> Rat {
    let q = rng.gen_range(2..=16i64);
    let k = rng.gen_range(1..q);
    s + (t - s) * rat(k, q)
}

impl BooleanAlgebra for IntervalAlgebra {
    type Elem = IntervalSet;

    fn name(&self) -> String {
        "intervals".to_string()
    }

    fn zero(&self) -> IntervalSet {
        IntervalSet::empty()
    }

    fn one(&self) -> IntervalSet {
        IntervalSet::unit()
    }

    fn join(&self, a: &IntervalSet, b: &IntervalSet) -> IntervalSet {
        a.union(b)
    }

    fn meet(&self, a: &IntervalSet, b: &IntervalSet) -> IntervalSet {
        a.intersection(b)
    }

    fn complement(&self, a: &IntervalSet) -> IntervalSet {
        a.complement()
    }

    fn leq(&self, a: &IntervalSet, b: &IntervalSet) -> bool {
        a.is_subset(b)
    }

    fn elements(&self) -> Option<Vec<IntervalSet>> {
        None
    }

    fn probe_elements(&self) -> Vec<IntervalSet> {
        let iv = |a, b, c, d| IntervalSet::interval(rat(a, b), rat(c, d)).expect("probe");
        vec![
            IntervalSet::empty(),
            IntervalSet::unit(),
            iv(0, 1, 1, 2),
            iv(1, 2, 1, 1),
            iv(1, 4, 3, 4),
            iv(0, 1, 1, 3),
            iv(1, 3, 2, 3),
            iv(2, 3, 1, 1),
            iv(63, 64, 1, 1),
            iv(0, 1, 1, 64),
            iv(0, 1, 1, 4).union(&iv(1, 2, 1, 1)),
            iv(1, 8, 1, 4).union(&iv(5, 8, 3, 4)),
        ]
    }

    fn random_element(&self, rng: &mut SampleRng) -> IntervalSet {
        let pieces = rng.gen_range(0..=3);
        let mut points: Vec<Rat> = (0..2 * pieces).map(|_| random_rat(rng)).collect();
        points.sort();
        points.dedup();
        let raw: Vec<(Rat, Rat)> = points
            .chunks_exact(2)
            .map(|c| (c[0].clone(), c[1].clone()))
            .collect();
        IntervalSet::fuse(raw)
    }

    fn random_below(&self, x: &IntervalSet, rng: &mut SampleRng) -> Option<IntervalSet> {
        if x.is_empty() {
            return None;
        }
        let (s, t) = &x.parts[rng.gen_range(0..x.parts.len())];
        let mut a = random_between(s, t, rng);
        let mut b = random_between(s, t, rng);
        if rng.gen_bool(0.3) {
            a = s.clone();
        }
        if rng.gen_bool(0.3) {
            b = t.clone();
        }
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        if a == b {
            b = t.clone();
            if a == b {
                a = s.clone();
            }
        }
        Some(IntervalSet {
            parts: vec![(a, b)],
        })
    }

    fn element_json(&self, a: &IntervalSet) -> serde_json::Value {
        a.to_json()
    }

    fn render(&self, a: &IntervalSet) -> String {
        a.to_string()
    }
}

/// Levels up to which the dyadic grid is complete.
const FULL_GRID_DEPTH: usize = 4;

impl WitnessGrid for IntervalAlgebra {
    /// Dyadic intervals `[j/2^d, (j+1)/2^d)` for `1 <= d <= depth`: every `j`
    /// while `d <= 4`, beyond that the two outer and two central ones.
    fn witness_grid(&self, depth: usize) -> Vec<IntervalSet> {
        let mut out = vec![IntervalSet::unit()];
        for d in 1..=depth.min(62) {
            let m = 1i64 << d;
            let js: Vec<i64> = if d <= FULL_GRID_DEPTH {
                (0..m).collect()
            } else {
                vec![0, m / 2 - 1, m / 2, m - 1]
            };
            for j in js {
                let x = IntervalSet::interval(rat(j, m), rat(j + 1, m)).expect("dyadic");
                if !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        out
    }

    fn is_atom(&self, _x: &IntervalSet) -> bool {
        false
    }
}
