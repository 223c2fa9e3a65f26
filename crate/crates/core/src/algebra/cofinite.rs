//! The finite–cofinite algebra `FC(ω)`.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{BooleanAlgebra, SampleRng, WitnessGrid};
use crate::error::AlgebraError;

/// A finite or cofinite subset of the naturals.
///
/// In cofinite mode `items` holds the (finite) complement.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FcSet {
    #[serde(rename = "mode", with = "mode_tag")]
    cofinite: bool,
    #[serde(rename = "set")]
    items: BTreeSet<u64>,
}

mod mode_tag {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(cofinite: &bool, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(if *cofinite { "cofinite" } else { "finite" })
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<bool, D::Error> {
        match String::deserialize(d)?.as_str() {
            "finite" => Ok(false),
            "cofinite" => Ok(true),
            other => Err(serde::de::Error::custom(format!("unknown mode `{other}`"))),
        }
    }
}

impl FcSet {
    pub fn empty() -> Self {
        FcSet::finite(std::iter::empty())
    }

    pub fn omega() -> Self {
        FcSet::cofinite(std::iter::empty())
    }

    pub fn finite(items: impl IntoIterator<Item = u64>) -> Self {
        FcSet {
            cofinite: false,
            items: items.into_iter().collect(),
        }
    }

    /// `ω ∖ missing`.
    pub fn cofinite(missing: impl IntoIterator<Item = u64>) -> Self {
        FcSet {
            cofinite: true,
            items: missing.into_iter().collect(),
        }
    }

    pub fn singleton(n: u64) -> Self {
        FcSet::finite([n])
    }

    pub fn is_cofinite(&self) -> bool {
        self.cofinite
    }

    pub fn is_finite(&self) -> bool {
        !self.cofinite
    }

    /// The explicitly stored finite set: the members in finite mode, the
    /// missing points in cofinite mode.
    pub fn stored(&self) -> &BTreeSet<u64> {
        &self.items
    }

    pub fn contains(&self, n: u64) -> bool {
        self.items.contains(&n) != self.cofinite
    }

    pub fn is_empty(&self) -> bool {
        !self.cofinite && self.items.is_empty()
    }

    pub fn is_omega(&self) -> bool {
        self.cofinite && self.items.is_empty()
    }

    /// The single member if this is an atom.
    pub fn as_atom(&self) -> Option<u64> {
        if !self.cofinite && self.items.len() == 1 {
            self.items.iter().next().copied()
        } else {
            None
        }
    }

    pub fn union(&self, other: &FcSet) -> FcSet {
        match (self.cofinite, other.cofinite) {
            (false, false) => FcSet {
                cofinite: false,
                items: &self.items | &other.items,
            },
            (true, true) => FcSet {
                cofinite: true,
                items: &self.items & &other.items,
            },
            (true, false) => FcSet {
                cofinite: true,
                items: &self.items - &other.items,
            },
            (false, true) => other.union(self),
        }
    }

    pub fn intersection(&self, other: &FcSet) -> FcSet {
        self.complement().union(&other.complement()).complement()
    }

    pub fn complement(&self) -> FcSet {
        FcSet {
            cofinite: !self.cofinite,
            items: self.items.clone(),
        }
    }

    pub fn is_subset(&self, other: &FcSet) -> bool {
        match (self.cofinite, other.cofinite) {
            (false, false) => self.items.is_subset(&other.items),
            (false, true) => self.items.is_disjoint(&other.items),
            (true, false) => false,
            (true, true) => other.items.is_subset(&self.items),
        }
    }

    /// Members below `bound`, for printing and truncated checks.
    pub fn members_below(&self, bound: u64) -> Vec<u64> {
        (0..bound).filter(|&n| self.contains(n)).collect()
    }

    /// Parses `{1,3}`, `co{0,2}`, `0` (empty) or `1` / `ω` (everything).
    pub fn parse(text: &str) -> Result<FcSet, AlgebraError> {
        let t = text.trim();
        match t {
            "0" | "{}" => return Ok(FcSet::empty()),
            "1" | "ω" | "omega" => return Ok(FcSet::omega()),
            _ => {}
        }
        let bad = || AlgebraError::BadElement(text.to_string());
        let (cofinite, body) = match t.strip_prefix("co") {
            Some(rest) => (true, rest.trim()),
            None => (false, t),
        };
        let inner = body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(bad)?;
        let mut items = BTreeSet::new();
        for piece in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            items.insert(piece.parse::<u64>().map_err(|_| bad())?);
        }
        Ok(FcSet { cofinite, items })
    }
}

impl fmt::Display for FcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self
            .items
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(",");
        if self.cofinite {
            write!(f, "co{{{body}}}")
        } else {
            write!(f, "{{{body}}}")
        }
    }
}

/// `FC(ω)`; atoms are the singletons.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct FiniteCofinite;

impl FiniteCofinite {
    /// The singletons `{0}, {1}, ...`, lazily.
    pub fn atoms(&self) -> impl Iterator<Item = FcSet> {
        (0u64..).map(FcSet::singleton)
    }
}

/// Range of naturals used by the random sampler.
const SAMPLE_RANGE: u64 = 24;

impl BooleanAlgebra for FiniteCofinite {
    type Elem = FcSet;

    fn name(&self) -> String {
        "fc".to_string()
    }

    fn zero(&self) -> FcSet {
        FcSet::empty()
    }

    fn one(&self) -> FcSet {
        FcSet::omega()
    }

    fn join(&self, a: &FcSet, b: &FcSet) -> FcSet {
        a.union(b)
    }

    fn meet(&self, a: &FcSet, b: &FcSet) -> FcSet {
        a.intersection(b)
    }

    fn complement(&self, a: &FcSet) -> FcSet {
        a.complement()
    }

    fn leq(&self, a: &FcSet, b: &FcSet) -> bool {
        a.is_subset(b)
    }

    fn elements(&self) -> Option<Vec<FcSet>> {
        None
    }

    fn probe_elements(&self) -> Vec<FcSet> {
        let mut out = vec![FcSet::empty(), FcSet::omega()];
        for n in 0..6 {
            out.push(FcSet::singleton(n));
            out.push(FcSet::cofinite([n]));
        }
        out.push(FcSet::finite([1, 3]));
        out.push(FcSet::finite([0, 2]));
        out.push(FcSet::finite([2, 4]));
        out.push(FcSet::cofinite([0, 1, 2]));
        out.push(FcSet::cofinite([0, 2, 4]));
        out
    }

    fn random_element(&self, rng: &mut SampleRng) -> FcSet {
        let len = rng.gen_range(0..5);
        let items: BTreeSet<u64> = (0..len).map(|_| rng.gen_range(0..SAMPLE_RANGE)).collect();
        FcSet {
            cofinite: rng.gen_bool(0.5),
            items,
        }
    }

    fn random_below(&self, x: &FcSet, rng: &mut SampleRng) -> Option<FcSet> {
        if x.is_empty() {
            return None;
        }
        if x.is_cofinite() && rng.gen_bool(0.5) {
            // a cofinite subset: drop a few more points
            let extra = (0..rng.gen_range(0..3)).map(|_| rng.gen_range(0..SAMPLE_RANGE));
            let mut missing = x.items.clone();
            missing.extend(extra);
            return Some(FcSet::cofinite(missing));
        }
        let members: Vec<u64> = if x.is_cofinite() {
            (0..SAMPLE_RANGE + x.items.len() as u64)
                .filter(|n| x.contains(*n))
                .collect()
        } else {
            x.items.iter().copied().collect()
        };
        let k = rng.gen_range(1..=members.len().min(4));
        let mut pick = BTreeSet::new();
        while pick.len() < k {
            pick.insert(members[rng.gen_range(0..members.len())]);
        }
        Some(FcSet::finite(pick))
    }

    fn element_json(&self, a: &FcSet) -> serde_json::Value {
        serde_json::to_value(a).expect("FcSet serializes")
    }

    fn render(&self, a: &FcSet) -> String {
        a.to_string()
    }
}

impl WitnessGrid for FiniteCofinite {
    /// Singletons `{k}` and tails `ω ∖ {0..k}` for `k < depth`, interleaved.
    fn witness_grid(&self, depth: usize) -> Vec<FcSet> {
        (0..depth as u64)
            .flat_map(|k| [FcSet::singleton(k), FcSet::cofinite(0..k)])
            .collect()
    }

    fn is_atom(&self, x: &FcSet) -> bool {
        x.as_atom().is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_swaps_mode_and_keeps_the_stored_set() {
        let x = FcSet::finite([0, 2]);
        let c = x.complement();
        assert!(c.is_cofinite());
        assert_eq!(c.stored(), &BTreeSet::from([0, 2]));
        assert!(!c.contains(0) && c.contains(1));
    }

    #[test]
    fn first_atoms_are_singletons() {
        let atoms: Vec<_> = FiniteCofinite.atoms().take(4).collect();
        assert_eq!(
            atoms,
            vec![
                FcSet::singleton(0),
                FcSet::singleton(1),
                FcSet::singleton(2),
                FcSet::singleton(3)
            ]
        );
    }

    #[test]
    fn mixed_mode_union_and_meet() {
        let fin = FcSet::finite([1, 5]);
        let cof = FcSet::cofinite([1, 2]);
        assert_eq!(fin.union(&cof), FcSet::cofinite([2]));
        assert_eq!(fin.intersection(&cof), FcSet::finite([5]));
        assert!(FcSet::finite([3]).is_subset(&cof));
        assert!(!cof.is_subset(&fin));
    }

    #[test]
    fn parse_display_and_json() {
        let x = FcSet::parse("co{0, 2}").unwrap();
        assert_eq!(x, FcSet::cofinite([0, 2]));
        assert_eq!(x.to_string(), "co{0,2}");
        assert_eq!(FcSet::parse("1").unwrap(), FcSet::omega());
        assert!(FcSet::parse("{a}").is_err());
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"mode":"cofinite","set":[0,2]}"#);
        let back: FcSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn random_below_stays_below() {
        let mut rng = crate::algebra::seeded_rng(7);
        for _ in 0..500 {
            let x = FiniteCofinite.random_element(&mut rng);
            match FiniteCofinite.random_below(&x, &mut rng) {
                None => assert!(x.is_empty()),
                Some(y) => assert!(!y.is_empty() && y.is_subset(&x)),
            }
        }
    }
}
