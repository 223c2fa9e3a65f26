//! Finite powerset algebras `2^n`, elements packed in a machine word.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use super::{BooleanAlgebra, SampleRng, WitnessGrid};
use crate::error::AlgebraError;

/// Largest supported atom count.
pub const MAX_ATOMS: usize = 16;

/// An element of a finite powerset algebra: bit `i` set iff atom `i` is below it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn atom(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Indices of the atoms below this element, ascending.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// All nonzero `y <= self`, in increasing numeric order.
    pub fn nonzero_below(self) -> impl Iterator<Item = Subset> {
        let x = self.0;
        // Ascending submask walk: `(sub - x) & x` is the next submask of `x`.
        let mut sub = 0u32;
        let mut done = x == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            sub = (sub.wrapping_sub(x)) & x;
            if sub == 0 {
                done = true;
                return None;
            }
            Some(Subset(sub))
        })
    }
}

impl fmt::LowerHex for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

/// The powerset algebra over a finite, labelled atom set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Powerset {
    labels: Vec<String>,
}

impl Powerset {
    /// `n` atoms labelled `a`, `b`, `c`, ...
    pub fn new(n: usize) -> Result<Self, AlgebraError> {
        let labels = (0..n).map(default_label).collect();
        Self::with_labels(labels)
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self, AlgebraError> {
        if labels.is_empty() {
            return Err(AlgebraError::NoAtoms);
        }
        if labels.len() > MAX_ATOMS {
            return Err(AlgebraError::TooManyAtoms(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(AlgebraError::DuplicateAtom(l.clone()));
            }
        }
        Ok(Powerset { labels })
    }

    pub fn atom_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Number of elements, `2^n`.
    pub fn size(&self) -> usize {
        1 << self.labels.len()
    }

    pub fn full(&self) -> Subset {
        Subset(full_mask(self.labels.len()))
    }

    pub fn atoms(&self) -> impl Iterator<Item = Subset> {
        (0..self.labels.len()).map(Subset::atom)
    }

    pub fn contains(&self, x: Subset) -> bool {
        x.is_subset(self.full())
    }

    pub fn atom_index(&self, label: &str) -> Result<usize, AlgebraError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| AlgebraError::UnknownAtom(label.to_string()))
    }

    /// Parses `0`, `1`, or a `+`-separated list of atom labels.
    pub fn parse_element(&self, text: &str) -> Result<Subset, AlgebraError> {
        let text = text.trim();
        match text {
            "0" => return Ok(Subset::EMPTY),
            "1" => return Ok(self.full()),
            "" => return Err(AlgebraError::BadElement(text.to_string())),
            _ => {}
        }
        let mut acc = Subset::EMPTY;
        for part in text.split('+') {
            let part = part.trim();
            if part == "0" {
                continue;
            }
            if part == "1" {
                acc = self.full();
                continue;
            }
            acc = acc.union(Subset::atom(self.atom_index(part)?));
        }
        Ok(acc)
    }

    pub fn format(&self, x: Subset) -> String {
        if x.is_empty() {
            return "0".to_string();
        }
        x.indices()
            .map(|i| self.labels[i].as_str())
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn to_hex(&self, x: Subset) -> String {
        format!("{:#x}", x.0)
    }

    pub fn from_hex(&self, text: &str) -> Result<Subset, AlgebraError> {
        let digits = text.trim().trim_start_matches("0x");
        let bits = u32::from_str_radix(digits, 16)
            .map_err(|_| AlgebraError::BadElement(text.to_string()))?;
        let x = Subset(bits);
        if !self.contains(x) {
            return Err(AlgebraError::BadElement(text.to_string()));
        }
        Ok(x)
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn default_label(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("a{i}")
    }
}

impl BooleanAlgebra for Powerset {
    type Elem = Subset;

    fn name(&self) -> String {
        format!("powerset({})", self.labels.len())
    }

    fn zero(&self) -> Subset {
        Subset::EMPTY
    }

    fn one(&self) -> Subset {
        self.full()
    }

    fn join(&self, a: &Subset, b: &Subset) -> Subset {
        a.union(*b)
    }

    fn meet(&self, a: &Subset, b: &Subset) -> Subset {
        a.intersection(*b)
    }

    fn complement(&self, a: &Subset) -> Subset {
        Subset(!a.0 & self.full().0)
    }

    fn leq(&self, a: &Subset, b: &Subset) -> bool {
        a.is_subset(*b)
    }

    fn elements(&self) -> Option<Vec<Subset>> {
        Some((0..self.size() as u32).map(Subset).collect())
    }

    fn probe_elements(&self) -> Vec<Subset> {
        self.elements().unwrap_or_default()
    }

    fn random_element(&self, rng: &mut SampleRng) -> Subset {
        Subset(rng.gen::<u32>() & self.full().0)
    }

    fn random_below(&self, x: &Subset, rng: &mut SampleRng) -> Option<Subset> {
        if x.is_empty() {
            return None;
        }
        loop {
            let y = Subset(rng.gen::<u32>() & x.0);
            if !y.is_empty() {
                return Some(y);
            }
        }
    }

    fn element_json(&self, a: &Subset) -> serde_json::Value {
        serde_json::Value::String(self.to_hex(*a))
    }

    fn render(&self, a: &Subset) -> String {
        self.format(*a)
    }
}

impl WitnessGrid for Powerset {
    /// Every nonzero element, by cardinality and then by bit pattern.
    fn witness_grid(&self, _depth: usize) -> Vec<Subset> {
        let mut all: Vec<Subset> = (1..=self.full().0).map(Subset).collect();
        all.sort_by_key(|x| (x.len(), x.0));
        all
    }

    fn is_atom(&self, x: &Subset) -> bool {
        x.len() == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atoms_join_to_top() {
        let b = Powerset::new(2).unwrap();
        assert_eq!(b.join(&Subset(0b01), &Subset(0b10)), Subset(0b11));
        assert_eq!(b.one(), Subset(0b11));
    }

    #[test]
    fn atom_count_and_size() {
        let b = Powerset::new(3).unwrap();
        assert_eq!(b.atoms().count(), 3);
        assert_eq!(b.elements().unwrap().len(), 8);
    }

    #[test]
    fn caps_and_labels() {
        assert_eq!(Powerset::new(17), Err(AlgebraError::TooManyAtoms(17)));
        assert_eq!(Powerset::new(0), Err(AlgebraError::NoAtoms));
        let dup = Powerset::with_labels(vec!["p".into(), "p".into()]);
        assert_eq!(dup, Err(AlgebraError::DuplicateAtom("p".into())));
    }

    #[test]
    fn nonzero_below_enumerates_every_submask_once() {
        let x = Subset(0b1011);
        let subs: Vec<_> = x.nonzero_below().collect();
        assert_eq!(subs.len(), 7);
        assert!(subs.iter().all(|s| s.is_subset(x) && !s.is_empty()));
        let mut sorted = subs.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 7);
        assert_eq!(Subset(0).nonzero_below().count(), 0);
    }

    #[test]
    fn parse_and_format_round_trip() {
        let b = Powerset::with_labels(vec!["p".into(), "q".into(), "r".into()]).unwrap();
        let x = b.parse_element("p + r").unwrap();
        assert_eq!(x, Subset(0b101));
        assert_eq!(b.format(x), "p+r");
        assert_eq!(b.parse_element("1").unwrap(), b.full());
        assert!(b.parse_element("s").is_err());
        assert_eq!(b.from_hex(&b.to_hex(x)).unwrap(), x);
        assert!(b.from_hex("0x10").is_err());
    }

    #[test]
    fn symdiff_of_self_is_zero() {
        let b = Powerset::new(3).unwrap();
        for x in b.elements().unwrap() {
            assert_eq!(b.symdiff(&x, &x), Subset::EMPTY);
        }
    }
}
