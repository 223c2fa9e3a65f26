use std::cmp::Ordering;
use std::fmt;

use super::ElementMap;
use crate::algebra::{BooleanAlgebra, Powerset, Subset};
use crate::error::OperatorError;

/// Largest atom count for which `M(B)` is enumerated: `(2^n)^n` operators.
pub const MAX_ENUM_ATOMS: usize = 4;

/// A modal operator on a finite powerset algebra, stored by its atom table.
///
/// `f(x) = Σ{table[i] : atom i <= x}`, the unique additive extension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteOp {
    alg: Powerset,
    table: Vec<Subset>,
}

impl FiniteOp {
    pub fn new(alg: &Powerset, table: Vec<Subset>) -> Result<Self, OperatorError> {
        if table.len() != alg.atom_count() {
            return Err(OperatorError::TableSize {
                expected: alg.atom_count(),
                found: table.len(),
            });
        }
        if let Some(bad) = table.iter().find(|t| !alg.contains(**t)) {
            return Err(OperatorError::TableOutOfRange(bad.0));
        }
        Ok(FiniteOp {
            alg: alg.clone(),
            table,
        })
    }

    /// Tabulates `rule` after checking normality and additivity on every pair.
    pub fn from_fn(alg: &Powerset, rule: impl Fn(Subset) -> Subset) -> Result<Self, OperatorError> {
        let values: Vec<Subset> = (0..alg.size() as u32).map(|x| rule(Subset(x))).collect();
        if let Some(bad) = values.iter().find(|v| !alg.contains(**v)) {
            return Err(OperatorError::TableOutOfRange(bad.0));
        }
        if !values[0].is_empty() {
            return Err(OperatorError::NotNormal {
                value: alg.format(values[0]),
            });
        }
        for x in 0..values.len() {
            for y in x + 1..values.len() {
                let lhs = values[x | y];
                let rhs = values[x].union(values[y]);
                if lhs != rhs {
                    return Err(OperatorError::NotAdditive {
                        x: alg.format(Subset(x as u32)),
                        y: alg.format(Subset(y as u32)),
                        lhs: alg.format(lhs),
                        rhs: alg.format(rhs),
                    });
                }
            }
        }
        let table = alg.atoms().map(|a| values[a.0 as usize]).collect();
        Ok(FiniteOp {
            alg: alg.clone(),
            table,
        })
    }

    /// `f⁰`.
    pub fn zero(alg: &Powerset) -> Self {
        Self::constant_on_atoms(alg, Subset::EMPTY)
    }

    /// `f¹`, the unary discriminator.
    pub fn discriminator(alg: &Powerset) -> Self {
        Self::constant_on_atoms(alg, alg.full())
    }

    /// `f_x`: `x` on every nonzero element.
    pub fn relativized(alg: &Powerset, x: Subset) -> Result<Self, OperatorError> {
        if x.is_empty() {
            return Err(OperatorError::DegenerateParameter);
        }
        if !alg.contains(x) {
            return Err(OperatorError::TableOutOfRange(x.0));
        }
        Ok(Self::constant_on_atoms(alg, x))
    }

    /// `1′`.
    pub fn identity(alg: &Powerset) -> Self {
        FiniteOp {
            alg: alg.clone(),
            table: alg.atoms().collect(),
        }
    }

    fn constant_on_atoms(alg: &Powerset, v: Subset) -> Self {
        FiniteOp {
            alg: alg.clone(),
            table: vec![v; alg.atom_count()],
        }
    }

    pub fn alg(&self) -> &Powerset {
        &self.alg
    }

    pub fn table(&self) -> &[Subset] {
        &self.table
    }

    pub fn eval(&self, x: Subset) -> Subset {
        x.indices()
            .fold(Subset::EMPTY, |acc, i| acc.union(self.table[i]))
    }

    /// `f(x)` for every `x`, indexed by bit pattern.
    pub fn values(&self) -> Vec<Subset> {
        let mut out = vec![Subset::EMPTY; self.alg.size()];
        for x in 1..out.len() {
            let low = x.trailing_zeros() as usize;
            out[x] = out[x & (x - 1)].union(self.table[low]);
        }
        out
    }

    fn same_carrier(&self, other: &FiniteOp) -> Result<(), OperatorError> {
        if self.alg != other.alg {
            return Err(OperatorError::CarrierMismatch);
        }
        Ok(())
    }

    /// `(f ∨ g)(x) = f(x) + g(x)`.
    pub fn join(&self, other: &FiniteOp) -> Result<FiniteOp, OperatorError> {
        self.same_carrier(other)?;
        Ok(FiniteOp {
            alg: self.alg.clone(),
            table: self
                .table
                .iter()
                .zip(&other.table)
                .map(|(a, b)| a.union(*b))
                .collect(),
        })
    }

    /// `(f ∘ g)(x) = f(g(x))`.
    pub fn compose(&self, other: &FiniteOp) -> Result<FiniteOp, OperatorError> {
        self.same_carrier(other)?;
        Ok(FiniteOp {
            alg: self.alg.clone(),
            table: other.table.iter().map(|t| self.eval(*t)).collect(),
        })
    }

    /// `f^n`, `n >= 1`.
    pub fn iterate(&self, n: u32) -> Result<FiniteOp, OperatorError> {
        if n == 0 {
            return Err(OperatorError::ZeroIteration);
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Pointwise order; on atom tables it suffices to compare the tables.
    pub fn leq(&self, other: &FiniteOp) -> bool {
        self.alg == other.alg
            && self
                .table
                .iter()
                .zip(&other.table)
                .all(|(a, b)| a.is_subset(*b))
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|t| t.is_empty())
    }

    pub fn is_discriminator(&self) -> bool {
        let full = self.alg.full();
        self.table.iter().all(|t| *t == full)
    }

    /// Number of operators on `alg`, `(2^n)^n`.
    pub fn count(alg: &Powerset) -> Result<u64, OperatorError> {
        let n = alg.atom_count();
        if n > MAX_ENUM_ATOMS {
            return Err(OperatorError::AboveCap {
                what: "operator enumeration",
                cap: MAX_ENUM_ATOMS,
                n,
            });
        }
        Ok(1u64 << (n * n))
    }

    /// The operator at position `index` in lexicographic table order.
    pub fn nth(alg: &Powerset, index: u64) -> FiniteOp {
        let n = alg.atom_count();
        let table = (0..n)
            .map(|i| Subset(((index >> ((n - 1 - i) * n)) & ((1u64 << n) - 1)) as u32))
            .collect();
        FiniteOp {
            alg: alg.clone(),
            table,
        }
    }

    /// Position of this operator in lexicographic table order.
    pub fn index(&self) -> u64 {
        let n = self.alg.atom_count();
        self.table
            .iter()
            .fold(0u64, |acc, t| (acc << n) | t.0 as u64)
    }

    /// Every operator on `alg`, in lexicographic table order.
    pub fn enumerate(alg: &Powerset) -> Result<impl Iterator<Item = FiniteOp> + '_, OperatorError> {
        let count = Self::count(alg)?;
        Ok((0..count).map(move |i| Self::nth(alg, i)))
    }

    /// `{a -> a+b, b -> 0}`.
    pub fn render_table(&self) -> String {
        let body: Vec<String> = self
            .table
            .iter()
            .enumerate()
            .map(|(i, t)| format!("{} -> {}", self.alg.labels()[i], self.alg.format(*t)))
            .collect();
        format!("{{{}}}", body.join(", "))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let table: serde_json::Map<String, serde_json::Value> = self
            .table
            .iter()
            .enumerate()
            .map(|(i, t)| (self.alg.labels()[i].clone(), self.alg.to_hex(*t).into()))
            .collect();
        serde_json::json!({ "carrier": self.alg.name(), "table": table })
    }
}

impl PartialOrd for FiniteOp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic in the atom table.
impl Ord for FiniteOp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.table
            .cmp(&other.table)
            .then_with(|| self.alg.labels().cmp(other.alg.labels()))
    }
}

impl fmt::Display for FiniteOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "table{}", self.render_table())
    }
}

impl ElementMap<Powerset> for FiniteOp {
    fn carrier(&self) -> &Powerset {
        &self.alg
    }

    fn apply(&self, x: &Subset) -> Subset {
        self.eval(*x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Surface;
    use crate::operator::{check_axiom, check_closure, dual, star, Axiom, ElementMap};

    fn b(n: usize) -> Powerset {
        Powerset::new(n).unwrap()
    }

    #[test]
    fn discriminator_maps_nonzero_to_top() {
        let alg = b(3);
        let f1 = FiniteOp::discriminator(&alg);
        assert_eq!(f1.eval(Subset(0)), Subset(0));
        for x in 1..8 {
            assert_eq!(f1.eval(Subset(x)), alg.full());
        }
        assert!(FiniteOp::zero(&alg).values().iter().all(|v| v.is_empty()));
    }

    #[test]
    fn relativized_parameters() {
        let alg = b(3);
        assert_eq!(
            FiniteOp::relativized(&alg, alg.full()).unwrap(),
            FiniteOp::discriminator(&alg)
        );
        assert_eq!(
            FiniteOp::relativized(&alg, Subset(0)),
            Err(OperatorError::DegenerateParameter)
        );
        let fa = FiniteOp::relativized(&alg, Subset(0b001)).unwrap();
        for y in 1..8 {
            assert_eq!(fa.eval(Subset(y)), Subset(0b001));
        }
        for x in 1..8u32 {
            for z in 1..8u32 {
                let lhs = FiniteOp::relativized(&alg, Subset(x))
                    .unwrap()
                    .join(&FiniteOp::relativized(&alg, Subset(z)).unwrap())
                    .unwrap();
                assert_eq!(lhs, FiniteOp::relativized(&alg, Subset(x | z)).unwrap());
            }
        }
    }

    #[test]
    fn from_fn_rejects_non_modal_maps() {
        let alg = b(2);
        assert!(matches!(
            FiniteOp::from_fn(&alg, |_| Subset(1)),
            Err(OperatorError::NotNormal { .. })
        ));
        // top on the full element only
        let err = FiniteOp::from_fn(&alg, |x| if x.0 == 3 { Subset(3) } else { Subset(0) });
        assert!(matches!(err, Err(OperatorError::NotAdditive { .. })));
        let id = FiniteOp::from_fn(&alg, |x| x).unwrap();
        assert_eq!(id, FiniteOp::identity(&alg));
    }

    #[test]
    fn table_validation() {
        let alg = b(2);
        assert_eq!(
            FiniteOp::new(&alg, vec![Subset(1)]),
            Err(OperatorError::TableSize { expected: 2, found: 1 })
        );
        assert_eq!(
            FiniteOp::new(&alg, vec![Subset(1), Subset(4)]),
            Err(OperatorError::TableOutOfRange(4))
        );
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let alg = b(2);
        let all: Vec<FiniteOp> = FiniteOp::enumerate(&alg).unwrap().collect();
        assert_eq!(all.len(), 16);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all[0].is_zero() && all[15].is_discriminator());
        for (i, f) in all.iter().enumerate() {
            assert_eq!(f.index(), i as u64);
        }
        assert_eq!(FiniteOp::enumerate(&b(3)).unwrap().count(), 512);
        assert!(FiniteOp::count(&b(5)).is_err());
    }

    #[test]
    fn values_agree_with_eval() {
        let alg = b(3);
        for f in FiniteOp::enumerate(&alg).unwrap().step_by(7) {
            let vals = f.values();
            for x in 0..8u32 {
                assert_eq!(vals[x as usize], f.eval(Subset(x)));
            }
        }
    }

    #[test]
    fn iterate_and_units() {
        let alg = b(2);
        let id = FiniteOp::identity(&alg);
        assert_eq!(id.iterate(5).unwrap(), id);
        let f1 = FiniteOp::discriminator(&alg);
        assert_eq!(f1.iterate(2).unwrap(), f1);
        assert_eq!(id.iterate(0), Err(OperatorError::ZeroIteration));
        for f in FiniteOp::enumerate(&alg).unwrap() {
            assert_eq!(id.compose(&f).unwrap(), f);
            assert_eq!(f.compose(&id).unwrap(), f);
            assert_eq!(FiniteOp::zero(&alg).join(&f).unwrap(), f);
            assert_eq!(f.join(&f1).unwrap(), f1);
        }
        assert_eq!(
            id.join(&FiniteOp::identity(&b(3))),
            Err(OperatorError::CarrierMismatch)
        );
    }

    #[test]
    fn duals_and_stars() {
        let alg = b(3);
        let f1 = FiniteOp::discriminator(&alg);
        let d = dual(&f1);
        for x in 0..8u32 {
            let expect = if x == 7 { Subset(7) } else { Subset(0) };
            assert_eq!(d.apply(&Subset(x)), expect);
        }
        for f in FiniteOp::enumerate(&alg).unwrap() {
            let dd = dual(dual(&f));
            let s = star(&f);
            for x in 0..8u32 {
                assert_eq!(dd.apply(&Subset(x)), f.eval(Subset(x)));
                assert_eq!(s.apply(&Subset(x)), alg.complement(&f.eval(Subset(x))));
            }
        }
    }

    #[test]
    fn axioms_of_small_operators() {
        let alg = b(3);
        let s = Surface::of(&alg, 0, 0);
        let f1 = FiniteOp::discriminator(&alg);
        for ax in [Axiom::K, Axiom::T, Axiom::Four, Axiom::B] {
            assert!(check_axiom(&f1, ax, &s).holds(), "{ax}");
        }
        assert!(check_closure(&f1, &s).holds());
        let id = FiniteOp::identity(&alg);
        assert!(check_axiom(&id, Axiom::B, &s).holds());
        let f0 = FiniteOp::zero(&alg);
        assert_eq!(check_closure(&f0, &s).witness(), Some(&Subset(1)));
        assert!(!check_axiom(&f0, Axiom::T, &s).holds());
    }
}
