//! Equational laws of carriers and of the operator semiring, stated once and
//! checked pointwise.
//!
//! Each function returns the names of the laws that fail at the given
//! arguments; an empty vector means every law holds there.

use rand::seq::SliceRandom;

use crate::algebra::interval::rat;
use crate::algebra::{seeded_rng, BooleanAlgebra, FiniteCofinite, IntervalAlgebra, Powerset, SampleRng, Subset, DEFAULT_SAMPLES};
use crate::bundles::exuf::IdealChoice;
use crate::bundles::{exdensepc, exfc, exfree, exnotdense, exuf, jon2};
use crate::error::OperatorError;
use crate::operator::{ElementMap, FiniteOp, RuleOp};

/// Boolean-algebra laws at `(a, b, c)`.
pub fn boolean_laws<A: BooleanAlgebra>(alg: &A, a: &A::Elem, b: &A::Elem, c: &A::Elem) -> Vec<&'static str> {
    let j = |x: &A::Elem, y: &A::Elem| alg.join(x, y);
    let m = |x: &A::Elem, y: &A::Elem| alg.meet(x, y);
    let n = |x: &A::Elem| alg.complement(x);
    let (zero, one) = (alg.zero(), alg.one());
    let laws: [(&'static str, bool); 16] = [
        ("join commutative", j(a, b) == j(b, a)),
        ("meet commutative", m(a, b) == m(b, a)),
        ("join associative", j(&j(a, b), c) == j(a, &j(b, c))),
        ("meet associative", m(&m(a, b), c) == m(a, &m(b, c))),
        ("join idempotent", j(a, a) == *a),
        ("meet idempotent", m(a, a) == *a),
        ("absorption join", j(a, &m(a, b)) == *a),
        ("absorption meet", m(a, &j(a, b)) == *a),
        ("meet distributes", m(a, &j(b, c)) == j(&m(a, b), &m(a, c))),
        ("join distributes", j(a, &m(b, c)) == m(&j(a, b), &j(a, c))),
        ("bounds", j(a, &zero) == *a && m(a, &one) == *a && m(a, &zero) == zero && j(a, &one) == one),
        ("complement join", j(a, &n(a)) == one),
        ("complement meet", m(a, &n(a)) == zero),
        ("double complement", n(&n(a)) == *a),
        ("de Morgan", n(&j(a, b)) == m(&n(a), &n(b)) && n(&m(a, b)) == j(&n(a), &n(b))),
        ("order agrees with join", alg.leq(a, b) == (j(a, b) == *b)),
    ];
    failed(&laws)
}

/// The operations of M(B) that the semilattice and semiring laws mention.
pub trait OperatorSemiring: ElementMap<Self::Alg> + Sized {
    type Alg: BooleanAlgebra;

    fn join_op(&self, other: &Self) -> Result<Self, OperatorError>;
    /// `self ∘ other`.
    fn compose_op(&self, other: &Self) -> Result<Self, OperatorError>;
    fn zero_op(alg: &Self::Alg) -> Self;
    fn identity_op(alg: &Self::Alg) -> Self;
    fn discriminator_op(alg: &Self::Alg) -> Self;
}

impl OperatorSemiring for FiniteOp {
    type Alg = Powerset;

    fn join_op(&self, other: &Self) -> Result<Self, OperatorError> {
        self.join(other)
    }

    fn compose_op(&self, other: &Self) -> Result<Self, OperatorError> {
        self.compose(other)
    }

    fn zero_op(alg: &Powerset) -> Self {
        FiniteOp::zero(alg)
    }

    fn identity_op(alg: &Powerset) -> Self {
        FiniteOp::identity(alg)
    }

    fn discriminator_op(alg: &Powerset) -> Self {
        FiniteOp::discriminator(alg)
    }
}

impl<A: BooleanAlgebra + 'static> OperatorSemiring for RuleOp<A> {
    type Alg = A;

    fn join_op(&self, other: &Self) -> Result<Self, OperatorError> {
        self.join(other)
    }

    fn compose_op(&self, other: &Self) -> Result<Self, OperatorError> {
        self.compose(other)
    }

    fn zero_op(alg: &A) -> Self {
        RuleOp::zero(alg)
    }

    fn identity_op(alg: &A) -> Self {
        RuleOp::identity(alg)
    }

    fn discriminator_op(alg: &A) -> Self {
        RuleOp::discriminator(alg)
    }
}

/// `f⁰`, `f¹` and `1′`, built once per carrier.
pub struct Units<O> {
    pub zero: O,
    pub one: O,
    pub id: O,
}

impl<O: OperatorSemiring> Units<O> {
    pub fn of(alg: &O::Alg) -> Self {
        Units {
            zero: O::zero_op(alg),
            one: O::discriminator_op(alg),
            id: O::identity_op(alg),
        }
    }
}

/// Modal, semilattice and semiring laws for `f, g, h`, compared at `x` and
/// `y`. Operator equalities are checked at both points.
pub fn operator_laws<O: OperatorSemiring>(
    units: &Units<O>,
    f: &O,
    g: &O,
    h: &O,
    x: &<O::Alg as BooleanAlgebra>::Elem,
    y: &<O::Alg as BooleanAlgebra>::Elem,
) -> Result<Vec<&'static str>, OperatorError> {
    let alg = f.carrier();
    let Units { zero, one, id } = units;
    let same = |p: &O, q: &O| p.apply(x) == q.apply(x) && p.apply(y) == q.apply(y);

    let fg = f.join_op(g)?;
    let laws: Vec<(&'static str, bool)> = vec![
        ("normal", f.apply(&alg.zero()) == alg.zero()),
        ("additive", f.apply(&alg.join(x, y)) == alg.join(&f.apply(x), &f.apply(y))),
        ("monotone", !alg.leq(x, y) || alg.leq(&f.apply(x), &f.apply(y))),
        ("join pointwise", fg.apply(x) == alg.join(&f.apply(x), &g.apply(x))),
        ("join idempotent", same(&f.join_op(f)?, f)),
        ("join commutative", same(&fg, &g.join_op(f)?)),
        ("join associative", same(&fg.join_op(h)?, &f.join_op(&g.join_op(h)?)?)),
        ("zero neutral", same(&f.join_op(zero)?, f)),
        ("discriminator absorbing", same(&f.join_op(one)?, one)),
        ("below discriminator", alg.leq(&f.apply(x), &one.apply(x))),
        (
            "compose associative",
            same(&f.compose_op(g)?.compose_op(h)?, &f.compose_op(&g.compose_op(h)?)?),
        ),
        ("identity left unit", same(&id.compose_op(f)?, f)),
        ("identity right unit", same(&f.compose_op(id)?, f)),
        ("compose pointwise", f.compose_op(g)?.apply(x) == f.apply(&g.apply(x))),
        (
            "right distributive",
            same(&fg.compose_op(h)?, &f.compose_op(h)?.join_op(&g.compose_op(h)?)?),
        ),
        (
            "left distributive",
            same(&h.compose_op(&fg)?, &h.compose_op(f)?.join_op(&h.compose_op(g)?)?),
        ),
        ("zero left annihilating", same(&zero.compose_op(f)?, zero)),
        ("zero right annihilating", same(&f.compose_op(zero)?, zero)),
    ];
    Ok(failed(&laws))
}

fn failed(laws: &[(&'static str, bool)]) -> Vec<&'static str> {
    laws.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect()
}

/// Outcome of a law suite.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawReport {
    pub instances: u64,
    pub violations: u64,
    /// First violation found, for the report.
    pub first: Option<String>,
}

impl LawReport {
    fn record(&mut self, failed: Vec<&'static str>, at: impl FnOnce() -> String) {
        self.instances += 1;
        if !failed.is_empty() {
            self.violations += 1;
            if self.first.is_none() {
                self.first = Some(format!("{} at {}", failed.join(", "), at()));
            }
        }
    }

    fn absorb(&mut self, other: LawReport) {
        self.instances += other.instances;
        self.violations += other.violations;
        if self.first.is_none() {
            self.first = other.first;
        }
    }
}

/// Boolean laws on every triple and operator laws on every triple of
/// operators at every pair of points of the powerset on `n` atoms.
pub fn powerset_suite(n: usize) -> Result<LawReport, OperatorError> {
    let alg = Powerset::new(n)?;
    let elems: Vec<Subset> = (0..=alg.one().0).map(Subset).collect();
    let ops: Vec<FiniteOp> = FiniteOp::enumerate(&alg)?.collect();
    let units = Units::of(&alg);
    let mut report = LawReport::default();
    for a in &elems {
        for b in &elems {
            for c in &elems {
                report.record(boolean_laws(&alg, a, b, c), || format!("({a:?}, {b:?}, {c:?})"));
            }
        }
    }
    for f in &ops {
        for g in &ops {
            for h in &ops {
                for x in &elems {
                    for y in &elems {
                        report.record(operator_laws(&units, f, g, h, x, y)?, || {
                            format!("f = {}, g = {}, h = {}, x = {x:?}, y = {y:?}", f.render_table(), g.render_table(), h.render_table())
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// `instances` seeded random element triples and as many operator triples
/// drawn from `pool` with random evaluation points.
pub fn sampled_suite<A: BooleanAlgebra + 'static>(
    alg: &A,
    pool: &[RuleOp<A>],
    seed: u64,
    instances: usize,
) -> Result<LawReport, OperatorError> {
    let mut rng = seeded_rng(seed);
    let mut report = LawReport::default();
    for _ in 0..instances {
        let (a, b, c) = (alg.random_element(&mut rng), alg.random_element(&mut rng), alg.random_element(&mut rng));
        report.record(boolean_laws(alg, &a, &b, &c), || {
            format!("({}, {}, {})", alg.render(&a), alg.render(&b), alg.render(&c))
        });
    }
    let units = Units::of(alg);
    let mut ops = LawReport::default();
    for _ in 0..instances {
        let pick = |rng: &mut SampleRng| pool.choose(rng).expect("nonempty pool").clone();
        let (f, g, h) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let (x, y) = (alg.random_element(&mut rng), alg.random_element(&mut rng));
        ops.record(operator_laws(&units, &f, &g, &h, &x, &y)?, || {
            format!("f = {}, g = {}, h = {}, x = {}, y = {}", f.name(), g.name(), h.name(), alg.render(&x), alg.render(&y))
        });
    }
    report.absorb(ops);
    Ok(report)
}

fn base_pool<A: BooleanAlgebra + 'static>(alg: &A, rng: &mut SampleRng) -> Result<Vec<RuleOp<A>>, OperatorError> {
    let mut pool = vec![RuleOp::zero(alg), RuleOp::identity(alg), RuleOp::discriminator(alg)];
    while pool.len() < 5 {
        let x = alg.random_element(rng);
        if !alg.is_zero(&x) {
            pool.push(RuleOp::relativized(alg, x)?);
        }
    }
    Ok(pool)
}

/// Structural operators, two relativizations and the example operators on
/// the finite–cofinite algebra, each certified once.
pub fn fc_pool(seed: u64) -> Result<Vec<RuleOp<FiniteCofinite>>, OperatorError> {
    let mut pool = base_pool(&FiniteCofinite, &mut seeded_rng(seed))?;
    for f in [jon2::f(), exfc::f()] {
        pool.push(f.certified(seed, DEFAULT_SAMPLES)?);
    }
    Ok(pool)
}

/// As [`fc_pool`], on the interval algebra.
pub fn interval_pool(seed: u64) -> Result<Vec<RuleOp<IntervalAlgebra>>, OperatorError> {
    let mut pool = base_pool(&IntervalAlgebra, &mut seeded_rng(seed))?;
    let (a, b, c) = exdensepc::default_parts();
    let examples = [
        exfree::f(),
        exuf::f(&IdealChoice::AvoidPoint(rat(1, 3)))?,
        exnotdense::f(&exnotdense::default_a())?,
        exdensepc::f(&a, &b, &c)?,
    ];
    for f in examples {
        pool.push(f.certified(seed, DEFAULT_SAMPLES)?);
    }
    Ok(pool)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lawful_operators_pass() {
        let alg = Powerset::new(2).unwrap();
        let id = FiniteOp::identity(&alg);
        let swap = FiniteOp::new(&alg, vec![Subset(0b10), Subset(0b01)]).unwrap();
        let one = FiniteOp::discriminator(&alg);
        assert!(operator_laws(&Units::of(&alg), &swap, &id, &one, &Subset(0b01), &Subset(0b10)).unwrap().is_empty());
    }

    #[test]
    fn a_non_additive_rule_is_caught() {
        let alg = Powerset::new(2).unwrap();
        let full = alg.one();
        let top_only = RuleOp::new(&alg, "top_only", move |x: &Subset| if *x == full { full } else { Subset(0) });
        let id = RuleOp::identity(&alg);
        // joining certifies the operands, so the rule may be refused before any law runs
        match operator_laws(&Units::of(&alg), &top_only, &id, &id, &Subset(0b01), &Subset(0b10)) {
            Ok(v) => assert!(v.contains(&"additive"), "{v:?}"),
            Err(e) => assert!(matches!(e, OperatorError::NotAdditive { .. }), "{e}"),
        }
    }

    #[test]
    fn boolean_laws_on_two_atoms() {
        let alg = Powerset::new(2).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    assert!(boolean_laws(&alg, &Subset(a), &Subset(b), &Subset(c)).is_empty());
                }
            }
        }
    }

    #[test]
    fn one_atom_suite_is_clean() {
        let r = powerset_suite(1).unwrap();
        // 2³ element triples, then 2³ operator triples at 2² point pairs
        assert_eq!((r.instances, r.violations), (8 + 8 * 4, 0));
    }
}
