//! Modal operators: normal, additive self-maps of a carrier.
//!
//! On finite powerset algebras an operator is an atom table ([`FiniteOp`]),
//! which makes it modal by construction. On the symbolic carriers it is a
//! named rule ([`RuleOp`]) certified on a seeded sample.

mod finite;
mod rule;

pub use finite::{FiniteOp, MAX_ENUM_ATOMS};
pub use rule::RuleOp;

use serde::Serialize;

use crate::algebra::{BooleanAlgebra, Surface, Verification};
use crate::error::OperatorError;

/// Anything that maps elements of a carrier to elements of the same carrier.
pub trait ElementMap<A: BooleanAlgebra>: Send + Sync {
    fn carrier(&self) -> &A;
    fn apply(&self, x: &A::Elem) -> A::Elem;
}

impl<A: BooleanAlgebra, M: ElementMap<A> + ?Sized> ElementMap<A> for &M {
    fn carrier(&self) -> &A {
        (**self).carrier()
    }

    fn apply(&self, x: &A::Elem) -> A::Elem {
        (**self).apply(x)
    }
}

type BorrowedRule<'a, E> = Box<dyn Fn(&E) -> E + Send + Sync + 'a>;

/// A borrowed closure over a carrier.
pub struct FnMap<'a, A: BooleanAlgebra> {
    alg: &'a A,
    rule: BorrowedRule<'a, A::Elem>,
}

impl<'a, A: BooleanAlgebra> FnMap<'a, A> {
    pub fn new(alg: &'a A, rule: impl Fn(&A::Elem) -> A::Elem + Send + Sync + 'a) -> Self {
        FnMap {
            alg,
            rule: Box::new(rule),
        }
    }
}

impl<A: BooleanAlgebra> ElementMap<A> for FnMap<'_, A> {
    fn carrier(&self) -> &A {
        self.alg
    }

    fn apply(&self, x: &A::Elem) -> A::Elem {
        (self.rule)(x)
    }
}

/// `f^∂(x) = −f(−x)`. Not a modal operator in general.
pub struct Dual<M>(pub M);
/// `f*(x) = −f(x)`.
pub struct Star<M>(pub M);
/// `f_*(x) = f(−x)`.
pub struct LoweredStar<M>(pub M);

impl<A: BooleanAlgebra, M: ElementMap<A>> ElementMap<A> for Dual<M> {
    fn carrier(&self) -> &A {
        self.0.carrier()
    }

    fn apply(&self, x: &A::Elem) -> A::Elem {
        let alg = self.0.carrier();
        alg.complement(&self.0.apply(&alg.complement(x)))
    }
}

impl<A: BooleanAlgebra, M: ElementMap<A>> ElementMap<A> for Star<M> {
    fn carrier(&self) -> &A {
        self.0.carrier()
    }

    fn apply(&self, x: &A::Elem) -> A::Elem {
        self.0.carrier().complement(&self.0.apply(x))
    }
}

impl<A: BooleanAlgebra, M: ElementMap<A>> ElementMap<A> for LoweredStar<M> {
    fn carrier(&self) -> &A {
        self.0.carrier()
    }

    fn apply(&self, x: &A::Elem) -> A::Elem {
        self.0.apply(&self.0.carrier().complement(x))
    }
}

pub fn dual<M>(f: M) -> Dual<M> {
    Dual(f)
}

pub fn star<M>(f: M) -> Star<M> {
    Star(f)
}

pub fn lowered_star<M>(f: M) -> LoweredStar<M> {
    LoweredStar(f)
}

/// Checks normality and additivity on a surface.
pub fn certify<A, M>(f: &M, surface: &Surface<A::Elem>) -> Result<Verification, OperatorError>
where
    A: BooleanAlgebra,
    M: ElementMap<A> + ?Sized,
{
    let alg = f.carrier();
    let at_zero = f.apply(&alg.zero());
    if !alg.is_zero(&at_zero) {
        return Err(OperatorError::NotNormal {
            value: alg.render(&at_zero),
        });
    }
    for (x, y) in &surface.pairs {
        let lhs = f.apply(&alg.join(x, y));
        let rhs = alg.join(&f.apply(x), &f.apply(y));
        if lhs != rhs {
            return Err(OperatorError::NotAdditive {
                x: alg.render(x),
                y: alg.render(y),
                lhs: alg.render(&lhs),
                rhs: alg.render(&rhs),
            });
        }
    }
    Ok(surface.mode)
}

/// Outcome of a universally quantified check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<E> {
    /// No counterexample on the surface; exhaustive surfaces make this a proof.
    Holds(Verification),
    FailsAt(E),
}

impl<E> Verdict<E> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds(_))
    }

    pub fn witness(&self) -> Option<&E> {
        match self {
            Verdict::FailsAt(x) => Some(x),
            Verdict::Holds(_) => None,
        }
    }

    pub fn map<F, T>(self, f: F) -> Verdict<T>
    where
        F: FnOnce(E) -> T,
    {
        match self {
            Verdict::Holds(m) => Verdict::Holds(m),
            Verdict::FailsAt(x) => Verdict::FailsAt(f(x)),
        }
    }
}

/// First element of the surface violating `pred`.
pub fn check_all<E, F>(surface: &Surface<E>, mut pred: F) -> Verdict<E>
where
    E: Clone,
    F: FnMut(&E) -> bool,
{
    match surface.elements.iter().find(|x| !pred(x)) {
        Some(x) => Verdict::FailsAt(x.clone()),
        None => Verdict::Holds(surface.mode),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Axiom {
    /// Normality and additivity.
    K,
    /// `x <= f(x)`.
    T,
    /// `f(f(x)) <= f(x)`.
    Four,
    /// `f(f^∂(x)) <= x`.
    B,
    /// `f^{n+1}(x) <= f^n(x)`.
    NTransitive(u32),
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axiom::K => write!(f, "K"),
            Axiom::T => write!(f, "T"),
            Axiom::Four => write!(f, "4"),
            Axiom::B => write!(f, "B"),
            Axiom::NTransitive(n) => write!(f, "4^{n}"),
        }
    }
}

/// `f^n(x)`, with `f^0(x) = x`.
pub fn power<A, M>(f: &M, n: u32, x: &A::Elem) -> A::Elem
where
    A: BooleanAlgebra,
    M: ElementMap<A> + ?Sized,
{
    let mut y = x.clone();
    for _ in 0..n {
        y = f.apply(&y);
    }
    y
}

pub fn check_axiom<A, M>(f: &M, axiom: Axiom, surface: &Surface<A::Elem>) -> Verdict<A::Elem>
where
    A: BooleanAlgebra,
    M: ElementMap<A> + ?Sized,
{
    let alg = f.carrier();
    match axiom {
        Axiom::K => {
            if !alg.is_zero(&f.apply(&alg.zero())) {
                return Verdict::FailsAt(alg.zero());
            }
            let bad = surface.pairs.iter().find(|(x, y)| {
                f.apply(&alg.join(x, y)) != alg.join(&f.apply(x), &f.apply(y))
            });
            match bad {
                Some((x, _)) => Verdict::FailsAt(x.clone()),
                None => Verdict::Holds(surface.mode),
            }
        }
        Axiom::T => check_all(surface, |x| alg.leq(x, &f.apply(x))),
        Axiom::Four => check_all(surface, |x| {
            let fx = f.apply(x);
            alg.leq(&f.apply(&fx), &fx)
        }),
        Axiom::B => {
            let d = Dual(f);
            check_all(surface, |x| alg.leq(&f.apply(&d.apply(x)), x))
        }
        Axiom::NTransitive(n) => check_all(surface, |x| {
            let fnx = power(f, n, x);
            alg.leq(&f.apply(&fnx), &fnx)
        }),
    }
}

/// `x <= f(x)` and `f(f(x)) = f(x)`.
pub fn check_closure<A, M>(f: &M, surface: &Surface<A::Elem>) -> Verdict<A::Elem>
where
    A: BooleanAlgebra,
    M: ElementMap<A> + ?Sized,
{
    let alg = f.carrier();
    check_all(surface, |x| {
        let fx = f.apply(x);
        alg.leq(x, &fx) && f.apply(&fx) == fx
    })
}

/// `f <= g` pointwise on the surface.
pub fn leq_on<A, F, G>(f: &F, g: &G, surface: &Surface<A::Elem>) -> Verdict<A::Elem>
where
    A: BooleanAlgebra,
    F: ElementMap<A> + ?Sized,
    G: ElementMap<A> + ?Sized,
{
    let alg = f.carrier();
    check_all(surface, |x| alg.leq(&f.apply(x), &g.apply(x)))
}

/// Pointwise equality on the surface; on a sampled surface a positive answer
/// only means "not distinguished".
pub fn eq_on<A, F, G>(f: &F, g: &G, surface: &Surface<A::Elem>) -> Verdict<A::Elem>
where
    A: BooleanAlgebra,
    F: ElementMap<A> + ?Sized,
    G: ElementMap<A> + ?Sized,
{
    check_all(surface, |x| f.apply(x) == g.apply(x))
}

/// `f(x) = 0` for `x = 0` and `1` otherwise, on the surface.
pub fn is_unary_discriminator<A, M>(f: &M, surface: &Surface<A::Elem>) -> Verdict<A::Elem>
where
    A: BooleanAlgebra,
    M: ElementMap<A> + ?Sized,
{
    let alg = f.carrier();
    if !alg.is_zero(&f.apply(&alg.zero())) {
        return Verdict::FailsAt(alg.zero());
    }
    check_all(surface, |x| alg.is_zero(x) || alg.is_one(&f.apply(x)))
}
