//! Minimal pairs, the translation to weak mixed algebras, the `u` operator
//! and the covering form of decomposition on canonical frames.

use serde::Serialize;

use super::is_decomposing_finite;
use crate::algebra::{BooleanAlgebra, Powerset, Subset, Surface};
use crate::duality::{canonical_frame, complex_algebra};
use crate::error::OperatorError;
use crate::operator::{check_all, Dual, ElementMap, FiniteOp, Star, Verdict};
use crate::semilattice::decomposes_on;

/// Atom cap for the exhaustive pair scan in [`minimal_pairs`].
pub const MAX_MINPAIR_ATOMS: usize = 2;

/// Decomposing pairs minimal under the componentwise order, by scanning all
/// pairs of `M(B)`.
pub fn minimal_pairs(alg: &Powerset) -> Result<Vec<(FiniteOp, FiniteOp)>, OperatorError> {
    let n = alg.atom_count();
    if n > MAX_MINPAIR_ATOMS {
        return Err(OperatorError::AboveCap {
            what: "minimal pair scan",
            cap: MAX_MINPAIR_ATOMS,
            n,
        });
    }
    let ops: Vec<FiniteOp> = FiniteOp::enumerate(alg)?.collect();
    let pairs: Vec<(&FiniteOp, &FiniteOp)> = ops
        .iter()
        .flat_map(|f| ops.iter().map(move |g| (f, g)))
        .filter(|(f, g)| is_decomposing_finite(f, g))
        .collect();
    Ok(pairs
        .iter()
        .filter(|(f, g)| {
            !pairs
                .iter()
                .any(|(f2, g2)| f2.leq(f) && g2.leq(g) && (f2 != f || g2 != g))
        })
        .map(|(f, g)| ((*f).clone(), (*g).clone()))
        .collect())
}

/// Minimality of one pair. Every `f' <= f` is enumerated; for each, the
/// companions of `f'` below `g` exist iff `−f'(a) <= g(a)` on every atom,
/// and the atomwise complement of `f'` is then the least of them.
pub fn is_minimal_pair(f: &FiniteOp, g: &FiniteOp) -> Result<bool, OperatorError> {
    let alg = f.alg();
    let n = alg.atom_count();
    if n > crate::operator::MAX_ENUM_ATOMS {
        return Err(OperatorError::AboveCap {
            what: "minimal pair check",
            cap: crate::operator::MAX_ENUM_ATOMS,
            n,
        });
    }
    if !is_decomposing_finite(f, g) {
        return Ok(false);
    }
    let full = alg.full();
    let choices: Vec<Vec<Subset>> = f
        .table()
        .iter()
        .map(|v| {
            let mut below: Vec<Subset> = v.nonzero_below().collect();
            below.push(Subset::EMPTY);
            below
        })
        .collect();
    let mut idx = vec![0usize; n];
    loop {
        let sub: Vec<Subset> = idx.iter().enumerate().map(|(i, &k)| choices[i][k]).collect();
        let least: Vec<Subset> = sub.iter().map(|v| Subset(full.0 & !v.0)).collect();
        let fits = least.iter().zip(g.table()).all(|(l, gv)| l.is_subset(*gv));
        if fits && (sub.as_slice() != f.table() || least.as_slice() != g.table()) {
            return Ok(false);
        }
        // odometer over the choice lists
        let mut i = 0;
        loop {
            if i == n {
                return Ok(true);
            }
            idx[i] += 1;
            if idx[i] < choices[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Checks that `(f, g)` is decomposing and returns the sufficiency operator
/// `g*(x) = −g(x)`.
pub fn to_wmia<A, F, G>(f: &F, g: G, surface: &Surface<A::Elem>) -> Result<Star<G>, OperatorError>
where
    A: BooleanAlgebra,
    F: ElementMap<A> + ?Sized,
    G: ElementMap<A>,
{
    let alg = f.carrier();
    if let Some(x) = decomposes_on(f, &g, surface) {
        return Err(OperatorError::NotDecomposing {
            x: alg.render(&x),
            value: alg.render(&alg.join(&f.apply(&x), &g.apply(&x))),
        });
    }
    Ok(Star(g))
}

/// Checks that `s` is a sufficiency operator with `s(x) <= f(x)` for
/// `x ≠ 0` and returns the companion `s*(x) = −s(x)`.
pub fn from_wmia<A, F, S>(f: &F, s: S, surface: &Surface<A::Elem>) -> Result<Star<S>, OperatorError>
where
    A: BooleanAlgebra,
    F: ElementMap<A> + ?Sized,
    S: ElementMap<A>,
{
    let alg = f.carrier();
    if !alg.is_one(&s.apply(&alg.zero())) {
        return Err(OperatorError::NotSufficiency(format!(
            "s(0) = {}",
            alg.render(&s.apply(&alg.zero()))
        )));
    }
    if let Some((x, y)) = surface
        .pairs
        .iter()
        .find(|(x, y)| s.apply(&alg.join(x, y)) != alg.meet(&s.apply(x), &s.apply(y)))
    {
        return Err(OperatorError::NotSufficiency(format!(
            "s({} + {}) is not s({}) · s({})",
            alg.render(x),
            alg.render(y),
            alg.render(x),
            alg.render(y)
        )));
    }
    if let Some(x) = surface
        .nonzero(alg)
        .find(|x| !alg.leq(&s.apply(x), &f.apply(x)))
    {
        return Err(OperatorError::NotWeakMixed {
            x: alg.render(x),
            g: alg.render(&s.apply(x)),
            f: alg.render(&f.apply(x)),
        });
    }
    Ok(Star(s))
}

/// `u(x) = f^∂(x) · g^∂(x)`.
pub struct UOperator<F, G>(pub F, pub G);

impl<A, F, G> ElementMap<A> for UOperator<F, G>
where
    A: BooleanAlgebra,
    F: ElementMap<A>,
    G: ElementMap<A>,
{
    fn carrier(&self) -> &A {
        self.0.carrier()
    }

    fn apply(&self, x: &A::Elem) -> A::Elem {
        let alg = self.0.carrier();
        let nx = alg.complement(x);
        alg.meet(
            &alg.complement(&self.0.apply(&nx)),
            &alg.complement(&self.1.apply(&nx)),
        )
    }
}

/// The three conditions on `u`, each with its first counterexample.
#[derive(Clone, Debug)]
pub struct KmpaReport<E> {
    pub u_at_zero: E,
    /// `x <= u(x)`.
    pub u1: Verdict<E>,
    /// `u(u(x)) <= u(x)`.
    pub u2: Verdict<E>,
    /// `u(u^∂(x)) <= x`.
    pub u3: Verdict<E>,
}

impl<E> KmpaReport<E> {
    pub fn all_hold(&self) -> bool {
        self.u1.holds() && self.u2.holds() && self.u3.holds()
    }
}

/// Evaluates `u` literally; no claim is attached to the outcome.
pub fn kmpa_check<A, F, G>(f: F, g: G, surface: &Surface<A::Elem>) -> KmpaReport<A::Elem>
where
    A: BooleanAlgebra,
    F: ElementMap<A>,
    G: ElementMap<A>,
{
    let u = UOperator(f, g);
    let alg = u.carrier().clone();
    let u1 = check_all(surface, |x| alg.leq(x, &u.apply(x)));
    let u2 = check_all(surface, |x| {
        let ux = u.apply(x);
        alg.leq(&u.apply(&ux), &ux)
    });
    let ud = Dual(&u);
    let u3 = check_all(surface, |x| alg.leq(&u.apply(&ud.apply(x)), x));
    KmpaReport {
        u_at_zero: u.apply(&alg.zero()),
        u1,
        u2,
        u3,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringReport {
    /// `R_f ∪ R_g` is the universal relation on the atoms.
    pub covers: bool,
    /// `f(x) + g(x) = 1` for every `x ≠ 0`.
    pub decomposing: bool,
    /// The complex algebra of `(Ult(B), R_f, R_g)` is decomposing.
    pub complex_algebra_decomposing: bool,
    /// First atom pair `(a, b)` outside `R_f ∪ R_g`.
    pub uncovered: Option<(usize, usize)>,
}

impl CoveringReport {
    pub fn agrees(&self) -> bool {
        self.covers == self.decomposing && self.decomposing == self.complex_algebra_decomposing
    }
}

pub fn covering_check(f: &FiniteOp, g: &FiniteOp) -> Result<CoveringReport, OperatorError> {
    if f.alg() != g.alg() {
        return Err(OperatorError::CarrierMismatch);
    }
    let rf = canonical_frame(f);
    let rg = canonical_frame(g);
    let n = f.alg().atom_count();
    let uncovered = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| !rf.has_edge(a, b) && !rg.has_edge(a, b));
    let covers = rf.union(&rg)?.is_universal();
    let (_, cf) = complex_algebra(&rf);
    let (_, cg) = complex_algebra(&rg);
    let fv = f.values();
    let gv = g.values();
    let full = f.alg().full();
    let decomposing = (1..f.alg().size()).all(|x| fv[x].union(gv[x]) == full);
    Ok(CoveringReport {
        covers: covers && uncovered.is_none(),
        decomposing,
        complex_algebra_decomposing: is_decomposing_finite(&cf, &cg),
        uncovered,
    })
}

/// For a decomposing pair: `a ≰ f(b)` implies `a <= g(b)` for all atoms, and
/// `⟨−R_f⟩(Y) ⊆ ⟨R_g⟩(Y)` for every point set `Y`.
pub fn ultrafilter_dichotomy_check(f: &FiniteOp, g: &FiniteOp) -> Result<bool, OperatorError> {
    if !is_decomposing_finite(f, g) {
        let fv = f.values();
        let gv = g.values();
        let alg = f.alg();
        let x = (1..alg.size())
            .find(|&x| fv[x].union(gv[x]) != alg.full())
            .unwrap_or(0);
        return Err(OperatorError::NotDecomposing {
            x: alg.format(Subset(x as u32)),
            value: alg.format(fv[x].union(gv[x])),
        });
    }
    let n = f.alg().atom_count();
    let atoms_ok = (0..n).all(|b| {
        (0..n).all(|a| f.table()[b].contains(a) || g.table()[b].contains(a))
    });
    let not_rf = canonical_frame(f).complement();
    let rg = canonical_frame(g);
    let sets_ok = (0..f.alg().size() as u32)
        .map(Subset)
        .all(|y| not_rf.poss(y).is_subset(rg.poss(y)));
    Ok(atoms_ok && sets_ok)
}
