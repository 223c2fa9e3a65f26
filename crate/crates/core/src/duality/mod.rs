//! Frames, complex algebras and canonical frames.
//!
//! A finite frame is a labelled point set with a relation stored as one
//! successor bitmask per point. `⟨R⟩(Y) = {x : R(x) ∩ Y ≠ ∅}`. The canonical
//! frame of a finite algebra has the atoms as points and an edge `(a, b)`
//! exactly when `a <= f(b)`.

pub mod dot;
pub mod fc;

use serde::Serialize;

use crate::algebra::{BooleanAlgebra, Powerset, Subset, Surface};
use crate::error::{AlgebraError, OperatorError};
use crate::operator::{check_axiom, is_unary_discriminator, Axiom, ElementMap, FiniteOp, Verdict};
use crate::semilattice::{dual_pseudocomplement, least_annihilator_brute};

/// Largest point count for which all `2^{n²}` relations are enumerated.
pub const MAX_ENUM_POINTS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frame {
    points: Powerset,
    succ: Vec<u32>,
}

impl Frame {
    /// A frame without edges.
    pub fn new(labels: Vec<String>) -> Result<Self, AlgebraError> {
        let points = Powerset::with_labels(labels)?;
        let n = points.atom_count();
        Ok(Frame {
            points,
            succ: vec![0; n],
        })
    }

    pub fn with_points(n: usize) -> Result<Self, AlgebraError> {
        let points = Powerset::new(n)?;
        Ok(Frame {
            points,
            succ: vec![0; n],
        })
    }

    /// Adds edges given by point labels.
    pub fn with_labelled_edges(
        labels: Vec<String>,
        edges: &[(String, String)],
    ) -> Result<Self, AlgebraError> {
        let mut frame = Frame::new(labels)?;
        for (x, y) in edges {
            let i = frame.points.atom_index(x)?;
            let j = frame.points.atom_index(y)?;
            frame.add_edge(i, j);
        }
        Ok(frame)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, AlgebraError> {
        let mut frame = Frame::with_points(n)?;
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(AlgebraError::UnknownAtom(format!("{}", i.max(j))));
            }
            frame.add_edge(i, j);
        }
        Ok(frame)
    }

    pub fn universal(n: usize) -> Result<Self, AlgebraError> {
        let mut frame = Frame::with_points(n)?;
        let full = frame.points.full().0;
        frame.succ.iter_mut().for_each(|s| *s = full);
        Ok(frame)
    }

    pub fn identity(n: usize) -> Result<Self, AlgebraError> {
        let mut frame = Frame::with_points(n)?;
        for i in 0..n {
            frame.add_edge(i, i);
        }
        Ok(frame)
    }

    /// The relation with the given bit pattern, row `x` in bits `x·n .. x·n+n`.
    pub fn nth_relation(n: usize, index: u64) -> Result<Self, AlgebraError> {
        let mut frame = Frame::with_points(n)?;
        let mask = (1u64 << n) - 1;
        for x in 0..n {
            frame.succ[x] = ((index >> (x * n)) & mask) as u32;
        }
        Ok(frame)
    }

    /// Every relation on `n` points, `n <= 4`.
    pub fn all_relations(n: usize) -> Result<impl Iterator<Item = Frame>, OperatorError> {
        if n > MAX_ENUM_POINTS {
            return Err(OperatorError::AboveCap {
                what: "relation enumeration",
                cap: MAX_ENUM_POINTS,
                n,
            });
        }
        Frame::with_points(n)?;
        Ok((0..1u64 << (n * n)).map(move |i| Frame::nth_relation(n, i).expect("valid size")))
    }

    pub fn add_edge(&mut self, x: usize, y: usize) {
        self.succ[x] |= 1 << y;
    }

    pub fn size(&self) -> usize {
        self.succ.len()
    }

    pub fn labels(&self) -> &[String] {
        self.points.labels()
    }

    /// The powerset algebra over the points.
    pub fn points(&self) -> &Powerset {
        &self.points
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.succ[x] >> y & 1 == 1
    }

    /// `R(x)`.
    pub fn successors(&self, x: usize) -> Subset {
        Subset(self.succ[x])
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.size()).flat_map(move |x| {
            (0..self.size())
                .filter(move |y| self.has_edge(x, *y))
                .map(move |y| (x, y))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(|s| s.count_ones() as usize).sum()
    }

    /// `−R`.
    pub fn complement(&self) -> Frame {
        let full = self.points.full().0;
        Frame {
            points: self.points.clone(),
            succ: self.succ.iter().map(|s| full & !s).collect(),
        }
    }

    pub fn union(&self, other: &Frame) -> Result<Frame, OperatorError> {
        if self.points != other.points {
            return Err(OperatorError::CarrierMismatch);
        }
        Ok(Frame {
            points: self.points.clone(),
            succ: self.succ.iter().zip(&other.succ).map(|(a, b)| a | b).collect(),
        })
    }

    /// `⟨R⟩(Y)`.
    pub fn poss(&self, y: Subset) -> Subset {
        let bits = (0..self.size())
            .filter(|&x| self.succ[x] & y.0 != 0)
            .fold(0u32, |acc, x| acc | 1 << x);
        Subset(bits)
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size()).all(|x| self.has_edge(x, x))
    }

    pub fn is_symmetric(&self) -> bool {
        self.edges().all(|(x, y)| self.has_edge(y, x))
    }

    pub fn is_transitive(&self) -> bool {
        self.edges().all(|(x, y)| {
            let next = self.succ[y];
            next & !self.succ[x] == 0
        })
    }

    pub fn is_universal(&self) -> bool {
        let full = self.points.full().0;
        self.succ.iter().all(|s| *s == full)
    }

    pub fn is_empty(&self) -> bool {
        self.succ.iter().all(|s| *s == 0)
    }
}

/// `Cm(X)`: the powerset of the points with `⟨R⟩`, tabulated on singletons.
pub fn complex_algebra(frame: &Frame) -> (Powerset, FiniteOp) {
    let alg = frame.points().clone();
    let table = alg.atoms().map(|a| frame.poss(a)).collect();
    let op = FiniteOp::new(&alg, table).expect("poss stays in the carrier");
    (alg, op)
}

/// `Cf(B)` for finite `B`: points are the atoms, `(a, b)` an edge iff `a <= f(b)`.
pub fn canonical_frame(f: &FiniteOp) -> Frame {
    let alg = f.alg();
    let mut frame = Frame {
        points: alg.clone(),
        succ: vec![0; alg.atom_count()],
    };
    for (b, image) in f.table().iter().enumerate() {
        for a in image.indices() {
            frame.add_edge(a, b);
        }
    }
    frame
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StoneReport {
    /// `h(f(a)) = ⟨R_f⟩ h(a)` for every `a`.
    pub commutes: bool,
    pub h_injective: bool,
    pub h_boolean: bool,
    /// First `a` where the square fails.
    pub counterexample: Option<String>,
}

impl StoneReport {
    pub fn holds(&self) -> bool {
        self.commutes && self.h_injective && self.h_boolean
    }
}

pub fn stone_check(f: &FiniteOp) -> StoneReport {
    let alg = f.alg();
    let frame = canonical_frame(f);
    let elements: Vec<Subset> = (0..alg.size() as u32).map(Subset).collect();
    // h(a) is computed from the atoms below a, independently of the bitmask
    let h = |x: Subset| -> Subset {
        alg.atoms()
            .enumerate()
            .filter(|(_, atom)| atom.is_subset(x))
            .fold(Subset::EMPTY, |acc, (i, _)| acc.union(Subset::atom(i)))
    };
    let counterexample = elements
        .iter()
        .find(|a| h(f.eval(**a)) != frame.poss(h(**a)))
        .map(|a| alg.format(*a));
    let mut images: Vec<Subset> = elements.iter().map(|a| h(*a)).collect();
    images.sort();
    images.dedup();
    let h_injective = images.len() == elements.len();
    let full = alg.full();
    let h_boolean = h(Subset::EMPTY).is_empty()
        && h(full) == frame.points().full()
        && elements.iter().all(|a| {
            h(Subset(full.0 & !a.0)) == Subset(frame.points().full().0 & !h(*a).0)
                && elements
                    .iter()
                    .all(|b| h(a.union(*b)) == h(*a).union(h(*b)) && h(a.intersection(*b)) == h(*a).intersection(h(*b)))
        });
    StoneReport {
        commutes: counterexample.is_none(),
        h_injective,
        h_boolean,
        counterexample,
    }
}

/// `Cm(Cf(B, f)) ≅ (B, f)` via the atom/singleton bijection.
pub fn round_trip_holds(f: &FiniteOp) -> bool {
    let (alg, op) = complex_algebra(&canonical_frame(f));
    &alg == f.alg() && op.table() == f.table()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PcMethod {
    /// The sum formula.
    Formula,
    /// Least annihilator over all of `M(B)`.
    BruteForce,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PossComplementReport {
    /// `⟨R⟩^⊥`.
    pub lhs: FiniteOp,
    /// `⟨−R⟩`.
    pub rhs: FiniteOp,
    pub counterexample: Option<Subset>,
}

impl PossComplementReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Compares `⟨R⟩^⊥` with `⟨−R⟩` on every element.
pub fn poss_complement_theorem_check(
    frame: &Frame,
    method: PcMethod,
) -> Result<PossComplementReport, OperatorError> {
    let (alg, poss_r) = complex_algebra(frame);
    let lhs = match method {
        PcMethod::Formula => dual_pseudocomplement(&poss_r)?,
        PcMethod::BruteForce => least_annihilator_brute(&poss_r)?
            .ok_or_else(|| OperatorError::Unsupported("no least annihilator".into()))?,
    };
    let (_, rhs) = complex_algebra(&frame.complement());
    let counterexample = (0..alg.size() as u32)
        .map(Subset)
        .find(|y| lhs.eval(*y) != rhs.eval(*y));
    Ok(PossComplementReport {
        lhs,
        rhs,
        counterexample,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Correspondence {
    pub axiom: Axiom,
    pub frame_property: &'static str,
    pub frame_has_property: bool,
    pub algebra_satisfies_axiom: bool,
}

impl Correspondence {
    pub fn agrees(&self) -> bool {
        self.frame_has_property == self.algebra_satisfies_axiom
    }
}

/// T, 4 and B on `Cm(X)` against reflexivity, transitivity and symmetry.
pub fn axiom_frame_correspondence(frame: &Frame) -> Vec<Correspondence> {
    let (alg, op) = complex_algebra(frame);
    let surface = Surface::of(&alg, 0, 0);
    [
        (Axiom::T, "reflexive", frame.is_reflexive()),
        (Axiom::Four, "transitive", frame.is_transitive()),
        (Axiom::B, "symmetric", frame.is_symmetric()),
    ]
    .into_iter()
    .map(|(axiom, frame_property, frame_has_property)| Correspondence {
        axiom,
        frame_property,
        frame_has_property,
        algebra_satisfies_axiom: check_axiom(&op, axiom, &surface).holds(),
    })
    .collect()
}

/// `t(a, b, c) = d(a △ b)·a + −d(a △ b)·c` from a unary discriminator `d`.
pub struct Ternary<M> {
    d: M,
}

pub fn ternary_from_unary<A, M>(d: M, surface: &Surface<A::Elem>) -> Result<Ternary<M>, OperatorError>
where
    A: BooleanAlgebra,
    M: ElementMap<A>,
{
    if let Verdict::FailsAt(x) = is_unary_discriminator(&d, surface) {
        let alg = d.carrier();
        return Err(OperatorError::NotDiscriminator {
            x: alg.render(&x),
            value: alg.render(&d.apply(&x)),
        });
    }
    Ok(Ternary { d })
}

impl<M> Ternary<M> {
    pub fn apply<A>(&self, a: &A::Elem, b: &A::Elem, c: &A::Elem) -> A::Elem
    where
        A: BooleanAlgebra,
        M: ElementMap<A>,
    {
        let alg = self.d.carrier();
        let s = self.d.apply(&alg.symdiff(a, b));
        alg.join(&alg.meet(&s, a), &alg.meet(&alg.complement(&s), c))
    }

    /// `t(a, b, c) = a` when `a ≠ b`, `c` otherwise, on all surface triples.
    pub fn verify<A>(&self, surface: &Surface<A::Elem>) -> Verdict<(A::Elem, A::Elem, A::Elem)>
    where
        A: BooleanAlgebra,
        M: ElementMap<A>,
    {
        for a in &surface.elements {
            for b in &surface.elements {
                for c in &surface.elements {
                    let want = if a != b { a } else { c };
                    if &self.apply(a, b, c) != want {
                        return Verdict::FailsAt((a.clone(), b.clone(), c.clone()));
                    }
                }
            }
        }
        Verdict::Holds(surface.mode)
    }
}
