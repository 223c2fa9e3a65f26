//! Exhaustive equivalence suites over small carriers.
//!
//! Each suite enumerates operators, operator pairs or relations by index,
//! compares a library procedure with a brute-force answer, and reports the
//! agreement count with the first disagreement in index order. Workers may
//! run in parallel; results are merged by index so reports are identical
//! across thread counts.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::algebra::{seeded_rng, Powerset, Surface};
use crate::dda::{
    congruence_ideal_oracle, construct_companion_finite, covering_check, is_decomposing_finite,
    proper_companion_decide_finite, rautenberg_si, Decision,
};
use crate::duality::{axiom_frame_correspondence, Frame};
use crate::error::OperatorError;
use crate::operator::{check_closure, FiniteOp};
use crate::semilattice::{dual_pseudocomplement, least_annihilator_brute};

/// Pairs sampled by `cover-oracle` above [`COVER_EXHAUSTIVE_ATOMS`].
pub const COVER_SAMPLES: u64 = 10_000;

/// Largest atom count at which `cover-oracle` scans every pair.
pub const COVER_EXHAUSTIVE_ATOMS: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepKind {
    PcOracle,
    ProperOracle,
    RautOracle,
    CoverOracle,
    AxiomFrame,
}

impl SweepKind {
    pub const ALL: [SweepKind; 5] = [
        SweepKind::PcOracle,
        SweepKind::ProperOracle,
        SweepKind::RautOracle,
        SweepKind::CoverOracle,
        SweepKind::AxiomFrame,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepKind::PcOracle => "pc-oracle",
            SweepKind::ProperOracle => "proper-oracle",
            SweepKind::RautOracle => "raut-oracle",
            SweepKind::CoverOracle => "cover-oracle",
            SweepKind::AxiomFrame => "axiom-frame",
        }
    }

    /// Largest `n` accepted.
    pub fn cap(self) -> usize {
        match self {
            SweepKind::AxiomFrame => 4,
            _ => 3,
        }
    }
}

impl fmt::Display for SweepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepKind {
    type Err = OperatorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SweepKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            let known: Vec<&str> = SweepKind::ALL.iter().map(|k| k.name()).collect();
            OperatorError::Unsupported(format!("unknown sweep `{s}`; known: {}", known.join(", ")))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub kind: SweepKind,
    pub n: usize,
    /// `exhaustive` or `sampled(k, seed s)`.
    pub mode: String,
    pub total: u64,
    pub agree: u64,
    /// First disagreement in enumeration order.
    pub counterexample: Option<String>,
    /// Suite-specific tallies, such as the number of operators with a
    /// proper companion.
    pub counts: BTreeMap<String, u64>,
}

impl SweepReport {
    pub fn all_agree(&self) -> bool {
        self.agree == self.total
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={} ({}): {}/{} agree", self.kind, self.n, self.mode, self.agree, self.total)?;
        for (k, v) in &self.counts {
            write!(f, ", {k} = {v}")?;
        }
        if let Some(c) = &self.counterexample {
            write!(f, "; first disagreement: {c}")?;
        }
        Ok(())
    }
}

/// Result of one enumerated case.
struct Case {
    /// `None` when the procedures agree.
    disagreement: Option<String>,
    tags: Vec<&'static str>,
}

impl Case {
    fn agree(tags: Vec<&'static str>) -> Case {
        Case { disagreement: None, tags }
    }

    fn from(disagreement: Option<String>, tags: Vec<&'static str>) -> Case {
        Case { disagreement, tags }
    }
}

#[cfg(feature = "parallel")]
fn map_indices<F>(indices: &[u64], check: F) -> Vec<Case>
where
    F: Fn(u64) -> Case + Sync + Send,
{
    use rayon::prelude::*;
    indices.par_iter().map(|&i| check(i)).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_indices<F>(indices: &[u64], check: F) -> Vec<Case>
where
    F: Fn(u64) -> Case,
{
    indices.iter().map(|&i| check(i)).collect()
}

fn drive<F>(kind: SweepKind, n: usize, mode: String, indices: Vec<u64>, check: F) -> SweepReport
where
    F: Fn(u64) -> Case + Sync + Send,
{
    let cases = map_indices(&indices, check);
    let mut counts = BTreeMap::new();
    let mut agree = 0;
    let mut counterexample = None;
    for case in &cases {
        match &case.disagreement {
            None => agree += 1,
            Some(c) if counterexample.is_none() => counterexample = Some(c.clone()),
            Some(_) => {}
        }
        for t in &case.tags {
            *counts.entry(t.to_string()).or_insert(0) += 1;
        }
    }
    SweepReport {
        kind,
        n,
        mode,
        total: cases.len() as u64,
        agree,
        counterexample,
        counts,
    }
}

/// Runs one suite with the default seed for sampled modes.
pub fn sweep(kind: SweepKind, n: usize) -> Result<SweepReport, OperatorError> {
    sweep_seeded(kind, n, 0)
}

pub fn sweep_seeded(kind: SweepKind, n: usize, seed: u64) -> Result<SweepReport, OperatorError> {
    if n == 0 || n > kind.cap() {
        return Err(OperatorError::AboveCap {
            what: kind.name(),
            cap: kind.cap(),
            n,
        });
    }
    let alg = Powerset::new(n)?;
    let ops = FiniteOp::count(&alg)?;
    let all: Vec<u64> = (0..ops).collect();
    let exhaustive = "exhaustive".to_string();
    Ok(match kind {
        SweepKind::PcOracle => drive(kind, n, exhaustive, all, |i| pc_case(&FiniteOp::nth(&alg, i))),
        SweepKind::ProperOracle => {
            let everything: Vec<FiniteOp> = FiniteOp::enumerate(&alg)?.collect();
            drive(kind, n, exhaustive, all, |i| proper_case(&everything[i as usize], &everything))
        }
        SweepKind::RautOracle => drive(kind, n, exhaustive, all, |i| raut_case(&FiniteOp::nth(&alg, i))),
        SweepKind::CoverOracle => {
            let (mode, pairs) = if n <= COVER_EXHAUSTIVE_ATOMS {
                (exhaustive, (0..ops * ops).collect())
            } else {
                let mut rng = seeded_rng(seed);
                let pairs = (0..COVER_SAMPLES).map(|_| rng.gen_range(0..ops * ops)).collect();
                (format!("sampled({COVER_SAMPLES}, seed {seed})"), pairs)
            };
            drive(kind, n, mode, pairs, |i| {
                cover_case(&FiniteOp::nth(&alg, i / ops), &FiniteOp::nth(&alg, i % ops))
            })
        }
        SweepKind::AxiomFrame => {
            let relations: Vec<u64> = (0..1u64 << (n * n)).collect();
            drive(kind, n, exhaustive, relations, |i| {
                frame_case(&Frame::nth_relation(n, i).expect("index below 2^(n²)"))
            })
        }
    })
}

fn pc_case(f: &FiniteOp) -> Case {
    let formula = dual_pseudocomplement(f);
    let brute = least_annihilator_brute(f);
    match (formula, brute) {
        (Ok(p), Ok(Some(b))) if p == b => Case::agree(vec![]),
        (p, b) => Case::from(
            Some(format!("f = {}: formula {:?}, brute force {:?}", f.render_table(), p, b)),
            vec![],
        ),
    }
}

fn proper_case(f: &FiniteOp, everything: &[FiniteOp]) -> Case {
    let report = proper_companion_decide_finite(f);
    let decided = report.decision == Decision::ProperExists;
    let brute = everything
        .iter()
        .any(|g| !g.is_discriminator() && is_decomposing_finite(f, g));
    let nonzero = !f.is_zero();
    let mut problems = Vec::new();
    if decided != brute {
        problems.push(format!("decision {} but brute force says {brute}", report.decision));
    }
    if decided != nonzero {
        problems.push(format!("decision {} but f ≠ f⁰ is {nonzero}", report.decision));
    }
    if decided {
        match (report.x, report.z) {
            (Some(x), Some(z)) => match construct_companion_finite(f, x, z) {
                Ok(g) if !g.is_discriminator() && is_decomposing_finite(f, &g) => {}
                Ok(_) => problems.push("constructed companion is not proper".into()),
                Err(e) => problems.push(format!("construction failed: {e}")),
            },
            _ => problems.push("witnesses missing".into()),
        }
    }
    let tags = if decided { vec!["proper_exists"] } else { vec![] };
    Case::from(
        (!problems.is_empty()).then(|| format!("f = {}: {}", f.render_table(), problems.join("; "))),
        tags,
    )
}

fn raut_case(f: &FiniteOp) -> Case {
    let (criterion, oracle) = match (rautenberg_si(f), congruence_ideal_oracle(f)) {
        (Ok(r), Ok(o)) => (r.verdict.is_si(), o.is_si()),
        (r, o) => return Case::from(Some(format!("f = {}: {:?} / {:?}", f.render_table(), r.err(), o.err())), vec![]),
    };
    let mut tags = Vec::new();
    let mut problems = Vec::new();
    if criterion != oracle {
        problems.push(format!("criterion says si = {criterion}, closed ideals say {oracle}"));
    }
    if criterion {
        tags.push("si");
    }
    let closure = check_closure(f, &Surface::of(f.alg(), 0, 0)).holds();
    if closure && criterion {
        tags.push("si_closure");
        if proper_companion_decide_finite(f).decision != Decision::ProperExists {
            problems.push("subdirectly irreducible closure operator without a proper companion".into());
        }
    }
    Case::from(
        (!problems.is_empty()).then(|| format!("f = {}: {}", f.render_table(), problems.join("; "))),
        tags,
    )
}

fn cover_case(f: &FiniteOp, g: &FiniteOp) -> Case {
    match covering_check(f, g) {
        Ok(r) if r.agrees() => Case::agree(if r.decomposing { vec!["decomposing"] } else { vec![] }),
        Ok(r) => Case::from(
            Some(format!("f = {}, g = {}: {r:?}", f.render_table(), g.render_table())),
            vec![],
        ),
        Err(e) => Case::from(Some(e.to_string()), vec![]),
    }
}

fn frame_case(frame: &Frame) -> Case {
    let rows = axiom_frame_correspondence(frame);
    let bad: Vec<String> = rows
        .iter()
        .filter(|c| !c.agrees())
        .map(|c| format!("{} vs {}", c.axiom, c.frame_property))
        .collect();
    let edges: Vec<String> = frame.edges().map(|(x, y)| format!("{x}->{y}")).collect();
    let tags = rows
        .iter()
        .filter(|c| c.frame_has_property)
        .map(|c| c.frame_property)
        .collect();
    Case::from(
        (!bad.is_empty()).then(|| format!("edges [{}]: {}", edges.join(","), bad.join("; "))),
        tags,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in SweepKind::ALL {
            assert_eq!(k.name().parse::<SweepKind>().unwrap(), k);
        }
        assert!("nope".parse::<SweepKind>().is_err());
    }

    #[test]
    fn pc_oracle_at_two_atoms() {
        let r = sweep(SweepKind::PcOracle, 2).unwrap();
        assert_eq!((r.agree, r.total), (16, 16));
    }

    #[test]
    fn caps_are_enforced() {
        assert!(sweep(SweepKind::PcOracle, 4).is_err());
        assert!(sweep(SweepKind::AxiomFrame, 0).is_err());
    }

    #[test]
    fn axiom_frame_at_two_points() {
        let r = sweep(SweepKind::AxiomFrame, 2).unwrap();
        assert_eq!((r.agree, r.total), (16, 16));
        // reflexive relations on two points: the two loops plus any of 4 others
        assert_eq!(r.counts["reflexive"], 4);
    }
}
