//! Worked examples shipped as certified operators with regression checks.
//!
//! Each bundle builds its operators and runs a fixed list of assertions.
//! Universally quantified assertions on symbolic carriers are checked on a
//! seeded sample and say so in their mode. Statements about all operators of
//! an infinite carrier are only checked in bounded form.

pub mod backforth;
pub mod exdensepc;
pub mod exfc;
pub mod exfree;
pub mod exnotdense;
pub mod exuf;
pub mod iso;
pub mod jon2;

use serde::Serialize;

use crate::algebra::{BooleanAlgebra, Verification, DEFAULT_SAMPLES};
use crate::error::OperatorError;
use crate::operator::RuleOp;
use crate::DEFAULT_BUDGET;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub label: String,
    pub passed: bool,
    /// `exhaustive`, `randomized(k)`, `exact` or `bounded(k)`.
    pub mode: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BundleReport {
    pub name: String,
    pub carrier: String,
    pub assertions: Vec<Assertion>,
    pub notes: Vec<String>,
}

impl BundleReport {
    pub fn new(name: &str, carrier: &str) -> Self {
        BundleReport {
            name: name.to_string(),
            carrier: carrier.to_string(),
            assertions: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.passed)
    }

    pub(crate) fn check(&mut self, label: &str, passed: bool, mode: impl ToString, detail: impl Into<String>) {
        self.assertions.push(Assertion {
            label: label.to_string(),
            passed,
            mode: mode.to_string(),
            detail: detail.into(),
        });
    }

    pub(crate) fn exact(&mut self, label: &str, passed: bool, detail: impl Into<String>) {
        self.check(label, passed, "exact", detail);
    }

    /// Certifies each operator and records one assertion for all of them.
    /// Operators that fail keep their uncertified form.
    pub(crate) fn certify<A: BooleanAlgebra + 'static>(
        &mut self,
        label: &str,
        ops: Vec<RuleOp<A>>,
        cfg: &RunConfig,
    ) -> Vec<RuleOp<A>> {
        let mut failures = Vec::new();
        let out = ops
            .into_iter()
            .map(|op| match op.clone().certified(cfg.seed, cfg.samples) {
                Ok(c) => c,
                Err(e) => {
                    failures.push(format!("{}: {e}", op.name()));
                    op
                }
            })
            .collect();
        let detail = if failures.is_empty() {
            "normal and additive on the sample".to_string()
        } else {
            failures.join("; ")
        };
        self.check(label, failures.is_empty(), cfg.mode(), detail);
        out
    }

    pub(crate) fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }
}

/// Seed, witness budget and sample count shared by all bundles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub budget: usize,
    pub samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            budget: DEFAULT_BUDGET,
            samples: DEFAULT_SAMPLES,
        }
    }
}

impl RunConfig {
    pub(crate) fn mode(&self) -> Verification {
        Verification::Randomized {
            samples: self.samples,
        }
    }
}

pub const NAMES: [&str; 6] = ["jon2", "exfc", "exfree", "exuf", "exnotdense", "exdensepc"];

/// One bundle with its default parameters.
pub fn run(name: &str, cfg: &RunConfig) -> Result<BundleReport, OperatorError> {
    match name {
        "jon2" => jon2::run(cfg),
        "exfc" => exfc::run(cfg),
        "exfree" => exfree::run(cfg),
        "exuf" => exuf::run(&exuf::IdealChoice::default(), cfg),
        "exnotdense" => exnotdense::run(&exnotdense::default_a(), cfg),
        "exdensepc" => {
            let (a, b, c) = exdensepc::default_parts();
            exdensepc::run(&a, &b, &c, cfg)
        }
        other => Err(OperatorError::BadParameters(format!(
            "unknown example `{other}`; known: {}",
            NAMES.join(", ")
        ))),
    }
}

/// Every bundle, in the order of [`NAMES`].
pub fn run_all(cfg: &RunConfig) -> Vec<Result<BundleReport, OperatorError>> {
    NAMES.iter().map(|n| run(n, cfg)).collect()
}
