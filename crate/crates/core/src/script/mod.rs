//! A small line-oriented language for declaring carriers, operators and
//! frames and querying them.
//!
//! ```text
//! algebra B = powerset(atoms:[a,b])
//! operator f on B = table{a -> a+b, b -> 0}
//! pc f
//! proper f expect proper_exists --budget 5
//! ```
//!
//! [`parse`] checks syntax, [`validate`] resolves names, arities and
//! carriers, [`execute`] runs the queries. Any diagnostic from the first two
//! stages maps to exit status 2.

pub mod ast;
mod exec;
pub mod lexer;
mod parser;
pub mod program;

use std::fmt;

use serde::Serialize;

pub use ast::{Pos, Script};
pub use exec::{execute, QueryRecord, Report, SCHEMA};
pub use parser::parse;
pub use program::{decisions, validate, Program};

use crate::algebra::{DEFAULT_SAMPLES, MAX_ATOMS};
use crate::DEFAULT_BUDGET;

/// Exit status for parse and validation errors.
pub const EXIT_INVALID: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticKind {
    Syntax,
    UnknownName,
    Arity,
    CarrierMismatch,
    Duplicate,
    Invalid,
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DiagnosticKind::Syntax => "syntax error",
            DiagnosticKind::UnknownName => "unknown name",
            DiagnosticKind::Arity => "arity mismatch",
            DiagnosticKind::CarrierMismatch => "carrier mismatch",
            DiagnosticKind::Duplicate => "duplicate name",
            DiagnosticKind::Invalid => "invalid",
        };
        f.write_str(s)
    }
}

/// The first problem found in a script.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub pos: Pos,
    pub message: String,
}

impl Diagnostic {
    pub fn new(kind: DiagnosticKind, pos: Pos, message: impl Into<String>) -> Self {
        Diagnostic {
            kind,
            pos,
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": SCHEMA,
            "error": {
                "kind": self.kind,
                "line": self.pos.line,
                "column": self.pos.col,
                "message": self.message,
            }
        })
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.pos, self.kind, self.message)
    }
}

impl std::error::Error for Diagnostic {}

/// Defaults applied to every query; flags on a query override them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExecConfig {
    pub seed: u64,
    pub budget: usize,
    pub samples: usize,
    /// Largest powerset a script may declare.
    pub max_atoms: usize,
}

impl Default for ExecConfig {
    fn default() -> Self {
        ExecConfig {
            seed: 0,
            budget: DEFAULT_BUDGET,
            samples: DEFAULT_SAMPLES,
            max_atoms: MAX_ATOMS,
        }
    }
}

/// Parse, validate and execute.
pub fn run_source(source: &str, cfg: &ExecConfig) -> Result<Report, Diagnostic> {
    let script = parse(source)?;
    let program = validate(&script, cfg)?;
    Ok(execute(&program, cfg))
}
