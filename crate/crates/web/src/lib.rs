//! Browser bindings: run a script, analyse an atom table, run a sweep.
//!
//! Every entry point returns pretty JSON, or an error message string.

use modal_core::algebra::{Powerset, Subset, DEFAULT_SAMPLES, MAX_ATOMS};
use modal_core::dda::proper_companion_decide_finite;
use modal_core::operator::FiniteOp;
use modal_core::script::{run_source, ExecConfig};
use modal_core::semilattice::{dual_pseudocomplement, is_dually_dense};
use modal_core::sweep::{sweep_seeded, SweepKind};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Runs a script; diagnostics come back as the diagnostic JSON, not as an error.
#[wasm_bindgen]
pub fn run_script(source: &str, seed: u32, budget: u32) -> String {
    let cfg = ExecConfig {
        seed: seed.into(),
        budget: budget as usize,
        samples: DEFAULT_SAMPLES,
        max_atoms: MAX_ATOMS,
    };
    match run_source(source, &cfg) {
        Ok(report) => report.to_json(),
        Err(d) => serde_json::to_string_pretty(&d.to_json()).expect("json prints"),
    }
}

/// Parses `a -> a+b, b -> 0` on `atoms` atoms labelled `a`, `b`, ...; unlisted atoms map to 0.
fn parse_table(atoms: u32, text: &str) -> Result<FiniteOp, String> {
    let alg = Powerset::new(atoms as usize).map_err(|e| e.to_string())?;
    let mut table = vec![Subset::EMPTY; alg.atom_count()];
    let body = text.trim().trim_start_matches('{').trim_end_matches('}');
    for entry in body.split(',').map(str::trim).filter(|e| !e.is_empty()) {
        let (atom, value) = entry
            .split_once("->")
            .ok_or_else(|| format!("expected `atom -> element`, found `{entry}`"))?;
        let i = alg.atom_index(atom.trim()).map_err(|e| e.to_string())?;
        table[i] = alg.parse_element(value).map_err(|e| e.to_string())?;
    }
    FiniteOp::new(&alg, table).map_err(|e| e.to_string())
}

/// Dual pseudocomplement, dual density and proper-companion decision of an atom table.
#[wasm_bindgen]
pub fn analyse_table(atoms: u32, table: &str) -> Result<String, String> {
    let f = parse_table(atoms, table)?;
    let pc = dual_pseudocomplement(&f).map_err(|e| e.to_string())?;
    let dense = is_dually_dense(&f).map_err(|e| e.to_string())?;
    let report = proper_companion_decide_finite(&f);
    let value = json!({
        "f": f.render_table(),
        "dual_pseudocomplement": pc.render_table(),
        "dually_dense": dense,
        "proper_companion": report.decision.to_string(),
        "companion": report.companion.map(|g| g.render_table()),
    });
    Ok(serde_json::to_string_pretty(&value).expect("json prints"))
}

/// One exhaustive equivalence suite, as in `modal-workbench sweep`.
#[wasm_bindgen]
pub fn sweep(kind: &str, n: u32, seed: u32) -> Result<String, String> {
    let kind = kind.parse::<SweepKind>().map_err(|e| e.to_string())?;
    let report = sweep_seeded(kind, n as usize, seed.into()).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string_pretty(&report).expect("json prints"))
}
