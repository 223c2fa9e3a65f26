//! Runs validated steps in order and collects one record per query.
//!
//! A query without `expect` passes when it raised no error and, for the
//! yes/no queries (`check`, `dense`, `kmpa`, `stone`, `cover`, `si`, `wmia`,
//! `companion`, `examples`), when the answer is positive. With `expect D`
//! it passes iff the decision is `D`.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

use serde::Serialize;
use serde_json::{json, Value as Json};

use super::program::{Action, AxiomArg, DotTarget, OpRef, Operator, Options, Program, Step, Value};
use super::ExecConfig;
use crate::algebra::{BooleanAlgebra, FiniteCofinite, IntervalAlgebra, Surface, WitnessGrid};
use crate::bundles::{self, RunConfig};
use crate::dda::{
    congruence_ideal_oracle, construct_companion, construct_companion_finite, covering_check, from_wmia, kmpa_check,
    minimal_pairs, proper_companion_decide, proper_companion_decide_finite, rautenberg_si, to_wmia, CompanionReport,
};
use crate::duality::dot::{fc_frame_to_dot, frame_to_dot};
use crate::duality::fc::FcCanonicalFrame;
use crate::duality::{canonical_frame, complex_algebra, round_trip_holds, stone_check, Frame};
use crate::error::OperatorError;
use crate::operator::{certify, check_axiom, check_closure, eq_on, ElementMap, FiniteOp, RuleOp, Verdict, MAX_ENUM_ATOMS};
use crate::semilattice::{
    annihilates, annihilators, budgeted_annihilator_search, dual_pseudocomplement, is_dually_dense,
    least_annihilator_brute,
};

/// Version of the JSON layout.
pub const SCHEMA: u32 = 1;

/// Annihilator tables listed in a report; the count is always complete.
const LISTED_ANNIHILATORS: usize = 32;

/// Exhaustive minimality check of `f^⊥` up to this many atoms.
const PC_BRUTE_ATOMS: usize = 3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QueryRecord {
    pub query: String,
    pub line: usize,
    pub carrier: Option<String>,
    pub decision: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    pub witnesses: BTreeMap<String, Json>,
    pub companion: Option<Json>,
    pub certificates: Vec<String>,
    pub budget_used: Option<usize>,
    pub summary: String,
    pub detail: Json,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub seed: u64,
    pub budget: usize,
    pub samples: usize,
    pub results: Vec<QueryRecord>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    /// 0 when every query passed, 1 otherwise.
    pub fn exit_status(&self) -> i32 {
        if self.failed == 0 {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per query.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let mark = if r.passed { "ok  " } else { "FAIL" };
            out.push_str(&format!("{mark} {:>3}: {} -> {}", r.line, r.query, r.decision));
            if !r.summary.is_empty() {
                out.push_str(&format!("  ({})", r.summary));
            }
            out.push('\n');
            if let Some(e) = &r.error {
                out.push_str(&format!("     error: {e}\n"));
            }
        }
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }

    /// DOT texts produced by `dot` queries, in script order.
    pub fn dot_outputs(&self) -> Vec<&str> {
        self.results
            .iter()
            .filter_map(|r| r.detail.get("dot").and_then(Json::as_str))
            .collect()
    }
}

#[derive(Default)]
struct Outcome {
    decision: String,
    /// Verdict used when the query carries no `expect`.
    positive: bool,
    witnesses: BTreeMap<String, Json>,
    companion: Option<Json>,
    certificates: Vec<String>,
    budget_used: Option<usize>,
    summary: String,
    detail: Json,
}

impl Outcome {
    fn new(decision: &str, positive: bool) -> Self {
        Outcome {
            decision: decision.to_string(),
            positive,
            detail: Json::Null,
            ..Outcome::default()
        }
    }

    fn witness<A: BooleanAlgebra>(&mut self, alg: &A, key: &str, e: &A::Elem) {
        self.witnesses.insert(key.to_string(), alg.element_json(e));
    }
}

pub fn execute(program: &Program, cfg: &ExecConfig) -> Report {
    let results: Vec<QueryRecord> = program.steps.iter().map(run_step).collect();
    let passed = results.iter().filter(|r| r.passed).count();
    Report {
        schema: SCHEMA,
        seed: cfg.seed,
        budget: cfg.budget,
        samples: cfg.samples,
        failed: results.len() - passed,
        passed,
        results,
    }
}

fn run_step(step: &Step) -> QueryRecord {
    let result = catch_unwind(AssertUnwindSafe(|| action(&step.action, &step.opts)))
        .unwrap_or_else(|_| Err(OperatorError::Unsupported("query aborted by an internal error".into())));
    let mut record = QueryRecord {
        query: step.text.clone(),
        line: step.line,
        carrier: step.carrier.clone(),
        decision: "error".into(),
        passed: false,
        expected: step.expect.clone(),
        witnesses: BTreeMap::new(),
        companion: None,
        certificates: Vec::new(),
        budget_used: None,
        summary: String::new(),
        detail: Json::Null,
        error: None,
    };
    match result {
        Ok(o) => {
            record.passed = match &step.expect {
                Some(e) => *e == o.decision,
                None => o.positive,
            };
            record.decision = o.decision;
            record.witnesses = o.witnesses;
            record.companion = o.companion;
            record.certificates = o.certificates;
            record.budget_used = o.budget_used;
            record.summary = o.summary;
            record.detail = o.detail;
        }
        Err(e) => record.error = Some(e.to_string()),
    }
    record
}

macro_rules! with_op {
    ($op:expr, |$alg:ident, $f:ident| $body:expr) => {
        match $op {
            Operator::Finite($f) => {
                let $alg = $f.alg().clone();
                $body
            }
            Operator::Fc($f) => {
                let $alg = FiniteCofinite;
                $body
            }
            Operator::Int($f) => {
                let $alg = IntervalAlgebra;
                $body
            }
        }
    };
}

fn action(action: &Action, o: &Options) -> Result<Outcome, OperatorError> {
    match action {
        Action::Check(f, axiom) => with_op!(&f.op, |alg, op| Ok(check_on(&alg, op, &f.name, *axiom, o))),
        Action::Eval(f, x) => eval(f, x),
        Action::Pc(f) => pc(f, o),
        Action::Annihilators(f) => finite(f).and_then(annihilator_list),
        Action::Dense(f) => {
            let dense = is_dually_dense(finite(f)?)?;
            let mut out = Outcome::new(if dense { "holds" } else { "fails" }, dense);
            out.summary = format!("{} the only annihilator of {}", if dense { "f¹ is" } else { "f¹ is not" }, f.name);
            out.certificates.push("exhaustive over M(B)".into());
            Ok(out)
        }
        Action::Proper(f) => proper(f, o),
        Action::Companion(f, x, z) => companion(f, x, z, o),
        Action::Minpairs(alg) => {
            let pairs = minimal_pairs(alg)?;
            let mut out = Outcome::new("computed", true);
            out.summary = format!("{} minimal decomposing pairs", pairs.len());
            out.detail = json!({
                "count": pairs.len(),
                "pairs": pairs.iter().map(|(f, g)| json!([f.render_table(), g.render_table()])).collect::<Vec<_>>(),
            });
            out.certificates.push("exhaustive over M(B)²".into());
            Ok(out)
        }
        Action::Si(f) => si(finite(f)?),
        Action::Kmpa(f, g) => kmpa(f, g, o),
        Action::Cover(f, g) => {
            let r = covering_check(finite(f)?, finite(g)?)?;
            let agrees = r.agrees();
            let mut out = Outcome::new(if agrees { "agrees" } else { "disagrees" }, agrees);
            out.summary = format!("R_f ∪ R_g universal: {}, decomposing: {}", r.covers, r.decomposing);
            out.detail = serde_json::to_value(&r).expect("serializable");
            out.certificates.push("exhaustive over atoms and elements".into());
            Ok(out)
        }
        Action::Wmia(f, g) => wmia(f, g, o),
        Action::Cf(f) => {
            let frame = canonical_frame(finite(f)?);
            let mut out = Outcome::new("computed", true);
            out.summary = format!("{} points, {} edges", frame.size(), frame.edge_count());
            out.detail = frame_json(&frame);
            Ok(out)
        }
        Action::Cm(name, frame) => {
            let (alg, op) = complex_algebra(frame);
            let mut out = Outcome::new("computed", true);
            out.summary = format!("⟨R⟩ = {}", op.render_table());
            out.detail = json!({ "frame": name, "carrier": alg.name(), "table": op.to_json() });
            Ok(out)
        }
        Action::Stone(f) => {
            let f = finite(f)?;
            let r = stone_check(f);
            let round_trip = round_trip_holds(f);
            let holds = r.holds() && round_trip;
            let mut out = Outcome::new(if holds { "holds" } else { "fails" }, holds);
            out.summary = format!("h(f(a)) = ⟨R_f⟩h(a): {}, Cm Cf ≅ B: {round_trip}", r.commutes);
            out.detail = json!({ "stone": r, "round_trip": round_trip });
            out.certificates.push("exhaustive over elements".into());
            Ok(out)
        }
        Action::Dot(target) => {
            let dot = match target {
                DotTarget::Frame(name, frame) => frame_to_dot(frame, name),
                DotTarget::Op(f) => match &f.op {
                    Operator::Finite(op) => frame_to_dot(&canonical_frame(op), &f.name),
                    Operator::Fc(op) => fc_frame_to_dot(&FcCanonicalFrame::new(op)?, &f.name, o.budget as u64),
                    Operator::Int(_) => return Err(OperatorError::Unsupported("no frame drawing for intervals".into())),
                },
            };
            let mut out = Outcome::new("computed", true);
            out.summary = format!("{} lines of DOT", dot.lines().count());
            out.detail = json!({ "dot": dot });
            Ok(out)
        }
        Action::ExamplesList => {
            let mut out = Outcome::new("listed", true);
            out.summary = bundles::NAMES.join(", ");
            out.detail = json!({ "examples": bundles::NAMES });
            Ok(out)
        }
        Action::ExamplesRun(name) => examples(name.as_deref(), o),
    }
}

fn finite(f: &OpRef) -> Result<&FiniteOp, OperatorError> {
    match &f.op {
        Operator::Finite(op) => Ok(op),
        _ => Err(OperatorError::Unsupported(format!("`{}` is not on a finite carrier", f.name))),
    }
}

fn check_on<A, M>(alg: &A, f: &M, name: &str, axiom: AxiomArg, o: &Options) -> Outcome
where
    A: BooleanAlgebra,
    M: ElementMap<A>,
{
    let surface = Surface::of(alg, o.seed, o.samples);
    let (label, verdict, reason) = match axiom {
        AxiomArg::Axiom(crate::operator::Axiom::K) => match certify(f, &surface) {
            Ok(mode) => ("K".to_string(), Verdict::Holds(mode), None),
            Err(e) => ("K".to_string(), Verdict::FailsAt(alg.zero()), Some(e.to_string())),
        },
        AxiomArg::Axiom(a) => (a.to_string(), check_axiom(f, a, &surface), None),
        AxiomArg::Closure => ("closure".to_string(), check_closure(f, &surface), None),
    };
    let mut out = Outcome::new(if verdict.holds() { "holds" } else { "fails" }, verdict.holds());
    out.certificates.push(surface.mode.to_string());
    out.summary = match (&verdict, reason) {
        (Verdict::Holds(mode), _) => format!("{label} holds for {name} ({mode})"),
        (_, Some(reason)) => format!("{label} fails for {name}: {reason}"),
        (Verdict::FailsAt(x), None) => {
            out.witness(alg, "x", x);
            format!("{label} fails for {name} at x = {}", alg.render(x))
        }
    };
    out
}

fn eval(f: &OpRef, x: &Value) -> Result<Outcome, OperatorError> {
    fn on<A: BooleanAlgebra, M: ElementMap<A>>(alg: &A, f: &M, name: &str, x: &A::Elem) -> Outcome {
        let v = f.apply(x);
        let mut out = Outcome::new("value", true);
        out.witness(alg, "x", x);
        out.witness(alg, "value", &v);
        out.summary = format!("{name}({}) = {}", alg.render(x), alg.render(&v));
        out
    }
    Ok(match (&f.op, x) {
        (Operator::Finite(op), Value::P(x)) => on(op.alg(), op, &f.name, x),
        (Operator::Fc(op), Value::F(x)) => on(&FiniteCofinite, op, &f.name, x),
        (Operator::Int(op), Value::I(x)) => on(&IntervalAlgebra, op, &f.name, x),
        _ => return Err(OperatorError::CarrierMismatch),
    })
}

fn pc(f: &OpRef, o: &Options) -> Result<Outcome, OperatorError> {
    fn search<A: WitnessGrid + 'static>(f: &RuleOp<A>, o: &Options) -> Outcome {
        let found = budgeted_annihilator_search(f, &[], o.budget, o.seed, o.samples);
        let mut out = match found.found() {
            Some(g) => {
                let mut out = Outcome::new("found", true);
                out.companion = Some(json!({ "name": g.name() }));
                out.summary = format!("{} annihilates {}; minimality not claimed", g.name(), f.name());
                out.certificates
                    .push(format!("f ∨ g = f¹ ({})", Surface::of(f.carrier(), o.seed, o.samples).mode));
                out
            }
            None => {
                let mut out = Outcome::new("unknown", true);
                out.summary = format!("no annihilator among {} candidates", found.tried());
                out
            }
        };
        out.budget_used = Some(found.tried());
        out
    }
    let op = match &f.op {
        Operator::Finite(op) => op,
        Operator::Fc(op) => return Ok(search(op, o)),
        Operator::Int(op) => return Ok(search(op, o)),
    };
    let perp = dual_pseudocomplement(op)?;
    let mut out = Outcome::new("computed", true);
    if !annihilates(op, &perp) {
        return Err(OperatorError::Unsupported("the sum formula did not give an annihilator".into()));
    }
    out.certificates.push("f ∨ f^⊥ = f¹ (exhaustive)".into());
    if op.alg().atom_count() <= PC_BRUTE_ATOMS {
        let least = least_annihilator_brute(op)?;
        if least.as_ref() != Some(&perp) {
            return Err(OperatorError::Unsupported("the sum formula disagrees with the least annihilator".into()));
        }
        out.certificates.push("least among all annihilators (exhaustive over M(B))".into());
    }
    out.summary = format!("{}^⊥ = {}", f.name, perp.render_table());
    out.detail = json!({ "table": perp.render_table() });
    out.companion = Some(perp.to_json());
    Ok(out)
}

fn annihilator_list(f: &FiniteOp) -> Result<Outcome, OperatorError> {
    let all = annihilators(f)?;
    let least = least_annihilator_brute(f)?;
    let mut out = Outcome::new("computed", true);
    out.summary = format!(
        "{} annihilators, least {}",
        all.len(),
        least.as_ref().map_or("none".into(), |g| g.render_table())
    );
    out.detail = json!({
        "count": all.len(),
        "least": least.as_ref().map(FiniteOp::render_table),
        "listed": all.iter().take(LISTED_ANNIHILATORS).map(FiniteOp::render_table).collect::<Vec<_>>(),
    });
    out.certificates.push(format!("exhaustive over M(B), at most {MAX_ENUM_ATOMS} atoms"));
    Ok(out)
}

fn companion_outcome<A: BooleanAlgebra, G>(
    alg: &A,
    r: CompanionReport<A::Elem, G>,
    companion: impl Fn(&G) -> Json,
) -> Outcome {
    let mut out = Outcome::new(&r.decision.to_string(), true);
    if let Some(x) = &r.x {
        out.witness(alg, "x", x);
    }
    if let Some(z) = &r.z {
        out.witness(alg, "z", z);
    }
    out.summary = match (&r.x, &r.z) {
        (Some(x), Some(z)) => format!("x = {}, z = {}", alg.render(x), alg.render(z)),
        _ => format!("{} after {} witnesses", r.decision, r.budget_used),
    };
    out.companion = r.companion.as_ref().map(companion);
    out.certificates = r.certificates;
    out.budget_used = Some(r.budget_used);
    out
}

fn rule_json<A: BooleanAlgebra + 'static>(g: &RuleOp<A>) -> Json {
    json!({ "name": g.name() })
}

fn proper(f: &OpRef, o: &Options) -> Result<Outcome, OperatorError> {
    Ok(match &f.op {
        Operator::Finite(op) => companion_outcome(op.alg(), proper_companion_decide_finite(op), FiniteOp::to_json),
        Operator::Fc(op) => companion_outcome(
            &FiniteCofinite,
            proper_companion_decide(op, o.budget, o.seed, o.samples),
            rule_json,
        ),
        Operator::Int(op) => companion_outcome(
            &IntervalAlgebra,
            proper_companion_decide(op, o.budget, o.seed, o.samples),
            rule_json,
        ),
    })
}

fn companion(f: &OpRef, x: &Value, z: &Value, o: &Options) -> Result<Outcome, OperatorError> {
    fn finish<A: BooleanAlgebra>(alg: &A, x: &A::Elem, z: &A::Elem, built: Result<Json, OperatorError>) -> Outcome {
        let mut out = match built {
            Ok(g) => {
                let mut out = Outcome::new("constructed", true);
                out.companion = Some(g);
                out.summary = "proper companion verified".into();
                out
            }
            Err(e) => {
                let mut out = Outcome::new("refused", false);
                out.summary = e.to_string();
                out
            }
        };
        out.witness(alg, "x", x);
        out.witness(alg, "z", z);
        out
    }
    Ok(match (&f.op, x, z) {
        (Operator::Finite(op), Value::P(x), Value::P(z)) => {
            let built = construct_companion_finite(op, *x, *z).map(|g| g.to_json());
            let mut out = finish(op.alg(), x, z, built);
            if out.decision == "constructed" {
                out.certificates.push("decomposing and not f¹ (exhaustive)".into());
            }
            out
        }
        (Operator::Fc(op), Value::F(x), Value::F(z)) => {
            let built = construct_companion(op, x, z, o.seed, o.samples).map(|g| rule_json(&g));
            finish(&FiniteCofinite, x, z, built)
        }
        (Operator::Int(op), Value::I(x), Value::I(z)) => {
            let built = construct_companion(op, x, z, o.seed, o.samples).map(|g| rule_json(&g));
            finish(&IntervalAlgebra, x, z, built)
        }
        _ => return Err(OperatorError::CarrierMismatch),
    })
}

fn si(f: &FiniteOp) -> Result<Outcome, OperatorError> {
    let report = rautenberg_si(f)?;
    let oracle = congruence_ideal_oracle(f)?;
    let is_si = report.verdict.is_si();
    let agrees = is_si == oracle.is_si();
    let mut out = Outcome::new(if is_si { "si" } else { "not_si" }, agrees);
    if let Some(m) = oracle.monolith() {
        out.witness(f.alg(), "monolith", &m);
    }
    out.certificates.push(format!("criterion form {:?}", report.form));
    out.certificates.push(format!(
        "closed-ideal oracle {} ({} closed ideals)",
        if agrees { "agrees" } else { "disagrees" },
        oracle.closed.len()
    ));
    out.summary = format!("{} by the criterion", if is_si { "subdirectly irreducible" } else { "not subdirectly irreducible" });
    out.detail = json!({ "form": report.form, "closed_ideals": oracle.closed.len() });
    Ok(out)
}

fn kmpa(f: &OpRef, g: &OpRef, o: &Options) -> Result<Outcome, OperatorError> {
    fn on<A: BooleanAlgebra, M: ElementMap<A>>(alg: &A, f: &M, g: &M, o: &Options) -> Outcome {
        let surface = Surface::of(alg, o.seed, o.samples);
        let r = kmpa_check(f, g, &surface);
        let holds = r.all_hold();
        let mut out = Outcome::new(if holds { "holds" } else { "fails" }, holds);
        let mut parts = Vec::new();
        for (key, v) in [("u1", &r.u1), ("u2", &r.u2), ("u3", &r.u3)] {
            match v.witness() {
                None => parts.push(format!("{key} holds")),
                Some(x) => {
                    out.witness(alg, key, x);
                    parts.push(format!("{key} fails at {}", alg.render(x)));
                }
            }
        }
        out.summary = parts.join(", ");
        out.detail = json!({ "u(0)": alg.element_json(&r.u_at_zero) });
        out.certificates.push(surface.mode.to_string());
        out
    }
    Ok(match (&f.op, &g.op) {
        (Operator::Finite(a), Operator::Finite(b)) => on(a.alg(), a, b, o),
        (Operator::Fc(a), Operator::Fc(b)) => on(&FiniteCofinite, a, b, o),
        (Operator::Int(a), Operator::Int(b)) => on(&IntervalAlgebra, a, b, o),
        _ => return Err(OperatorError::CarrierMismatch),
    })
}

fn wmia(f: &OpRef, g: &OpRef, o: &Options) -> Result<Outcome, OperatorError> {
    fn on<A: BooleanAlgebra, M: ElementMap<A> + Clone>(alg: &A, f: &M, g: &M, o: &Options) -> Result<Outcome, OperatorError> {
        let surface = Surface::of(alg, o.seed, o.samples);
        let s = match to_wmia(f, g.clone(), &surface) {
            Ok(s) => s,
            Err(OperatorError::NotDecomposing { x, value }) => {
                let mut out = Outcome::new("not_decomposing", false);
                out.summary = format!("f({x}) + g({x}) = {value}");
                return Ok(out);
            }
            Err(e) => return Err(e),
        };
        let back = from_wmia(f, s, &surface)?;
        let round_trip = eq_on(&back, g, &surface);
        let mut out = Outcome::new("translated", round_trip.holds());
        out.summary = format!("g* is a sufficiency operator below f; back-translation recovers g: {}", round_trip.holds());
        out.certificates.push(format!("decomposing ({})", surface.mode));
        out.certificates.push(format!("sufficiency laws and g* <= f ({})", surface.mode));
        Ok(out)
    }
    match (&f.op, &g.op) {
        (Operator::Finite(a), Operator::Finite(b)) => on(a.alg(), a, b, o),
        (Operator::Fc(a), Operator::Fc(b)) => on(&FiniteCofinite, a, b, o),
        (Operator::Int(a), Operator::Int(b)) => on(&IntervalAlgebra, a, b, o),
        _ => Err(OperatorError::CarrierMismatch),
    }
}

fn frame_json(frame: &Frame) -> Json {
    let labels = frame.labels();
    json!({
        "points": labels,
        "edges": frame.edges().map(|(x, y)| json!([labels[x], labels[y]])).collect::<Vec<_>>(),
    })
}

fn examples(name: Option<&str>, o: &Options) -> Result<Outcome, OperatorError> {
    let cfg = RunConfig {
        seed: o.seed,
        budget: o.budget,
        samples: o.samples,
    };
    let reports = match name {
        Some(n) => vec![bundles::run(n, &cfg)?],
        None => bundles::run_all(&cfg).into_iter().collect::<Result<Vec<_>, _>>()?,
    };
    let total: usize = reports.iter().map(|r| r.assertions.len()).sum();
    let failed: Vec<String> = reports
        .iter()
        .flat_map(|r| r.failures().map(move |a| format!("{}: {}", r.name, a.label)))
        .collect();
    let passed = failed.is_empty();
    let mut out = Outcome::new(if passed { "passed" } else { "failed" }, passed);
    out.summary = format!("{}/{total} assertions passed", total - failed.len());
    out.certificates = failed;
    out.detail = serde_json::to_value(&reports).expect("serializable");
    Ok(out)
}
