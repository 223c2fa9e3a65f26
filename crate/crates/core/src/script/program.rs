//! Name resolution and validation: a parsed script becomes a list of
//! executable steps over concrete carriers and operators.

use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive, Zero};

use super::ast::{CarrierSpec, Elem, Name, OperatorBody, Param, Pos, Query, QueryKind, Script, Stmt, Term};
use super::{Diagnostic, DiagnosticKind, ExecConfig};
use crate::algebra::{BooleanAlgebra, FcSet, FiniteCofinite, IntervalAlgebra, IntervalSet, Powerset, Rat, Subset};
use crate::bundles::{self, exdensepc, exfc, exfree, exnotdense, exuf, jon2};
use crate::duality::Frame;
use crate::error::OperatorError;
use crate::operator::{Axiom, FiniteOp, RuleOp};

#[derive(Clone, Debug)]
pub enum Carrier {
    Powerset(Powerset),
    Fc,
    Intervals,
}

impl Carrier {
    fn kind(&self) -> &'static str {
        match self {
            Carrier::Powerset(_) => "powerset",
            Carrier::Fc => "fc",
            Carrier::Intervals => "intervals",
        }
    }
}

/// An element of one of the three carriers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    P(Subset),
    F(FcSet),
    I(IntervalSet),
}

#[derive(Clone, Debug)]
pub enum Operator {
    Finite(FiniteOp),
    Fc(RuleOp<FiniteCofinite>),
    Int(RuleOp<IntervalAlgebra>),
}

/// A resolved operator together with the algebra it lives on.
#[derive(Clone, Debug)]
pub struct OpRef {
    pub name: String,
    pub algebra: String,
    pub op: Operator,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomArg {
    Axiom(Axiom),
    Closure,
}

#[derive(Clone, Debug)]
pub enum DotTarget {
    Frame(String, Frame),
    Op(OpRef),
}

#[derive(Clone, Debug)]
pub enum Action {
    Check(OpRef, AxiomArg),
    Eval(OpRef, Value),
    Pc(OpRef),
    Annihilators(OpRef),
    Dense(OpRef),
    Proper(OpRef),
    Companion(OpRef, Value, Value),
    Minpairs(Powerset),
    Si(OpRef),
    Kmpa(OpRef, OpRef),
    Cover(OpRef, OpRef),
    Wmia(OpRef, OpRef),
    Cf(OpRef),
    Cm(String, Frame),
    Stone(OpRef),
    Dot(DotTarget),
    ExamplesList,
    /// `None` runs every bundle.
    ExamplesRun(Option<String>),
}

/// Per-query seed, budget and sample count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub budget: usize,
    pub samples: usize,
}

#[derive(Clone, Debug)]
pub struct Step {
    /// The query in canonical form.
    pub text: String,
    pub line: usize,
    /// Declaration of the carrier the query runs on.
    pub carrier: Option<String>,
    pub expect: Option<String>,
    pub opts: Options,
    pub action: Action,
}

#[derive(Clone, Debug, Default)]
pub struct Program {
    pub steps: Vec<Step>,
}

struct Algebra {
    decl: String,
    carrier: Carrier,
}

struct Scope<'c> {
    cfg: &'c ExecConfig,
    algebras: BTreeMap<String, Algebra>,
    last_algebra: Option<String>,
    operators: BTreeMap<String, OpRef>,
    frames: BTreeMap<String, Frame>,
}

type Checked<T> = Result<T, Diagnostic>;

fn diag<T>(kind: DiagnosticKind, pos: Pos, message: impl Into<String>) -> Checked<T> {
    Err(Diagnostic::new(kind, pos, message))
}

fn invalid(pos: Pos) -> impl Fn(OperatorError) -> Diagnostic {
    move |e| Diagnostic::new(DiagnosticKind::Invalid, pos, e.to_string())
}

pub fn validate(script: &Script, cfg: &ExecConfig) -> Checked<Program> {
    let mut scope = Scope {
        cfg,
        algebras: BTreeMap::new(),
        last_algebra: None,
        operators: BTreeMap::new(),
        frames: BTreeMap::new(),
    };
    let mut program = Program::default();
    for stmt in &script.stmts {
        match stmt {
            Stmt::Algebra { name, spec } => scope.algebra(name, spec)?,
            Stmt::Operator { name, on, body } => scope.operator(name, on, body)?,
            Stmt::Frame { name, points, edges } => scope.frame(name, points, edges)?,
            Stmt::Query(q) => program.steps.push(scope.query(q)?),
        }
    }
    Ok(program)
}

fn unique(names: &[Name], what: &str) -> Checked<()> {
    for (i, n) in names.iter().enumerate() {
        if names[..i].iter().any(|m| m.text == n.text) {
            return diag(DiagnosticKind::Duplicate, n.pos, format!("duplicate {what} `{n}`"));
        }
    }
    Ok(())
}

fn element(carrier: &Carrier, elem: &Elem) -> Checked<Value> {
    let mut acc = match carrier {
        Carrier::Powerset(_) => Value::P(Subset::EMPTY),
        Carrier::Fc => Value::F(FcSet::empty()),
        Carrier::Intervals => Value::I(IntervalSet::empty()),
    };
    for term in &elem.terms {
        let pos = match term {
            Term::Ident(n) => n.pos,
            _ => elem.pos,
        };
        let mismatch = |what: &str| {
            diag(
                DiagnosticKind::CarrierMismatch,
                pos,
                format!("{what} is not an element of a {} carrier", carrier.kind()),
            )
        };
        let value = match (term, carrier) {
            (Term::Num(q), _) if q.is_zero() || q.is_one() => {
                let top = q.is_one();
                match carrier {
                    Carrier::Powerset(p) => Value::P(if top { p.full() } else { Subset::EMPTY }),
                    Carrier::Fc => Value::F(if top { FcSet::omega() } else { FcSet::empty() }),
                    Carrier::Intervals => Value::I(if top { IntervalSet::unit() } else { IntervalSet::empty() }),
                }
            }
            (Term::Num(q), _) => {
                return diag(DiagnosticKind::Invalid, pos, format!("`{q}` is not an element; only 0 and 1 are numeric"))
            }
            (Term::Ident(n), Carrier::Powerset(p)) => match p.atom_index(&n.text) {
                Ok(i) => Value::P(Subset::atom(i)),
                Err(_) => return diag(DiagnosticKind::UnknownName, n.pos, format!("unknown atom `{n}`")),
            },
            (Term::Ident(n), _) => return mismatch(&format!("the label `{n}`")),
            (Term::Set { co, items }, Carrier::Fc) => {
                let items = items.iter().copied();
                Value::F(if *co { FcSet::cofinite(items) } else { FcSet::finite(items) })
            }
            (Term::Set { .. }, _) => return mismatch("a set of naturals"),
            (Term::Interval(s, t), Carrier::Intervals) => match IntervalSet::interval(s.clone(), t.clone()) {
                Ok(x) => Value::I(x),
                Err(e) => return diag(DiagnosticKind::Invalid, pos, e.to_string()),
            },
            (Term::Interval(..), _) => return mismatch("an interval"),
        };
        acc = match (acc, value) {
            (Value::P(a), Value::P(b)) => Value::P(a.union(b)),
            (Value::F(a), Value::F(b)) => Value::F(a.union(&b)),
            (Value::I(a), Value::I(b)) => Value::I(a.union(&b)),
            _ => unreachable!("terms are resolved on one carrier"),
        };
    }
    Ok(acc)
}

/// Binds positional and keyword parameters to `names`, in order.
fn bind<'p>(builtin: &Name, params: &'p [Param], names: &[&str]) -> Checked<Vec<Option<&'p Elem>>> {
    if params.len() > names.len() {
        return diag(
            DiagnosticKind::Arity,
            builtin.pos,
            format!("`{builtin}` takes at most {} parameters, got {}", names.len(), params.len()),
        );
    }
    let mut out = vec![None; names.len()];
    for (i, p) in params.iter().enumerate() {
        let slot = match &p.key {
            None => i,
            Some(k) => match names.iter().position(|n| *n == k.text) {
                Some(j) => j,
                None => {
                    return diag(
                        DiagnosticKind::UnknownName,
                        k.pos,
                        format!("`{builtin}` has no parameter `{k}`"),
                    )
                }
            },
        };
        if out[slot].is_some() {
            return diag(DiagnosticKind::Duplicate, p.value.pos, format!("parameter `{}` given twice", names[slot]));
        }
        out[slot] = Some(&p.value);
    }
    Ok(out)
}

const GENERIC_BUILTINS: [&str; 4] = ["discriminator", "zero", "identity", "relativized"];

fn builtin(carrier: &Carrier, name: &Name, params: &[Param]) -> Checked<Operator> {
    let pos = name.pos;
    let word = name.text.as_str();
    let wrong_carrier = |needs: &str| {
        diag(
            DiagnosticKind::CarrierMismatch,
            pos,
            format!("builtin `{word}` needs a {needs} carrier, not {}", carrier.kind()),
        )
    };
    let interval = |e: Option<&Elem>| -> Checked<Option<IntervalSet>> {
        match e {
            None => Ok(None),
            Some(e) => match element(&Carrier::Intervals, e)? {
                Value::I(x) => Ok(Some(x)),
                _ => unreachable!("interval carrier"),
            },
        }
    };
    if GENERIC_BUILTINS.contains(&word) {
        let names: &[&str] = if word == "relativized" { &["x"] } else { &[] };
        let bound = bind(name, params, names)?;
        let x = match bound.first() {
            Some(None) => {
                return diag(DiagnosticKind::Arity, pos, "`relativized` needs its parameter x")
            }
            Some(Some(e)) => Some(element(carrier, e)?),
            None => None,
        };
        return Ok(match (carrier, x) {
            (Carrier::Powerset(p), Some(Value::P(x))) => {
                Operator::Finite(FiniteOp::relativized(p, x).map_err(invalid(pos))?)
            }
            (Carrier::Fc, Some(Value::F(x))) => {
                Operator::Fc(RuleOp::relativized(&FiniteCofinite, x).map_err(invalid(pos))?)
            }
            (Carrier::Intervals, Some(Value::I(x))) => {
                Operator::Int(RuleOp::relativized(&IntervalAlgebra, x).map_err(invalid(pos))?)
            }
            (_, Some(_)) => unreachable!("element resolved on the carrier"),
            (Carrier::Powerset(p), None) => Operator::Finite(match word {
                "discriminator" => FiniteOp::discriminator(p),
                "zero" => FiniteOp::zero(p),
                _ => FiniteOp::identity(p),
            }),
            (Carrier::Fc, None) => Operator::Fc(generic_rule(&FiniteCofinite, word)),
            (Carrier::Intervals, None) => Operator::Int(generic_rule(&IntervalAlgebra, word)),
        });
    }
    match word {
        "jon2" | "exfc" => {
            bind(name, params, &[])?;
            if !matches!(carrier, Carrier::Fc) {
                return wrong_carrier("fc");
            }
            Ok(Operator::Fc(if word == "jon2" { jon2::f() } else { exfc::f() }))
        }
        "exfree" | "exuf" | "exnotdense" | "exdensepc" => {
            if !matches!(carrier, Carrier::Intervals) {
                return wrong_carrier("intervals");
            }
            let op = match word {
                "exfree" => {
                    bind(name, params, &[])?;
                    exfree::f()
                }
                "exuf" => {
                    let bound = bind(name, params, &["avoid"])?;
                    let choice = match bound[0] {
                        None => exuf::IdealChoice::default(),
                        Some(e) => match e.as_num() {
                            Some(q) => exuf::IdealChoice::AvoidPoint(q.clone()),
                            None => return diag(DiagnosticKind::Invalid, e.pos, "`avoid` takes a rational"),
                        },
                    };
                    exuf::f(&choice).map_err(invalid(pos))?
                }
                "exnotdense" => {
                    let bound = bind(name, params, &["a"])?;
                    let a = interval(bound[0])?.unwrap_or_else(exnotdense::default_a);
                    exnotdense::f(&a).map_err(invalid(pos))?
                }
                _ => {
                    let bound = bind(name, params, &["a", "b", "c"])?;
                    let parts = (interval(bound[0])?, interval(bound[1])?, interval(bound[2])?);
                    let (a, b, c) = match parts {
                        (Some(a), Some(b), Some(c)) => (a, b, c),
                        (None, None, None) => exdensepc::default_parts(),
                        _ => return diag(DiagnosticKind::Arity, pos, "`exdensepc` takes all of a, b, c or none"),
                    };
                    exdensepc::f(&a, &b, &c).map_err(invalid(pos))?
                }
            };
            Ok(Operator::Int(op))
        }
        _ => diag(DiagnosticKind::UnknownName, pos, format!("unknown builtin `{word}`")),
    }
}

fn generic_rule<A: BooleanAlgebra + 'static>(alg: &A, word: &str) -> RuleOp<A> {
    match word {
        "discriminator" => RuleOp::discriminator(alg),
        "zero" => RuleOp::zero(alg),
        _ => RuleOp::identity(alg),
    }
}

/// Decisions a query may report; `expect` must name one of them.
pub fn decisions(kind: QueryKind) -> &'static [&'static str] {
    match kind {
        QueryKind::Check | QueryKind::Dense | QueryKind::Kmpa | QueryKind::Stone => &["holds", "fails"],
        QueryKind::Eval => &["value"],
        QueryKind::Pc => &["computed", "found", "unknown"],
        QueryKind::Proper => &["proper_exists", "none_exists", "unknown"],
        QueryKind::Companion => &["constructed", "refused"],
        QueryKind::Si => &["si", "not_si"],
        QueryKind::Cover => &["agrees", "disagrees"],
        QueryKind::Wmia => &["translated", "not_decomposing"],
        QueryKind::Examples => &["passed", "failed", "listed"],
        QueryKind::Annihilators | QueryKind::Minpairs | QueryKind::Cf | QueryKind::Cm | QueryKind::Dot => &["computed"],
    }
}

impl Scope<'_> {
    fn algebra(&mut self, name: &Name, spec: &CarrierSpec) -> Checked<()> {
        if self.algebras.contains_key(&name.text) {
            return diag(DiagnosticKind::Duplicate, name.pos, format!("algebra `{name}` declared twice"));
        }
        let carrier = match spec {
            CarrierSpec::Powerset { atoms } => {
                unique(atoms, "atom")?;
                if atoms.len() > self.cfg.max_atoms {
                    return diag(
                        DiagnosticKind::Invalid,
                        name.pos,
                        format!("{} atoms exceed the limit of {}", atoms.len(), self.cfg.max_atoms),
                    );
                }
                let labels = atoms.iter().map(|a| a.text.clone()).collect();
                Carrier::Powerset(
                    Powerset::with_labels(labels)
                        .map_err(|e| Diagnostic::new(DiagnosticKind::Invalid, name.pos, e.to_string()))?,
                )
            }
            CarrierSpec::Fc => Carrier::Fc,
            CarrierSpec::Intervals => Carrier::Intervals,
        };
        self.algebras.insert(
            name.text.clone(),
            Algebra {
                decl: format!("{name} = {spec}"),
                carrier,
            },
        );
        self.last_algebra = Some(name.text.clone());
        Ok(())
    }

    fn lookup_algebra(&self, name: &Name) -> Checked<&Algebra> {
        match self.algebras.get(&name.text) {
            Some(a) => Ok(a),
            None => diag(DiagnosticKind::UnknownName, name.pos, format!("unknown algebra `{name}`")),
        }
    }

    fn operator(&mut self, name: &Name, on: &Name, body: &OperatorBody) -> Checked<()> {
        if self.operators.contains_key(&name.text) {
            return diag(DiagnosticKind::Duplicate, name.pos, format!("operator `{name}` declared twice"));
        }
        let alg = self.lookup_algebra(on)?;
        let op = match body {
            OperatorBody::Table(rows) => {
                let Carrier::Powerset(p) = &alg.carrier else {
                    return diag(
                        DiagnosticKind::CarrierMismatch,
                        on.pos,
                        format!("atom tables need a powerset carrier, `{on}` is {}", alg.carrier.kind()),
                    );
                };
                unique(&rows.iter().map(|(a, _)| a.clone()).collect::<Vec<_>>(), "table row")?;
                let mut table = vec![Subset::EMPTY; p.atom_count()];
                for (atom, value) in rows {
                    let i = p
                        .atom_index(&atom.text)
                        .map_err(|_| Diagnostic::new(DiagnosticKind::UnknownName, atom.pos, format!("unknown atom `{atom}`")))?;
                    let Value::P(v) = element(&alg.carrier, value)? else {
                        unreachable!("powerset element")
                    };
                    table[i] = v;
                }
                Operator::Finite(FiniteOp::new(p, table).map_err(invalid(name.pos))?)
            }
            OperatorBody::Builtin { name: b, params } => builtin(&alg.carrier, b, params)?,
        };
        self.operators.insert(
            name.text.clone(),
            OpRef {
                name: name.text.clone(),
                algebra: on.text.clone(),
                op,
            },
        );
        Ok(())
    }

    fn frame(&mut self, name: &Name, points: &[Name], edges: &[(Name, Name)]) -> Checked<()> {
        if self.frames.contains_key(&name.text) {
            return diag(DiagnosticKind::Duplicate, name.pos, format!("frame `{name}` declared twice"));
        }
        unique(points, "point")?;
        for (x, y) in edges {
            for p in [x, y] {
                if !points.iter().any(|q| q.text == p.text) {
                    return diag(DiagnosticKind::UnknownName, p.pos, format!("unknown point `{p}`"));
                }
            }
        }
        let labels = points.iter().map(|p| p.text.clone()).collect();
        let edges: Vec<(String, String)> = edges.iter().map(|(x, y)| (x.text.clone(), y.text.clone())).collect();
        let frame = Frame::with_labelled_edges(labels, &edges)
            .map_err(|e| Diagnostic::new(DiagnosticKind::Invalid, name.pos, e.to_string()))?;
        self.frames.insert(name.text.clone(), frame);
        Ok(())
    }

    /// A declared operator, or a parameterless builtin on the most recently
    /// declared algebra.
    fn lookup_op(&self, arg: &Elem) -> Checked<OpRef> {
        let Some(name) = arg.as_ident() else {
            return diag(DiagnosticKind::Invalid, arg.pos, format!("expected an operator name, found `{arg}`"));
        };
        if let Some(op) = self.operators.get(&name.text) {
            return Ok(op.clone());
        }
        let known = GENERIC_BUILTINS.contains(&name.text.as_str())
            || ["jon2", "exfc", "exfree", "exuf", "exnotdense", "exdensepc"].contains(&name.text.as_str());
        match (&self.last_algebra, known) {
            (Some(alg), true) => {
                let carrier = &self.algebras[alg].carrier;
                Ok(OpRef {
                    name: name.text.clone(),
                    algebra: alg.clone(),
                    op: builtin(carrier, name, &[])?,
                })
            }
            (None, true) => diag(
                DiagnosticKind::UnknownName,
                name.pos,
                format!("builtin `{name}` used before any algebra is declared"),
            ),
            _ => diag(DiagnosticKind::UnknownName, name.pos, format!("unknown operator `{name}`")),
        }
    }

    fn lookup_frame(&self, arg: &Elem) -> Checked<(String, Frame)> {
        match arg.as_ident() {
            Some(n) => match self.frames.get(&n.text) {
                Some(f) => Ok((n.text.clone(), f.clone())),
                None => diag(DiagnosticKind::UnknownName, n.pos, format!("unknown frame `{n}`")),
            },
            None => diag(DiagnosticKind::Invalid, arg.pos, format!("expected a frame name, found `{arg}`")),
        }
    }

    fn carrier_of(&self, op: &OpRef) -> &Carrier {
        &self.algebras[&op.algebra].carrier
    }

    fn decl_of(&self, op: &OpRef) -> String {
        self.algebras[&op.algebra].decl.clone()
    }

    fn finite_only(&self, q: &Query, op: &OpRef) -> Checked<()> {
        match self.carrier_of(op) {
            Carrier::Powerset(_) => Ok(()),
            other => diag(
                DiagnosticKind::CarrierMismatch,
                q.args[0].pos,
                format!("`{}` needs a finite powerset carrier, `{}` is on {}", q.kind.keyword(), op.name, other.kind()),
            ),
        }
    }

    fn same_carrier(&self, q: &Query, f: &OpRef, g: &OpRef) -> Checked<()> {
        if f.algebra != g.algebra {
            return diag(
                DiagnosticKind::CarrierMismatch,
                q.args[1].pos,
                format!("`{}` lives on `{}` but `{}` lives on `{}`", f.name, f.algebra, g.name, g.algebra),
            );
        }
        Ok(())
    }

    fn arity(&self, q: &Query, allowed: &[usize]) -> Checked<()> {
        if allowed.contains(&q.args.len()) {
            return Ok(());
        }
        let want = allowed.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" or ");
        diag(
            DiagnosticKind::Arity,
            q.pos,
            format!("`{}` takes {want} arguments, got {}", q.kind.keyword(), q.args.len()),
        )
    }

    fn options(&self, q: &Query) -> Checked<(Options, bool)> {
        let mut opts = Options {
            seed: self.cfg.seed,
            budget: self.cfg.budget,
            samples: self.cfg.samples,
        };
        let mut all = false;
        for flag in &q.flags {
            let need = |v: Option<u64>| match v {
                Some(v) => Ok(v),
                None => diag(DiagnosticKind::Arity, flag.name.pos, format!("`--{}` needs a value", flag.name)),
            };
            match flag.name.text.as_str() {
                "seed" => opts.seed = need(flag.value)?,
                "budget" => opts.budget = need(flag.value)? as usize,
                "samples" => opts.samples = need(flag.value)? as usize,
                "all" if q.kind == QueryKind::Examples && flag.value.is_none() => all = true,
                other => {
                    return diag(
                        DiagnosticKind::Invalid,
                        flag.name.pos,
                        format!("flag `--{other}` is not accepted by `{}`", q.kind.keyword()),
                    )
                }
            }
        }
        Ok((opts, all))
    }

    fn query(&self, q: &Query) -> Checked<Step> {
        let (opts, all) = self.options(q)?;
        if let Some(e) = &q.expect {
            let allowed = decisions(q.kind);
            if !allowed.contains(&e.text.as_str()) {
                return diag(
                    DiagnosticKind::Invalid,
                    e.pos,
                    format!("`{}` never reports `{e}`; expected one of {}", q.kind.keyword(), allowed.join(", ")),
                );
            }
        }
        let mut carrier = None;
        let action = match q.kind {
            QueryKind::Check => {
                self.arity(q, &[2, 3])?;
                let op = self.lookup_op(&q.args[0])?;
                let axiom = axiom(q)?;
                carrier = Some(self.decl_of(&op));
                Action::Check(op, axiom)
            }
            QueryKind::Eval => {
                self.arity(q, &[2])?;
                let op = self.lookup_op(&q.args[0])?;
                let x = element(self.carrier_of(&op), &q.args[1])?;
                carrier = Some(self.decl_of(&op));
                Action::Eval(op, x)
            }
            QueryKind::Companion => {
                self.arity(q, &[3])?;
                let op = self.lookup_op(&q.args[0])?;
                let x = element(self.carrier_of(&op), &q.args[1])?;
                let z = element(self.carrier_of(&op), &q.args[2])?;
                carrier = Some(self.decl_of(&op));
                Action::Companion(op, x, z)
            }
            QueryKind::Pc
            | QueryKind::Proper
            | QueryKind::Annihilators
            | QueryKind::Dense
            | QueryKind::Si
            | QueryKind::Cf
            | QueryKind::Stone => {
                self.arity(q, &[1])?;
                let op = self.lookup_op(&q.args[0])?;
                if !matches!(q.kind, QueryKind::Pc | QueryKind::Proper) {
                    self.finite_only(q, &op)?;
                }
                carrier = Some(self.decl_of(&op));
                match q.kind {
                    QueryKind::Pc => Action::Pc(op),
                    QueryKind::Proper => Action::Proper(op),
                    QueryKind::Annihilators => Action::Annihilators(op),
                    QueryKind::Dense => Action::Dense(op),
                    QueryKind::Si => Action::Si(op),
                    QueryKind::Cf => Action::Cf(op),
                    _ => Action::Stone(op),
                }
            }
            QueryKind::Kmpa | QueryKind::Cover | QueryKind::Wmia => {
                self.arity(q, &[2])?;
                let f = self.lookup_op(&q.args[0])?;
                let g = self.lookup_op(&q.args[1])?;
                self.same_carrier(q, &f, &g)?;
                if q.kind == QueryKind::Cover {
                    self.finite_only(q, &f)?;
                }
                carrier = Some(self.decl_of(&f));
                match q.kind {
                    QueryKind::Kmpa => Action::Kmpa(f, g),
                    QueryKind::Cover => Action::Cover(f, g),
                    _ => Action::Wmia(f, g),
                }
            }
            QueryKind::Minpairs => {
                self.arity(q, &[1])?;
                let Some(n) = q.args[0].as_ident() else {
                    return diag(DiagnosticKind::Invalid, q.args[0].pos, "expected an algebra name");
                };
                let alg = self.lookup_algebra(n)?;
                let Carrier::Powerset(p) = &alg.carrier else {
                    return diag(DiagnosticKind::CarrierMismatch, n.pos, "`minpairs` needs a finite powerset carrier");
                };
                carrier = Some(alg.decl.clone());
                Action::Minpairs(p.clone())
            }
            QueryKind::Cm => {
                self.arity(q, &[1])?;
                let (name, frame) = self.lookup_frame(&q.args[0])?;
                Action::Cm(name, frame)
            }
            QueryKind::Dot => {
                self.arity(q, &[1])?;
                let target = match q.args[0].as_ident() {
                    Some(n) if self.frames.contains_key(&n.text) => {
                        DotTarget::Frame(n.text.clone(), self.frames[&n.text].clone())
                    }
                    _ => {
                        let op = self.lookup_op(&q.args[0])?;
                        if matches!(self.carrier_of(&op), Carrier::Intervals) {
                            return diag(
                                DiagnosticKind::CarrierMismatch,
                                q.args[0].pos,
                                "`dot` draws frames of powerset or fc operators",
                            );
                        }
                        carrier = Some(self.decl_of(&op));
                        DotTarget::Op(op)
                    }
                };
                Action::Dot(target)
            }
            QueryKind::Examples => examples(q, all)?,
        };
        Ok(Step {
            text: q.to_string(),
            line: q.pos.line,
            carrier,
            expect: q.expect.as_ref().map(|e| e.text.clone()),
            opts,
            action,
        })
    }
}

fn axiom(q: &Query) -> Checked<AxiomArg> {
    let arg = &q.args[1];
    let word = match (arg.as_ident(), arg.as_num()) {
        (Some(n), _) => n.text.clone(),
        (None, Some(k)) => k.to_string(),
        _ => String::new(),
    };
    let expect_len = |n: usize| -> Checked<()> {
        if q.args.len() != n {
            return diag(DiagnosticKind::Arity, q.pos, format!("`check … {word}` takes {n} arguments"));
        }
        Ok(())
    };
    let simple = match word.as_str() {
        "K" => Some(AxiomArg::Axiom(Axiom::K)),
        "T" => Some(AxiomArg::Axiom(Axiom::T)),
        "4" => Some(AxiomArg::Axiom(Axiom::Four)),
        "B" => Some(AxiomArg::Axiom(Axiom::B)),
        "closure" => Some(AxiomArg::Closure),
        _ => None,
    };
    if let Some(a) = simple {
        expect_len(2)?;
        return Ok(a);
    }
    if word == "ntrans" {
        expect_len(3)?;
        let n = q.args[2].as_num().filter(|n| n.is_integer() && **n >= Rat::one()).and_then(|n| n.to_integer().to_u32());
        return match n {
            Some(n) => Ok(AxiomArg::Axiom(Axiom::NTransitive(n))),
            None => diag(DiagnosticKind::Invalid, q.args[2].pos, "`ntrans` needs a positive integer"),
        };
    }
    diag(
        DiagnosticKind::Invalid,
        arg.pos,
        format!("unknown axiom `{arg}`; expected K, T, 4, B, closure or ntrans N"),
    )
}

fn examples(q: &Query, all: bool) -> Checked<Action> {
    let words: Vec<Option<&Name>> = q.args.iter().map(Elem::as_ident).collect();
    match (words.as_slice(), all) {
        ([Some(w)], false) if w.text == "list" => Ok(Action::ExamplesList),
        ([Some(w)], true) if w.text == "run" => Ok(Action::ExamplesRun(None)),
        ([Some(w), Some(name)], false) if w.text == "run" => {
            if !bundles::NAMES.contains(&name.text.as_str()) {
                return diag(
                    DiagnosticKind::UnknownName,
                    name.pos,
                    format!("unknown example `{name}`; known: {}", bundles::NAMES.join(", ")),
                );
            }
            Ok(Action::ExamplesRun(Some(name.text.clone())))
        }
        _ => diag(
            DiagnosticKind::Arity,
            q.pos,
            "expected `examples list`, `examples run NAME` or `examples run --all`",
        ),
    }
}
