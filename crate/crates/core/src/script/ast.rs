//! Syntax tree of a script and its canonical printed form.
//!
//! Printing then parsing gives back an equal tree. Positions are kept for
//! diagnostics only and never take part in equality.

use std::fmt;

use crate::algebra::Rat;

/// A 1-based source position. Every two positions compare equal.
#[derive(Clone, Copy, Debug, Default, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Pos) -> bool {
        true
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub pos: Pos,
}

impl Name {
    pub fn new(text: impl Into<String>) -> Self {
        Name {
            text: text.into(),
            pos: Pos::default(),
        }
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// One summand of an element literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    /// An atom label, or a declared name where the query expects one.
    Ident(Name),
    /// `0`, `1`, an arity or a rational parameter.
    Num(Rat),
    /// `{1,3}` or `co{0,2}`.
    Set { co: bool, items: Vec<u64> },
    /// `[s,t)`.
    Interval(Rat, Rat),
}

/// `term + term + …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elem {
    pub terms: Vec<Term>,
    pub pos: Pos,
}

impl Elem {
    /// The identifier when the literal is a single bare identifier.
    pub fn as_ident(&self) -> Option<&Name> {
        match self.terms.as_slice() {
            [Term::Ident(n)] => Some(n),
            _ => None,
        }
    }

    pub fn as_num(&self) -> Option<&Rat> {
        match self.terms.as_slice() {
            [Term::Num(q)] => Some(q),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CarrierSpec {
    Powerset { atoms: Vec<Name> },
    Fc,
    Intervals,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Param {
    pub key: Option<Name>,
    pub value: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorBody {
    Table(Vec<(Name, Elem)>),
    Builtin { name: Name, params: Vec<Param> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QueryKind {
    Check,
    Eval,
    Pc,
    Annihilators,
    Dense,
    Proper,
    Companion,
    Minpairs,
    Si,
    Kmpa,
    Cover,
    Wmia,
    Cf,
    Cm,
    Stone,
    Dot,
    Examples,
}

impl QueryKind {
    pub const ALL: [QueryKind; 17] = [
        QueryKind::Check,
        QueryKind::Eval,
        QueryKind::Pc,
        QueryKind::Annihilators,
        QueryKind::Dense,
        QueryKind::Proper,
        QueryKind::Companion,
        QueryKind::Minpairs,
        QueryKind::Si,
        QueryKind::Kmpa,
        QueryKind::Cover,
        QueryKind::Wmia,
        QueryKind::Cf,
        QueryKind::Cm,
        QueryKind::Stone,
        QueryKind::Dot,
        QueryKind::Examples,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            QueryKind::Check => "check",
            QueryKind::Eval => "eval",
            QueryKind::Pc => "pc",
            QueryKind::Annihilators => "annihilators",
            QueryKind::Dense => "dense",
            QueryKind::Proper => "proper",
            QueryKind::Companion => "companion",
            QueryKind::Minpairs => "minpairs",
            QueryKind::Si => "si",
            QueryKind::Kmpa => "kmpa",
            QueryKind::Cover => "cover",
            QueryKind::Wmia => "wmia",
            QueryKind::Cf => "cf",
            QueryKind::Cm => "cm",
            QueryKind::Stone => "stone",
            QueryKind::Dot => "dot",
            QueryKind::Examples => "examples",
        }
    }

    pub fn from_keyword(word: &str) -> Option<QueryKind> {
        QueryKind::ALL.into_iter().find(|k| k.keyword() == word)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    pub name: Name,
    pub value: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub kind: QueryKind,
    pub pos: Pos,
    pub args: Vec<Elem>,
    /// `expect DECISION`: the query passes iff its decision matches.
    pub expect: Option<Name>,
    pub flags: Vec<Flag>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Algebra {
        name: Name,
        spec: CarrierSpec,
    },
    Operator {
        name: Name,
        on: Name,
        body: OperatorBody,
    },
    Frame {
        name: Name,
        points: Vec<Name>,
        edges: Vec<(Name, Name)>,
    },
    Query(Query),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub stmts: Vec<Stmt>,
}

fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Ident(n) => write!(f, "{n}"),
            Term::Num(q) => write!(f, "{q}"),
            Term::Set { co, items } => {
                write!(f, "{}{{{}}}", if *co { "co" } else { "" }, join(items, ","))
            }
            Term::Interval(s, t) => write!(f, "[{s},{t})"),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.terms, "+"))
    }
}

impl fmt::Display for CarrierSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CarrierSpec::Powerset { atoms } => write!(f, "powerset(atoms:[{}])", join(atoms, ",")),
            CarrierSpec::Fc => f.write_str("fc"),
            CarrierSpec::Intervals => f.write_str("intervals"),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.key {
            Some(k) => write!(f, "{k}={}", self.value),
            None => write!(f, "{}", self.value),
        }
    }
}

impl fmt::Display for OperatorBody {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorBody::Table(rows) => {
                let rows: Vec<String> = rows.iter().map(|(a, v)| format!("{a} -> {v}")).collect();
                write!(f, "table{{{}}}", rows.join(", "))
            }
            OperatorBody::Builtin { name, params } if params.is_empty() => write!(f, "builtin({name})"),
            OperatorBody::Builtin { name, params } => write!(f, "builtin({name}({}))", join(params, ", ")),
        }
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.keyword())?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        if let Some(e) = &self.expect {
            write!(f, " expect {e}")?;
        }
        for flag in &self.flags {
            write!(f, " --{}", flag.name)?;
            if let Some(v) = flag.value {
                write!(f, " {v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Algebra { name, spec } => write!(f, "algebra {name} = {spec}"),
            Stmt::Operator { name, on, body } => write!(f, "operator {name} on {on} = {body}"),
            Stmt::Frame { name, points, edges } => {
                let edges: Vec<String> = edges.iter().map(|(x, y)| format!("{x}->{y}")).collect();
                write!(f, "frame {name} = {{points:[{}], edges:[{}]}}", join(points, ","), edges.join(","))
            }
            Stmt::Query(q) => write!(f, "{q}"),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
