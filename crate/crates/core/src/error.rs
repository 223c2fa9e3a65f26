use thiserror::Error;

/// Errors raised by carrier construction and element manipulation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("carrier mismatch: expected {expected}, found {found}")]
    CarrierMismatch { expected: String, found: String },
    #[error("atom count {0} exceeds the cap of {cap}", cap = crate::algebra::MAX_ATOMS)]
    TooManyAtoms(usize),
    #[error("a powerset carrier needs at least one atom")]
    NoAtoms,
    #[error("duplicate atom label `{0}`")]
    DuplicateAtom(String),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("atomless carrier has no atoms")]
    Atomless,
    #[error("malformed interval [{start}, {end})")]
    MalformedInterval { start: String, end: String },
    #[error("endpoint {0} outside [0, 1]")]
    EndpointOutOfRange(String),
    #[error("operation needs a nonzero element")]
    EmptyElement,
    #[error("cannot parse element `{0}`")]
    BadElement(String),
    #[error("not a quadratic irrational: {0}")]
    BadIrrational(String),
    #[error("family is not descending at step {0}")]
    NotDescending(usize),
    #[error("family does not match its description at step {step}: {reason}")]
    BadFamily { step: usize, reason: String },
}

/// Errors raised by operator construction and the analyses built on top.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("not normal: f(0) = {value}")]
    NotNormal { value: String },
    #[error("not additive: f({x} + {y}) = {lhs} but f({x}) + f({y}) = {rhs}")]
    NotAdditive {
        x: String,
        y: String,
        lhs: String,
        rhs: String,
    },
    #[error("atom table has {found} entries for {expected} atoms")]
    TableSize { expected: usize, found: usize },
    #[error("table image {0:#x} has bits outside the carrier")]
    TableOutOfRange(u32),
    #[error("relativization needs a nonzero parameter")]
    DegenerateParameter,
    #[error("iteration count must be at least 1")]
    ZeroIteration,
    #[error("operators live on different carriers")]
    CarrierMismatch,
    #[error("{0}")]
    Unsupported(String),
    #[error("completeness not guaranteed on {0}; use the budgeted annihilator search")]
    IncompleteCarrier(String),
    #[error("{what} capped at {cap} atoms, got {n}")]
    AboveCap { what: &'static str, cap: usize, n: usize },
    #[error("not a unary discriminator: d({x}) = {value}")]
    NotDiscriminator { x: String, value: String },
    #[error("companion witness refused: z <= f(y) fails at y = {y}")]
    WitnessRefused { y: String },
    #[error("witness elements must be nonzero")]
    ZeroWitness,
    #[error("pair is not decomposing: f({x}) + g({x}) = {value}")]
    NotDecomposing { x: String, value: String },
    #[error("not a weak mixed pair: g({x}) = {g} is not below f({x}) = {f}")]
    NotWeakMixed { x: String, g: String, f: String },
    #[error("not a sufficiency operator at {0}")]
    NotSufficiency(String),
    #[error("invalid example parameters: {0}")]
    BadParameters(String),
}
