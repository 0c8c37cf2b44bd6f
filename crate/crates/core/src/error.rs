use thiserror::Error;

/// Failures of the ideal arithmetic, parsing and decomposition layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands belong to different ambient rings")]
    AmbientMismatch,
    #[error("invalid ambient ring: {0}")]
    InvalidAmbient(String),
    #[error("a monomial prime needs at least one variable")]
    EmptyPrime,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("exponent at byte {pos} exceeds 2^31")]
    ExponentTooLarge { pos: usize },
    #[error("expected a proper non-zero ideal, got {0}")]
    DegenerateIdeal(String),
    #[error("this operation needs {expected} variables, the ambient ring has {found}")]
    WrongArity { expected: usize, found: usize },
}

/// Failures of the filtration, construction and Stanley layers.
///
/// `NotCohenMacaulay` and `NotSequentiallyCm` are mathematical answers rather
/// than malfunctions; the command line tool maps them to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("associated prime {0} does not have height 2")]
    NotHeightTwoPure(String),
    #[error("expected between 1 and 6 height-2 primes, got {0}")]
    BadPrimeCount(usize),
    #[error("primary components do not match the configuration")]
    ConfigMismatch,
    #[error("S/I is not Cohen-Macaulay")]
    NotCohenMacaulay,
    #[error("S/I is not sequentially Cohen-Macaulay")]
    NotSequentiallyCm,
    #[error("no clean filtration of {target} over {base} found ({explored} states explored)")]
    SearchExhausted { base: String, target: String, explored: usize },
    #[error("construction produced an invalid filtration at step {step:?}: {detail}")]
    InternalVerificationFailure { step: Option<usize>, detail: String },
    #[error("filtration does not verify (first failing step {0:?})")]
    UnverifiedFiltration(Option<usize>),
    #[error("the split recursion found no clean filtration of {0}")]
    ConstructionFailed(String),
    #[error("the dimension-2 layer {0} has an associated prime of height other than 2")]
    ImpureDimensionTwoLayer(String),
    #[error("the principal filtration of the unit monomial is empty")]
    UnitPrincipal,
    #[error("{0} is not primary to the given prime")]
    NotPrimary(String),
    #[error("{base} is not contained in {target}")]
    NotNested { base: String, target: String },
}
