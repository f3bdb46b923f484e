use thiserror::Error;

/// Errors raised by the algebraic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("auxiliary dimension mismatch: {left} vs {right}")]
    AuxMismatch { left: usize, right: usize },
    #[error("letter {letter} is out of range for arity {arity}")]
    LetterOutOfRange { letter: String, arity: usize },
    #[error("operator needs arity at least {min}, found {found}")]
    ArityTooSmall { min: usize, found: usize },
    #[error("epsilon variables remain after coefficient extraction")]
    ResidualEpsilon,
    #[error("parameter `{0}` already occurs in the input")]
    ParamClash(String),
    #[error("parameter letters are not allowed here (found `{0}`)")]
    UnexpectedParam(String),
    #[error("input is not translation invariant; defect = {defect}")]
    NotTranslationInvariant { defect: String },
    #[error("G(R g) is not translation invariant; defect = {defect}")]
    InvarianceViolation { defect: String },
    #[error("input is not homogeneous")]
    NotHomogeneous,
    #[error("input has degree 0")]
    DegreeZero,
    #[error("input is not a Lie element")]
    NotLie,
    #[error("basis is for (n={basis_n}, d={basis_d}), input is (n={n}, d={d})")]
    BasisMismatch {
        basis_n: usize,
        basis_d: usize,
        n: usize,
        d: usize,
    },
    #[error("constant term precondition violated: {0}")]
    ConstantTerm(&'static str),
    #[error("unsupported operator `{0}`")]
    UnsupportedOperator(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("no matrix assigned to letter {0}")]
    UnassignedLetter(String),
    #[error("closed forms exist for orders 3 and 4 only, got {0}")]
    UnsupportedOrder(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
