use thiserror::Error;

/// Errors raised by constructors and operations across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("index {index} out of range for carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("not a preorder: {0}")]
    NotPreorder(String),

    #[error("not a partial order: {0}")]
    NotPoset(String),

    #[error("not monotone: {0}")]
    NotMonotone(String),

    #[error("not an order bimodule: {0}")]
    NotBimodule(String),

    #[error("not an adjunction: left({a}) <= {b} is {lhs} but {a} <= right({b}) is {rhs}")]
    NotAdjunction {
        a: String,
        b: String,
        lhs: bool,
        rhs: bool,
    },

    #[error("square does not commute: {0}")]
    SquareDoesNotCommute(String),

    #[error("not a reflection: {0}")]
    NotReflection(String),

    #[error("not a coreflection: {0}")]
    NotCoreflection(String),

    #[error("invalid infomorphism: instance {instance}, type {ty}")]
    NotInfomorphism { instance: String, ty: String },

    #[error("not a concept lattice: {0}")]
    NotConceptLattice(String),

    #[error("size limit exceeded: {what} has size {size}, limit is {limit}")]
    SizeLimit {
        what: String,
        size: usize,
        limit: usize,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn mismatch(what: impl Into<String>) -> Self {
        Error::CarrierMismatch(what.into())
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
