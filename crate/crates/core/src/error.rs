use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("not an admissible Hilbert function: {0}")]
    NotAdmissible(String),
    #[error("invalid enumeration prefix: {0}")]
    InvalidPrefix(String),
    #[error("monomials live in different rings ({0} vs {1} variables)")]
    VariableMismatch(usize, usize),
    #[error("ideal is not stable")]
    NotStable,
    #[error("ideal is not Artinian")]
    NotArtinian,
    #[error("ideal is not Artinian; a degree cap is required")]
    NeedsCap,
    #[error("cannot cancel {count} at (i={i}, j={j})")]
    CannotCancel { i: usize, j: u32, count: u64 },
    #[error("malformed Betti diagram: {0}")]
    Malformed(String),
    #[error("diagram is not pure")]
    NotPure,
    #[error("numerically inconsistent Betti diagram: {0}")]
    InconsistentDiagram(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("internal consistency failure: {0}")]
    LogicFault(String),
}

impl Error {
    /// Stable upper-case tag for reports and CLI output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Overflow(_) => "OVERFLOW",
            Error::NotAdmissible(_) => "NOT_ADMISSIBLE",
            Error::InvalidPrefix(_) => "INVALID_PREFIX",
            Error::VariableMismatch(..) => "VARIABLE_MISMATCH",
            Error::NotStable => "NOT_STABLE",
            Error::NotArtinian => "NOT_ARTINIAN",
            Error::NeedsCap => "NEEDS_CAP",
            Error::CannotCancel { .. } => "CANNOT_CANCEL",
            Error::Malformed(_) => "MALFORMED",
            Error::NotPure => "NOT_PURE",
            Error::InconsistentDiagram(_) => "INCONSISTENT_DIAGRAM",
            Error::NotPrime(_) => "NOT_PRIME",
            Error::Parse { .. } => "PARSE_ERROR",
            Error::LogicFault(_) => "LOGIC_FAULT",
        }
    }
}
