use thiserror::Error;

use crate::base::ValidationReport;

/// Coarse classification of failures, shared by the CLI exit codes and the C ABI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input text.
    Parse,
    /// A base or model that fails its preconditions, or describes nothing.
    Invalid,
    /// An out-of-range argument to an arithmetic routine.
    Domain,
    /// Two independent computations disagree, or an asserted identity fails.
    Consistency,
    /// An exact integer left the representable range.
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("G(1,{ambient}) needs an ambient projective space of dimension at least 1")]
    AmbientTooSmall { ambient: u32 },

    #[error("class ({a},{b}) does not fit the 2x{width} box of G(1,{ambient})", width = .ambient.saturating_sub(1))]
    ClassOutsideBox { a: u32, b: u32, ambient: u32 },

    #[error("special class of codimension {codim} is out of range for G(1,{ambient}) (max {max})", max = .ambient.saturating_sub(1))]
    CodimOutOfRange { codim: u32, ambient: u32 },

    #[error(
        "codimensions sum to {actual}, but a top-degree product in G(1,{ambient}) needs {expected}"
    )]
    DimensionMismatch {
        ambient: u32,
        expected: u32,
        actual: u32,
    },

    #[error("cycles live in different Grassmannians (G(1,{left}) vs G(1,{right}))")]
    ContextMismatch { left: u32, right: u32 },

    #[error("subspace P^{dim} does not fit in P^{ambient}")]
    SubspaceTooLarge { dim: u32, ambient: u32 },

    #[error("exact integer overflow")]
    Overflow,

    #[error("invalid incidence base: {0}")]
    InvalidBase(ValidationReport),

    #[error("configuration is empty: {reason}")]
    Unrealizable { reason: String },

    #[error("index {index} is out of range for a base with {len} spaces")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error(
        "nonspecial assumption violated for {base}: degree {degree}, genus by degeneration {genus}, \
         speciality i = {speciality}"
    )]
    SpecialityViolated {
        base: String,
        degree: i64,
        genus: i64,
        speciality: i64,
    },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid ruled surface model: {0}")]
    InvalidModel(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse(_) => ErrorKind::Parse,
            Error::InvalidBase(_)
            | Error::Unrealizable { .. }
            | Error::IndexOutOfRange { .. }
            | Error::Precondition(_)
            | Error::InvalidModel(_) => ErrorKind::Invalid,
            Error::AmbientTooSmall { .. }
            | Error::ClassOutsideBox { .. }
            | Error::CodimOutOfRange { .. }
            | Error::DimensionMismatch { .. }
            | Error::ContextMismatch { .. }
            | Error::SubspaceTooLarge { .. } => ErrorKind::Domain,
            Error::SpecialityViolated { .. } | Error::Inconsistent(_) => ErrorKind::Consistency,
            Error::Overflow => ErrorKind::Overflow,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn to_i64(v: u128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow)
}
