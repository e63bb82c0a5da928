use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("operands live on different posets")]
    MismatchedPoset,
    #[error("map is not order preserving: {0}")]
    NotOrderPreserving(String),
    #[error("incidence function is not in J(P) for this map: {0}")]
    NotInJ(String),
    #[error("poset has no bottom element")]
    MissingBottom,
    #[error("poset has no top element")]
    MissingTop,
    #[error("{what} exceeds cap of {limit}")]
    CapExceeded { what: String, limit: usize },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid type: {0}")]
    InvalidType(String),
    #[error("subobjects belong to different ambients")]
    MismatchedAmbient,
    #[error("{0} is not contained in {1}")]
    NotContained(String, String),
    #[error("({0}, {1}) is not a symmetric couple")]
    NotSymmetricCouple(String, String),
    #[error("count depends on the chosen representative: {0}")]
    RepresentativeDependent(String),
    #[error("no disjoint representatives of types {0} and {1}")]
    NoDisjointRepresentatives(String, String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cache entries disagree: {0}")]
    CacheConflict(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn cap(what: impl Into<String>, limit: usize) -> Self {
        Error::CapExceeded { what: what.into(), limit }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
