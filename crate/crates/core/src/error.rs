use thiserror::Error;

use crate::logic::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid partial order: {0}")]
    InvalidOrder(String),
    #[error("duplicate element id `{0}`")]
    DuplicateId(String),
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("{what} exceeds cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("unknown event `{0}`")]
    UnknownEvent(String),
    #[error("event `{0}` has no dependency alternatives")]
    NoAlternatives(String),
    #[error("dependency sets of `{event}` exploded past {cap} during completion")]
    Exploded { event: String, cap: usize },
    #[error("`{0}` is not an element of this lattice")]
    NotAnElement(String),
    #[error("lattice is not distributive")]
    NotDistributive,
    #[error("lattice is not in the image of rdp: {0}")]
    NotInImage(String),
    #[error("invalid version map: {0}")]
    InvalidVersionMap(String),
    #[error("ponucleus does not preserve joins: {0}")]
    NotJoinPreserving(String),
    #[error("map is not a nucleus: {0}")]
    InvalidNucleus(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("formula uses <> but no nucleus was supplied")]
    ModalWithoutNucleus,
    #[error("formula has no satisfying state")]
    Unsatisfiable,
    #[error("digest collision between `{0}` and `{1}`")]
    DigestCollision(String, String),
    #[error("lattice carries no trace labels")]
    MissingLabels,
    #[error("invalid objective: {0}")]
    InvalidObjective(String),
    #[error("DSC validation failed: {0}")]
    ValidationFailed(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
