use thiserror::Error;

/// Engine-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A number that does not decode to a well-formed closed term.
    #[error("malformed code")]
    MalformedCode,
    /// A template handed to `lam_build` had free variables beyond the one slot.
    #[error("open term: unexpected free variable {0}")]
    OpenTerm(u32),
    /// A machine output was expected to be a Cantor pair of a set entry but
    /// the computation got stuck before producing one.
    #[error("output is not an entry pair")]
    NotAPair,
    /// Condition numbers reserved for the bar operator are rejected wholesale.
    #[error("reserved condition code (bar operator)")]
    ReservedCondition,
    /// An operation that requires a finite enumeration certificate was handed
    /// a set without one.
    #[error("finite enumeration certificate required")]
    CertificateRequired,
    /// A translation that walks annotation trees was handed a raw code.
    #[error("constructor annotation required")]
    AnnotationRequired,
    /// Oracle table files must describe a total map.
    #[error("invalid oracle table: {0}")]
    InvalidOracle(String),
}

pub type Result<T> = std::result::Result<T, Error>;
