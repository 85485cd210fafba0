use thiserror::Error;

/// Errors raised by the calculus engine and the bundle reader.
///
/// Inconsistent link or polar data is not an error: it is reported through
/// [`Diagnostic`](crate::Diagnostic) values. Errors are reserved for requests
/// that cannot be evaluated at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constructible functions or maps live on different geometries")]
    GeometryMismatch,

    #[error("unknown stratum `{0}`")]
    UnknownStratum(String),

    #[error("malformed geometry: {0}")]
    InvalidGeometry(String),

    #[error("closure order is not a partial order compatible with dimensions")]
    InvalidOrder,

    #[error("missing link entry for ({lower}, {upper})")]
    MissingLink { lower: String, upper: String },

    #[error("missing polar entry for ({lower}, {upper})")]
    MissingPolar { lower: String, upper: String },

    #[error("polar entry for ({lower}, {upper}) has length {found}, expected {expected}")]
    MalformedPolar {
        lower: String,
        upper: String,
        expected: usize,
        found: usize,
    },

    #[error("strata `{lower}` and `{upper}` are not strictly comparable")]
    NotComparable { lower: String, upper: String },

    #[error("depth {k} out of range at `{stratum}` (maximum {max})")]
    DepthOutOfRange { stratum: String, k: u32, max: u32 },

    #[error("support has codimension 0; embed the function first")]
    AutoEmbedRequired,

    #[error("integer overflow")]
    Overflow,

    #[error("map `{0}` carries no discriminant annotation")]
    MissingAnnotation(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("no {kind} named `{name}`")]
    NotFound { kind: &'static str, name: String },

    #[error("dangling reference to `{0}`")]
    DanglingReference(String),

    #[error("malformed simplicial model: {0}")]
    InvalidModel(String),

    #[error("image of simplex {0:?} is not a simplex")]
    NotSimplicial(Vec<String>),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
