use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A generator or basis name/id is not part of the signature, or two signatures disagree.
    #[error("signature error: {0}")]
    Signature(String),

    /// A monomial outside the domain of an operation (e.g. a manifold class passed to the coproduct).
    #[error("domain error: {0}")]
    Domain(String),

    /// An auxiliary table (σ*, Hurewicz, action, Samelson, B on the loop factor) lacks an entry.
    #[error("model incomplete: {0}")]
    ModelIncomplete(String),

    /// An operator that needs homogeneous input received a mixed-degree element.
    #[error("mixed degrees: {0}")]
    MixedDegree(String),

    /// Invalid presentation data.
    #[error("invalid model: {0}")]
    InvalidModel(String),

    /// Model file or expression failed to parse against the schema.
    #[error("schema error in `{field}`: {message}")]
    Schema { field: String, message: String },
}

impl Error {
    pub fn schema(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
