use thiserror::Error;

/// Errors raised by constructors and operations of this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error(
        "cannot compose: domain of {outer} is {outer_dom}, codomain of {inner} is {inner_cod}"
    )]
    DimensionMismatch {
        inner: String,
        outer: String,
        inner_cod: usize,
        outer_dom: usize,
    },

    #[error("`{element}` is not an element of D_{eps}")]
    NotInDEpsilon { element: String, eps: String },

    #[error("malformed {what}: {reason}")]
    Malformed { what: &'static str, reason: String },

    #[error("unknown cell `{0}`")]
    UnknownCell(String),

    #[error("duplicate cell `{0}`")]
    DuplicateCell(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("cannot glue cells of different sorts: {0} and {1}")]
    IncompatibleGlue(String, String),

    #[error("closure violation: {cube} --{word}--> {face} is implied but missing")]
    Laxity {
        cube: String,
        word: String,
        face: String,
    },

    #[error("grading violation: {0}")]
    Grading(String),

    #[error("internal contract violated: {0}")]
    Contract(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn malformed(what: &'static str, reason: impl Into<String>) -> Error {
    Error::Malformed {
        what,
        reason: reason.into(),
    }
}
