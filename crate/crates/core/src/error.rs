use thiserror::Error;

/// Failure modes shared by every operation in the crate.
///
/// The variants fall into two families: caller mistakes (`Domain`,
/// `Validation`, `UnsupportedDimension`) and broken internal invariants
/// (`Consistency`). The CLI maps the first family to exit status 1 and the
/// second to exit status 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    #[error("not a polynomial: {0}")]
    NotAPolynomial(String),

    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("unbounded page: {0}")]
    UnboundedPage(String),

    #[error("undetermined by this method: {0}")]
    Undetermined(String),

    #[error("mean Euler characteristic undefined: {0}")]
    MecUndefined(String),
}

impl Error {
    /// True for errors that signal a bug or an inconsistent formula rather
    /// than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Consistency(_) | Error::NotAPolynomial(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
