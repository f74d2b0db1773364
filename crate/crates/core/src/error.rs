use thiserror::Error;

/// Errors raised by the category kernel and the constructions built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A table refers to an object or morphism index that does not exist.
    #[error("index out of range in {table}: {index}")]
    Index { table: &'static str, index: usize },

    #[error("{outer} and {inner} are not composable")]
    NotComposable { outer: String, inner: String },

    #[error("composite {outer} ∘ {inner} missing from composition table")]
    MissingComposite { outer: String, inner: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    /// A construction needs an object or morphism that is not part of a
    /// truncated presentation.
    #[error("outside the window: {0}")]
    OutOfWindow(String),

    /// A universal property the presentation claims does not hold.
    #[error("presentation defect: {0}")]
    Presentation(String),

    #[error("{0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
