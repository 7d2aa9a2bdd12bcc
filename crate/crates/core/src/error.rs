use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation at a pole, e.g. the Hurwitz zeta function at `s = 1`.
    #[error("pole at {0}")]
    Pole(String),

    /// A numeric scheme could not reach the requested accuracy.
    #[error("precision failure: achieved {achieved} of {requested} digits ({context})")]
    Precision { achieved: i64, requested: i64, context: String },

    /// An exact identity that must hold by theory did not. This signals a bug
    /// (for instance a wrong character table), never bad user input.
    #[error("internal consistency error: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
