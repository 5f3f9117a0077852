use thiserror::Error;

/// Errors shared by all engines.
///
/// The CLI maps [`Error::Hypothesis`] to exit status 2 and everything else
/// to exit status 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range arguments.
    #[error("usage error: {0}")]
    Usage(String),

    /// A precondition of a cited result is violated. `rule` names the result.
    #[error("hypothesis error ({rule}): {message}")]
    Hypothesis { rule: &'static str, message: String },

    /// The residue closed form does not apply (twist 0 or twist equal to degree).
    #[error("formula inapplicable: {0}")]
    FormulaInapplicable(String),

    /// Series with zero constant term.
    #[error("series is not invertible: constant term is zero")]
    NotInvertible,

    /// Zero matrix or zero polynomial where a nonzero one is required.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Lookup outside the classification tables.
    #[error("table error: {0}")]
    Table(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn hypothesis(rule: &'static str, msg: impl Into<String>) -> Self {
        Error::Hypothesis {
            rule,
            message: msg.into(),
        }
    }

    /// True for errors that report a violated hypothesis of a cited result.
    pub fn is_hypothesis(&self) -> bool {
        matches!(self, Error::Hypothesis { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
