use thiserror::Error;

/// Errors returned by library operations.
///
/// Every variant maps onto one of two machine-readable codes: `input_error`
/// for malformed or out-of-contract arguments, `resource_error` for guarded
/// brute-force routines whose search space exceeds the configured budget.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol {symbol} is not part of the alphabet")]
    UnknownSymbol { symbol: u32 },
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("invalid automaton: {0}")]
    InvalidDfa(String),
    #[error("invalid gap constraint: {0}")]
    InvalidConstraint(String),
    #[error("expected {expected} gap constraints, got {actual}")]
    ArityMismatch { expected: usize, actual: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{what} needs {required} steps, over the budget of {budget}")]
    BudgetExceeded {
        what: &'static str,
        required: u128,
        budget: u64,
    },
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::BudgetExceeded { .. } => "resource_error",
            _ => "input_error",
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }

    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Checks a brute-force search size against a budget.
pub(crate) fn check_budget(what: &'static str, required: u128, budget: u64) -> Result<()> {
    if required > budget as u128 {
        return Err(Error::BudgetExceeded {
            what,
            required,
            budget,
        });
    }
    Ok(())
}

/// `base^exp` saturating at `u128::MAX`.
pub(crate) fn saturating_pow(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
