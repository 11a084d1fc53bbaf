use thiserror::Error;

/// Errors raised by the library. The CLI maps them onto exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("defining polynomial is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("missing primitive {0}-th root of unity in the base field")]
    MissingRootOfUnity(u64),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("not a sublattice: {0}")]
    NotSublattice(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded {
        what: String,
        needed: u128,
        budget: u128,
    },
    #[error("invalid factor set: {0}")]
    InvalidFactorSet(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    /// True for errors caused by the caller's input rather than by a search
    /// budget or an internal inconsistency.
    pub fn is_input_contract(&self) -> bool {
        !matches!(
            self,
            Error::BudgetExceeded { .. } | Error::Verification(_) | Error::Overflow(_)
        )
    }

    pub(crate) fn budget(what: impl Into<String>, needed: u128, budget: u128) -> Self {
        Error::BudgetExceeded {
            what: what.into(),
            needed,
            budget,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
