use thiserror::Error;

/// Everything that can go wrong while building or querying a gap shift.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("query at {n} exceeds the enumeration bound {bound} of gap set `{name}`")]
    QueryBeyondBound { name: String, n: usize, bound: usize },

    #[error("substitution is not primitive (or its primitivity flag is unset)")]
    NotPrimitive,

    #[error("word `{0}` is not a factor of w")]
    NotAFactor(String),

    #[error("word `{0}` is not in the language of the shift")]
    NotInLanguage(String),

    #[error("enumeration of {requested} candidate words exceeds the budget of {budget}")]
    BudgetExceeded { requested: f64, budget: f64 },

    #[error("characteristic series has no finite upper bound at lambda = {0}")]
    DivergentAt(f64),

    #[error("certification stopped at depth {depth}: lambda in [{lambda_lo}, {lambda_hi}]")]
    DepthExhausted { lambda_lo: f64, lambda_hi: f64, depth: usize },

    #[error("operation requires {expected}")]
    WrongVariant { expected: &'static str },

    #[error("synchronization violated: `{u}0` and `0{v}` allowed but `{u}0{v}` is not")]
    SynchronizationViolation { u: String, v: String },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
