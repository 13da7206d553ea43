use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow: time values exceed the 63-bit range")]
    Overflow,

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("job {job} is assigned to shop {shop}, but only {m} shops exist")]
    ShopOutOfRange { job: usize, shop: usize, m: usize },

    #[error("schedule does not match instance: {0}")]
    ScheduleShape(String),

    #[error("enumeration needs {required} evaluations, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("{n} jobs is too many for exhaustive permutation search (max {max})")]
    TooManyJobs { n: usize, max: usize },

    #[error("canonical state violates the R-completion bound at position {position}: rho {rho} > {bound}")]
    RhoBound { position: usize, rho: u64, bound: u64 },

    #[error("instance has no jobs")]
    EmptyInstance,

    #[error("invalid epsilon {0}: numerator and denominator must be positive integers")]
    InvalidEpsilon(String),

    #[error("solver deadline exceeded")]
    Timeout,

    #[error("thread pool: {0}")]
    ThreadPool(String),
}
