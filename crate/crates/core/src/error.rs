use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("matrix is not positive definite (min eigenvalue {min_eigenvalue:.3e})")]
    NonPositiveMatrix { min_eigenvalue: f64 },

    #[error("state violates the uncertainty relation: smallest symplectic eigenvalue {mu_minus:.12} < 1")]
    NonPhysicalState { mu_minus: f64 },

    #[error("invariants admit no real standard form: I4/(ab) = {ratio:.6e} < 2|I3| = {bound:.6e}")]
    DegenerateInvariants { ratio: f64, bound: f64 },

    #[error("invalid standard form parameters: {0}")]
    InvalidStandardForm(String),

    #[error("state is not symmetric: |A - B| = {distance:.3e}")]
    NotSymmetric { distance: f64 },

    #[error("argument {0} outside the domain x > 0")]
    Domain(f64),

    #[error("difference is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("local blocks A and B are not Loewner comparable")]
    IncomparableBlocks,

    #[error("optimizer budget of {budget} evaluations exhausted (best value {best:.12})")]
    BudgetExhausted { budget: usize, best: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid scan specification: {0}")]
    InvalidScan(String),
}
