use crate::decomposition::EntanglementClass;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("amplitude vector has (near) zero norm {0:e}")]
    ZeroVector(f64),

    #[error("local vectors are parallel (|overlap| = {0})")]
    ParallelVectors(f64),

    #[error("range quadratic of rho_BC vanishes identically although all local ranks are 2")]
    DegenerateQuadratic,

    #[error("state is in class {0}, not GHZ class")]
    NotGhzClass(EntanglementClass),

    #[error("product vectors nearly parallel (sin angle = {0:e}); state is too close to the W class")]
    IllConditioned(f64),

    #[error("x must be positive, got {0}")]
    NonPositiveX(f64),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("no filter coefficients satisfy the balance condition")]
    InfeasibleBalance,

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("both measurement outcomes have vanishing probability")]
    NumericalUnderflow,

    #[error("x = {x} lies outside the feasible interval [{lo}, {hi}]")]
    InfeasibleX { x: f64, lo: f64, hi: f64 },

    #[error("invalid party subset: {0}")]
    InvalidParties(String),
}

pub type Result<T> = std::result::Result<T, Error>;
