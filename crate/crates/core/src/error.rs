use thiserror::Error;

use crate::system::MAX_ORDER;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid system order {0}: expected 1..={MAX_ORDER}")]
    InvalidOrder(usize),
    #[error("expected {expected} parameter values, got {got}")]
    ParameterCount { expected: usize, got: usize },
    #[error("missing value for variable `{0}`")]
    MissingVariable(String),
    #[error("parse error at offset {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation requires symbolic parameters")]
    SymbolicRequired,
    #[error("operation requires numeric parameters")]
    NumericRequired,
    #[error("linear system has no solution: {0}")]
    NoSolution(String),
    #[error("bracket closure failed: {0}")]
    BracketClosure(String),
    #[error("quantum integrals are available for 1 <= N <= 4, got N = {0}")]
    UnsupportedOrder(usize),
    #[error("identity `{name}` failed; residual: {residual}")]
    IdentityFailure { name: String, residual: String },
    #[error("ladder relation failed: {0}")]
    LadderClosure(String),
    #[error("no consistent spectrum family")]
    NoSpectrum,
    #[error(
        "parameter g{index} = {value} is not real; Cartesian dynamics needs real parameters \
         (use the curved-oscillator chart, where g1 = 2*i*omega gives a real Hamiltonian)"
    )]
    NonRealParameter { index: usize, value: String },
    #[error("invalid trajectory configuration: {0}")]
    InvalidConfig(String),
    #[error("implicit midpoint stage did not converge at step {step}")]
    NonConvergence { step: usize },
    #[error("non-finite state at step {step}")]
    NonFinite { step: usize },
    #[error("outside the regular domain: {0}")]
    Domain(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
