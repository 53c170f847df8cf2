use thiserror::Error;

/// Errors raised by the numerical kernels and the quantum data model.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("matrix is not Hermitian (max |A - A^dagger| entry {max_deviation:e})")]
    NonHermitian { max_deviation: f64 },

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("POVM element {index} is not Hermitian (max deviation {max_deviation:e})")]
    ElementNotHermitian { index: usize, max_deviation: f64 },

    #[error("POVM element {index} is not positive (min eigenvalue {min_eigenvalue:e})")]
    ElementNotPositive { index: usize, min_eigenvalue: f64 },

    #[error("Incomplete: POVM elements do not sum to identity (max deviation {max_deviation:e})")]
    Incomplete { max_deviation: f64 },

    #[error("POVM has no elements")]
    EmptyPovm,

    #[error("state vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("density matrix trace is {trace}, expected 1")]
    InvalidTrace { trace: f64 },

    #[error("probabilities sum to {sum}, expected 1")]
    InvalidDistribution { sum: f64 },

    #[error("negative probability {value:e} at outcome {index}")]
    NegativeProbability { index: usize, value: f64 },

    #[error("invalid Renyi order {0}: must be positive and finite")]
    InvalidOrder(f64),

    #[error("order {0} has no finite conjugate (requires alpha > 1/2)")]
    OutOfRange(f64),

    #[error("orders ({alpha}, {beta}) do not satisfy 1/alpha + 1/beta = 2")]
    NotConjugate { alpha: f64, beta: f64 },

    #[error("invalid sampling configuration: {0}")]
    InvalidConfig(String),

    #[error("could not draw an invertible POVM sample after {attempts} attempts")]
    DegenerateSample { attempts: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
