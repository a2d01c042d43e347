use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (Frobenius defect {defect:.3e})")]
    NotHermitian { defect: f64 },

    #[error("matrix is not unimodular (|det - 1| = {defect:.3e})")]
    NotUnimodular { defect: f64 },

    #[error("momentum is off the {shell} mass shell (relative residual {residual:.3e})")]
    OffShell { shell: &'static str, residual: f64 },

    #[error("direction vector is not a unit vector (|n| = {norm})")]
    NonUnitDirection { norm: f64 },

    #[error("vector is not normalized ({what} = {value})")]
    NotNormalized { what: &'static str, value: f64 },

    #[error("zero vector has no spin direction")]
    ZeroVector,

    #[error("fiber vectors live over different base points")]
    MismatchedBase,

    #[error("operation requires the {expected} description")]
    WrongDescription { expected: &'static str },

    #[error("vector lies outside the range bundle (residual {residual:.3e})")]
    NotInRange { residual: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("matrix has a negative eigenvalue {value:.3e}")]
    NegativeEigenvalue { value: f64 },

    #[error("density matrix trace {trace} differs from 1")]
    BadTrace { trace: f64 },

    #[error("need at least {needed} time slices, got {got}")]
    InsufficientSlices { needed: usize, got: usize },

    #[error("time slices must be equally spaced")]
    UnevenSlices,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("spin {twice_s}/2 exceeds the supported maximum {max}/2")]
    SpinTooLarge { twice_s: u32, max: u32 },

    #[error("concurrence is only defined for qubit pairs")]
    NotQubits,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
