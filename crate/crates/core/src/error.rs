use thiserror::Error;

use crate::expr::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {dim} is too small, need at least {required}")]
    DimensionTooSmall { dim: usize, required: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("invalid mixture weights: {0}")]
    BadWeights(String),
    #[error("not a density matrix: {0}")]
    InvalidDensity(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("imaginary residue {residue:.3e} exceeds {tolerance:.0e} in {context}")]
    ImaginaryResidue { residue: f64, tolerance: f64, context: &'static str },
    #[error("truncation unstable: value moved by {change:.3e} when doubling dimension {dim}")]
    Truncation { change: f64, dim: usize },
    #[error("grid inadequate: {0}")]
    GridInadequate(String),
    #[error("no member of the witness family has dispersion above {threshold:e}; truncation artifact")]
    WitnessExhausted { threshold: f64 },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for violations of a numerical contract (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::ImaginaryResidue { .. }
                | Error::Truncation { .. }
                | Error::GridInadequate(_)
                | Error::WitnessExhausted { .. }
        )
    }
}
