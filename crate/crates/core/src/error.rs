use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operator is not Hermitian (relative deviation {0:e})")]
    NotHermitian(f64),

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("not a valid density operator: {0}")]
    InvalidDensity(String),

    #[error("frame is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("spectrum is degenerate; the eigenbasis is not unique")]
    DegenerateSpectrum,

    #[error("initial state is not a product state across the split (1 - max Schmidt weight = {0:e})")]
    NotProductState(f64),

    #[error("no entanglement structure: every mutual information vanishes")]
    NoEntanglement,

    #[error("invalid distance matrix: {0}")]
    InvalidDistanceMatrix(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Errors caused by the numerical content of valid-looking input
    /// (as opposed to malformed files or bad parameters).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NotHermitian(_)
                | Error::DegenerateSpectrum
                | Error::NotUnitary(_)
                | Error::InvalidDensity(_)
                | Error::NotNormalized(_)
                | Error::NoEntanglement
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
