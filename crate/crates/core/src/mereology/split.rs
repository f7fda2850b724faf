use crate::error::{Error, Result};
use crate::quantum::Factorization;
use crate::scalar::{CMatrix, Real};

/// System/environment factorization `H = H_S ⊗ H_E` with `d_S ≤ d_E`.
///
/// The frame's columns are the product basis `|s⟩⊗|e⟩` (system index most
/// significant) written in the computational basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteSplit<T: Real> {
    factorization: Factorization<T>,
}

impl<T: Real> BipartiteSplit<T> {
    pub fn new(d_s: usize, d_e: usize, frame: CMatrix<T>) -> Result<Self> {
        if d_s > d_e {
            return Err(Error::InvalidFactorization(format!(
                "system dimension {d_s} exceeds environment dimension {d_e}"
            )));
        }
        Ok(Self {
            factorization: Factorization::new(vec![d_s, d_e], frame)?,
        })
    }

    pub fn identity(d_s: usize, d_e: usize) -> Result<Self> {
        Self::new(d_s, d_e, CMatrix::identity(d_s * d_e, d_s * d_e))
    }

    pub fn with_frame(&self, frame: CMatrix<T>) -> Result<Self> {
        Self::new(self.d_s(), self.d_e(), frame)
    }

    pub fn d_s(&self) -> usize {
        self.factorization.dims()[0]
    }

    pub fn d_e(&self) -> usize {
        self.factorization.dims()[1]
    }

    pub fn dim(&self) -> usize {
        self.factorization.total_dim()
    }

    pub fn frame(&self) -> &CMatrix<T> {
        self.factorization.frame()
    }

    pub fn factorization(&self) -> &Factorization<T> {
        &self.factorization
    }
}
