use crate::error::{Error, Result};
use crate::linalg::kron;
use crate::quantum::DensityOperator;
use crate::scalar::{cr, CMatrix, CVector, Real, C};
use crate::tolerance;

/// Unit-norm vector of complex amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T: Real> {
    amplitudes: CVector<T>,
}

impl<T: Real> StateVector<T> {
    /// Wraps `amplitudes`, rejecting vectors whose norm is not 1 within 1e-10.
    pub fn new(amplitudes: CVector<T>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        let norm = amplitudes.norm();
        if !norm.is_finite() || (norm - T::one()).abs() > T::tol(tolerance::NORM) {
            return Err(Error::NotNormalized(norm.as_f64()));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: CVector<T>) -> Result<Self> {
        let norm = amplitudes.norm();
        if !norm.is_finite() || norm == T::zero() {
            return Err(Error::NotNormalized(norm.as_f64()));
        }
        Ok(Self { amplitudes: amplitudes / cr(norm) })
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index {index} out of range for dim {dim}");
        let mut amplitudes = CVector::zeros(dim);
        amplitudes[index] = cr(T::one());
        Self { amplitudes }
    }

    /// Tensor product of `factors`, first factor most significant.
    pub fn product(factors: &[StateVector<T>]) -> Self {
        let mut acc = CMatrix::from_element(1, 1, cr(T::one()));
        for f in factors {
            let col = CMatrix::from_column_slice(f.dim(), 1, f.amplitudes.as_slice());
            acc = kron(&acc, &col);
        }
        Self { amplitudes: CVector::from_column_slice(acc.as_slice()) }
    }

    /// Skips the norm check; for results of norm-preserving maps.
    pub(crate) fn from_raw(amplitudes: CVector<T>) -> Self {
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector<T> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> CVector<T> {
        self.amplitudes
    }

    pub fn norm(&self) -> T {
        self.amplitudes.norm()
    }

    /// `⟨self|other⟩`.
    pub fn overlap(&self, other: &StateVector<T>) -> C<T> {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn density(&self) -> DensityOperator<T> {
        DensityOperator::from_raw(&self.amplitudes * self.amplitudes.adjoint())
    }
}
