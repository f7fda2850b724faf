use nalgebra::{ComplexField, DMatrix};

use crate::error::{Error, Result};
use crate::linalg::{self, hermiticity_defect};
use crate::quantum::StateVector;
use crate::scalar::{cr, CMatrix, CVector, Real};
use crate::tolerance;

/// Square complex matrix equal to its conjugate transpose.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator<T: Real> {
    matrix: CMatrix<T>,
}

impl<T: Real> HermitianOperator<T> {
    /// Accepts `matrix` if `‖M − M†‖_F ≤ 1e-12·‖M‖_F`. The stored matrix is
    /// the exact Hermitian part.
    pub fn new(matrix: CMatrix<T>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch { expected: matrix.nrows(), found: matrix.ncols() });
        }
        if matrix.nrows() == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Format("non-finite matrix entry".into()));
        }
        let defect = hermiticity_defect(&matrix);
        if defect > T::tol(tolerance::HERMITIAN) {
            return Err(Error::NotHermitian(defect.as_f64()));
        }
        Ok(Self::from_hermitian_part(&matrix))
    }

    /// `(M + M†)/2` without validation.
    pub fn from_hermitian_part(matrix: &CMatrix<T>) -> Self {
        Self { matrix: linalg::hermitian_part(matrix) }
    }

    pub fn from_real(matrix: &DMatrix<T>) -> Result<Self> {
        Self::new(matrix.map(cr))
    }

    pub fn from_real_diagonal(diagonal: &[T]) -> Self {
        let n = diagonal.len();
        let mut m = CMatrix::zeros(n, n);
        for (i, &d) in diagonal.iter().enumerate() {
            m[(i, i)] = cr(d);
        }
        Self { matrix: m }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { matrix: CMatrix::zeros(dim, dim) }
    }

    pub fn identity(dim: usize) -> Self {
        Self { matrix: CMatrix::identity(dim, dim) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.matrix
    }

    pub fn frobenius_norm(&self) -> T {
        self.matrix.norm()
    }

    pub fn trace(&self) -> T {
        self.matrix.trace().re
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self { matrix: linalg::kron(&self.matrix, &other.matrix) }
    }

    /// `U H U†`.
    pub fn conjugated(&self, u: &CMatrix<T>) -> Result<Self> {
        if u.nrows() != self.dim() || u.ncols() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: u.nrows() });
        }
        Ok(Self { matrix: linalg::conjugate(u, &self.matrix) })
    }

    pub fn apply(&self, psi: &StateVector<T>) -> Result<CVector<T>> {
        if psi.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: psi.dim() });
        }
        Ok(&self.matrix * psi.amplitudes())
    }

    pub fn scaled(&self, s: T) -> Self {
        Self { matrix: &self.matrix * cr(s) }
    }

    /// `⟨ψ|H|ψ⟩`.
    pub fn expectation(&self, psi: &StateVector<T>) -> Result<T> {
        let h_psi = self.apply(psi)?;
        Ok(psi.amplitudes().dotc(&h_psi).re)
    }
}

/// Hermitian, positive semi-definite, unit-trace matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator<T: Real> {
    matrix: CMatrix<T>,
}

impl<T: Real> DensityOperator<T> {
    /// Validates Hermiticity, trace 1 (1e-10) and eigenvalues ≥ −1e-10.
    pub fn new(matrix: CMatrix<T>) -> Result<Self> {
        let h = HermitianOperator::new(matrix)
            .map_err(|e| Error::InvalidDensity(e.to_string()))?;
        let trace = h.trace();
        if (trace - T::one()).abs() > T::tol(tolerance::TRACE) {
            return Err(Error::InvalidDensity(format!("trace {} differs from 1", trace.as_f64())));
        }
        let rho = Self { matrix: h.into_matrix() };
        let min = rho.eigenvalues().into_iter().reduce(T::min).unwrap_or_else(T::zero);
        if min < -T::tol(-tolerance::DENSITY_EIGENVALUE) {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {}", min.as_f64())));
        }
        Ok(rho)
    }

    pub(crate) fn from_raw(matrix: CMatrix<T>) -> Self {
        Self { matrix: linalg::hermitian_part(&matrix) }
    }

    pub fn from_pure(psi: &StateVector<T>) -> Self {
        psi.density()
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self { matrix: CMatrix::identity(dim, dim) * cr(T::one() / T::from_usize(dim).unwrap()) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.matrix
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<T> {
        linalg::eigh(&self.matrix).0
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> T {
        self.matrix.iter().map(|z| z.modulus_squared()).fold(T::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    #[test]
    fn non_hermitian_rejected() {
        let mut m = CMatrix::<f64>::zeros(2, 2);
        m[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(HermitianOperator::new(m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn density_validation() {
        let ok = DensityOperator::<f64>::new(CMatrix::identity(2, 2) * c(0.5, 0.0));
        assert!(ok.is_ok());
        let bad_trace = DensityOperator::<f64>::new(CMatrix::identity(2, 2));
        assert!(matches!(bad_trace, Err(Error::InvalidDensity(_))));
        let mut neg = CMatrix::<f64>::zeros(2, 2);
        neg[(0, 0)] = c(1.5, 0.0);
        neg[(1, 1)] = c(-0.5, 0.0);
        assert!(matches!(DensityOperator::new(neg), Err(Error::InvalidDensity(_))));
    }
}
