use crate::error::{Error, Result};
use crate::linalg::{self, unitarity_defect};
use crate::scalar::{CMatrix, CVector, Real};
use crate::tolerance;

/// A tensor-product structure on a Hilbert space: ordered factor
/// dimensions plus a unitary frame whose columns are the product basis
/// vectors `|i_1⟩⊗…⊗|i_n⟩` written in the computational basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<T: Real> {
    dims: Vec<usize>,
    frame: CMatrix<T>,
}

impl<T: Real> Factorization<T> {
    pub fn new(dims: Vec<usize>, frame: CMatrix<T>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidFactorization("no factors".into()));
        }
        if let Some(d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidFactorization(format!("factor dimension {d} < 2")));
        }
        let total = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::InvalidFactorization("dimension overflow".into()))?;
        if frame.nrows() != total || frame.ncols() != total {
            return Err(Error::InvalidFactorization(format!(
                "product of dims is {total} but frame is {}x{}",
                frame.nrows(),
                frame.ncols()
            )));
        }
        let defect = unitarity_defect(&frame);
        if defect > T::tol(tolerance::UNITARY) {
            return Err(Error::NotUnitary(defect.as_f64()));
        }
        Ok(Self { dims, frame })
    }

    /// Factorization aligned with the computational basis.
    pub fn identity(dims: Vec<usize>) -> Result<Self> {
        let total: usize = dims.iter().product();
        Self::new(dims, CMatrix::identity(total, total))
    }

    pub fn with_frame(&self, frame: CMatrix<T>) -> Result<Self> {
        Self::new(self.dims.clone(), frame)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn frame(&self) -> &CMatrix<T> {
        &self.frame
    }

    pub fn total_dim(&self) -> usize {
        self.frame.nrows()
    }

    pub fn n_factors(&self) -> usize {
        self.dims.len()
    }

    /// Amplitudes in the product basis, `U†ψ`.
    pub fn state_to_local(&self, psi: &CVector<T>) -> Result<CVector<T>> {
        self.check_dim(psi.len())?;
        Ok(self.frame.ad_mul(psi))
    }

    pub fn state_from_local(&self, local: &CVector<T>) -> Result<CVector<T>> {
        self.check_dim(local.len())?;
        Ok(&self.frame * local)
    }

    /// `U† M U`.
    pub fn operator_to_local(&self, m: &CMatrix<T>) -> Result<CMatrix<T>> {
        self.check_dim(m.nrows())?;
        Ok(linalg::conjugate_inverse(&self.frame, m))
    }

    /// `U M U†`.
    pub fn operator_from_local(&self, m: &CMatrix<T>) -> Result<CMatrix<T>> {
        self.check_dim(m.nrows())?;
        Ok(linalg::conjugate(&self.frame, m))
    }

    /// Sorted, de-duplicated copy of `set` after checking it is a nonempty
    /// set of valid factor indices.
    pub fn index_set(&self, set: &[usize]) -> Result<Vec<usize>> {
        if set.is_empty() {
            return Err(Error::InvalidIndexSet("empty index set".into()));
        }
        if let Some(&bad) = set.iter().find(|&&i| i >= self.dims.len()) {
            return Err(Error::InvalidIndexSet(format!(
                "factor index {bad} out of range for {} factors",
                self.dims.len()
            )));
        }
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != set.len() {
            return Err(Error::InvalidIndexSet("repeated factor index".into()));
        }
        Ok(sorted)
    }

    pub fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.total_dim() {
            return Err(Error::DimensionMismatch { expected: self.total_dim(), found });
        }
        Ok(())
    }
}
