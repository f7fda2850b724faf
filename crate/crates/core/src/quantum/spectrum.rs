use crate::error::{Error, Result};
use crate::linalg::eigh;
use crate::quantum::{HermitianOperator, StateVector};
use crate::scalar::{CMatrix, CVector, Real};
use crate::tolerance;

/// Ascending list of energy eigenvalues.
///
/// The spectrum is flagged degenerate when two neighbouring energies are
/// closer than `1e-9·max(1, max|E|)`. Operations that need a unique
/// eigenbasis refuse degenerate spectra instead of picking a basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<T: Real> {
    energies: Vec<T>,
    degenerate: bool,
}

impl<T: Real> Spectrum<T> {
    pub fn from_energies(energies: Vec<T>) -> Result<Self> {
        if energies.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::Format("non-finite energy".into()));
        }
        if energies.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::Format("energies must be sorted ascending".into()));
        }
        let scale = energies.iter().fold(T::one(), |m, e| m.max(e.abs()));
        let threshold = T::tol(tolerance::DEGENERACY) * scale;
        let degenerate = energies.windows(2).any(|w| w[1] - w[0] < threshold);
        Ok(Self { energies, degenerate })
    }

    pub fn energies(&self) -> &[T] {
        &self.energies
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn ground_energy(&self) -> T {
        self.energies[0]
    }

    /// Smallest gap between neighbouring levels, `None` for a single level.
    pub fn min_gap(&self) -> Option<T> {
        self.energies.windows(2).map(|w| w[1] - w[0]).reduce(T::min)
    }
}

/// Spectrum plus the unitary whose columns are the matching eigenvectors.
#[derive(Clone, Debug)]
pub struct Eigensystem<T: Real> {
    pub spectrum: Spectrum<T>,
    pub frame: CMatrix<T>,
}

impl<T: Real> Eigensystem<T> {
    /// The eigenbasis, or [`Error::DegenerateSpectrum`] if it is not unique.
    pub fn unique_frame(&self) -> Result<&CMatrix<T>> {
        if self.spectrum.is_degenerate() {
            Err(Error::DegenerateSpectrum)
        } else {
            Ok(&self.frame)
        }
    }

    /// Eigenvector of the `n`-th lowest level.
    pub fn eigenstate(&self, n: usize) -> StateVector<T> {
        StateVector::from_raw(self.frame.column(n).into_owned())
    }

    /// Ground state; errors if the lowest level is degenerate.
    pub fn ground_state(&self) -> Result<StateVector<T>> {
        let e = self.spectrum.energies();
        if e.len() > 1 {
            let scale = e.iter().fold(T::one(), |m, x| m.max(x.abs()));
            if e[1] - e[0] < T::tol(tolerance::DEGENERACY) * scale {
                return Err(Error::DegenerateSpectrum);
            }
        }
        Ok(self.eigenstate(0))
    }

    /// Coefficients `ψ_n = ⟨n|ψ⟩`.
    pub fn coefficients(&self, psi: &StateVector<T>) -> Result<CVector<T>> {
        if psi.dim() != self.frame.nrows() {
            return Err(Error::DimensionMismatch { expected: self.frame.nrows(), found: psi.dim() });
        }
        Ok(self.frame.ad_mul(psi.amplitudes()))
    }

    /// `Σ_n ψ_n e^{−iE_n t}|n⟩` expressed back in the original basis.
    pub fn evolve(&self, psi: &StateVector<T>, t: T) -> Result<StateVector<T>> {
        let coeffs = self.coefficients(psi)?;
        let evolved = crate::quantum::spectral_evolve(&self.spectrum, &coeffs, t)?;
        Ok(StateVector::from_raw(&self.frame * evolved))
    }
}

/// Diagonalizes `h`: eigenvalues ascending, eigenvectors as frame columns.
pub fn diagonalize<T: Real>(h: &HermitianOperator<T>) -> Eigensystem<T> {
    let (energies, frame) = eigh(h.matrix());
    let spectrum = Spectrum::from_energies(energies).expect("eigenvalues of a finite Hermitian matrix");
    Eigensystem { spectrum, frame }
}

/// Validates `matrix` as Hermitian, then diagonalizes it.
pub fn diagonalize_matrix<T: Real>(matrix: CMatrix<T>) -> Result<Eigensystem<T>> {
    Ok(diagonalize(&HermitianOperator::new(matrix)?))
}
