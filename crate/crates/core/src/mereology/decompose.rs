use crate::error::{Error, Result};
use crate::linalg::{commutator, identity, kron};
use crate::quantum::{trace_out_local, HermitianOperator};
use crate::scalar::{cr, CMatrix, Real};

use super::BipartiteSplit;

/// `H = H_S⊗I + I⊗H_E + H_int + offset·I` in the product basis of a split,
/// with `H_S`, `H_E` traceless and `H_int` traceless over either factor.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianDecomposition<T: Real> {
    pub system: HermitianOperator<T>,
    pub environment: HermitianOperator<T>,
    pub interaction: HermitianOperator<T>,
    pub trace_offset: T,
}

impl<T: Real> HamiltonianDecomposition<T> {
    /// Re-sums the parts in the split's product basis.
    pub fn reconstruct_local(&self) -> CMatrix<T> {
        let d_s = self.system.dim();
        let d_e = self.environment.dim();
        kron(self.system.matrix(), &identity(d_e))
            + kron(&identity(d_s), self.environment.matrix())
            + self.interaction.matrix()
            + identity::<T>(d_s * d_e) * cr(self.trace_offset)
    }

    /// Re-sums the parts and maps them back to the computational basis.
    pub fn reconstruct(&self, split: &BipartiteSplit<T>) -> Result<CMatrix<T>> {
        split.factorization().operator_from_local(&self.reconstruct_local())
    }

    /// `‖H_int‖_F / ‖H_S‖_F`, how far the split is into the regime where the
    /// interaction dominates the system's own dynamics; `None` if `H_S = 0`.
    pub fn interaction_dominance(&self) -> Option<T> {
        let s = self.system.frobenius_norm();
        (s > T::zero()).then(|| self.interaction.frobenius_norm() / s)
    }
}

/// Splits `H` into self, environment and interaction parts relative to
/// `split`. The interaction is fixed by requiring both of its partial traces
/// to vanish, which makes the decomposition unique.
pub fn decompose_hamiltonian<T: Real>(
    h: &HermitianOperator<T>,
    split: &BipartiteSplit<T>,
) -> Result<HamiltonianDecomposition<T>> {
    let local = split.factorization().operator_to_local(h.matrix())?;
    Ok(decompose_local(&local, split.d_s(), split.d_e()))
}

/// [`decompose_hamiltonian`] for a matrix already in the product basis.
pub(crate) fn decompose_local<T: Real>(local: &CMatrix<T>, d_s: usize, d_e: usize) -> HamiltonianDecomposition<T> {
    let dims = [d_s, d_e];
    let d = d_s * d_e;
    let offset = local.trace().re / T::from_usize(d).unwrap();
    let mut system = trace_out_local(local, &dims, &[0]) * cr(T::one() / T::from_usize(d_e).unwrap());
    let mut environment = trace_out_local(local, &dims, &[1]) * cr(T::one() / T::from_usize(d_s).unwrap());
    for i in 0..d_s {
        system[(i, i)] -= cr(offset);
    }
    for i in 0..d_e {
        environment[(i, i)] -= cr(offset);
    }
    let mut interaction = local - kron(&system, &identity(d_e)) - kron(&identity(d_s), &environment);
    for i in 0..d {
        interaction[(i, i)] -= cr(offset);
    }
    HamiltonianDecomposition {
        system: HermitianOperator::from_hermitian_part(&system),
        environment: HermitianOperator::from_hermitian_part(&environment),
        interaction: HermitianOperator::from_hermitian_part(&interaction),
        trace_offset: offset,
    }
}

/// `‖[H_int, Q_S⊗I_E]‖_F / (‖H_int‖_F ‖Q_S‖_F)`, with `0/0 = 0`.
pub fn commutator_defect<T: Real>(
    q_s: &HermitianOperator<T>,
    h_int: &HermitianOperator<T>,
    d_s: usize,
    d_e: usize,
) -> Result<T> {
    if q_s.dim() != d_s {
        return Err(Error::DimensionMismatch { expected: d_s, found: q_s.dim() });
    }
    if h_int.dim() != d_s * d_e {
        return Err(Error::DimensionMismatch { expected: d_s * d_e, found: h_int.dim() });
    }
    Ok(commutator_defect_matrix(q_s.matrix(), h_int.matrix(), d_e))
}

pub(crate) fn commutator_defect_matrix<T: Real>(q_s: &CMatrix<T>, h_int: &CMatrix<T>, d_e: usize) -> T {
    let denom = h_int.norm() * q_s.norm();
    if denom == T::zero() {
        return T::zero();
    }
    commutator(h_int, &kron(q_s, &identity(d_e))).norm() / denom
}
