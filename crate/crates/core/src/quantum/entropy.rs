//! Reduced states, entropies, mutual information and purification.

use crate::error::{Error, Result};
use crate::linalg::{eigh, subsystem_index_table};
use crate::quantum::{DensityOperator, Factorization, StateVector};
use crate::scalar::{cr, CMatrix, CVector, Real};
use crate::tolerance;

/// `Tr` over every factor not listed in `keep`. The input is expressed in
/// the computational basis and is first rotated into the factorization's
/// product basis; the result lives on the kept factors in ascending order.
pub fn partial_trace<T: Real>(
    rho: &DensityOperator<T>,
    f: &Factorization<T>,
    keep: &[usize],
) -> Result<DensityOperator<T>> {
    f.check_dim(rho.dim())
        .map_err(|_| Error::InvalidFactorization(format!("factorization of dim {} applied to operator of dim {}", f.total_dim(), rho.dim())))?;
    let keep = f.index_set(keep)?;
    let local = f.operator_to_local(rho.matrix())?;
    Ok(DensityOperator::from_raw(trace_out_local(&local, f.dims(), &keep)))
}

/// Partial trace of an operator already written in the product basis.
pub(crate) fn trace_out_local<T: Real>(m: &CMatrix<T>, dims: &[usize], keep: &[usize]) -> CMatrix<T> {
    let table = subsystem_index_table(dims, keep);
    let kept = table[0].len();
    let mut out = CMatrix::zeros(kept, kept);
    for row in &table {
        for (a, &i) in row.iter().enumerate() {
            for (b, &j) in row.iter().enumerate() {
                out[(a, b)] += m[(i, j)];
            }
        }
    }
    out
}

/// Reduced density matrix of a pure state given in the product basis:
/// reshape into a (kept × traced) matrix `M` and return `M M†`.
pub(crate) fn reduced_from_local_state<T: Real>(psi: &CVector<T>, dims: &[usize], keep: &[usize]) -> CMatrix<T> {
    let table = subsystem_index_table(dims, keep);
    let kept = table[0].len();
    let traced = table.len();
    let mut m = CMatrix::zeros(kept, traced);
    for (c, row) in table.iter().enumerate() {
        for (k, &g) in row.iter().enumerate() {
            m[(k, c)] = psi[g];
        }
    }
    &m * m.adjoint()
}

/// Reduced state on `keep` of the pure state `psi` (computational basis).
pub fn reduced_state<T: Real>(
    psi: &StateVector<T>,
    f: &Factorization<T>,
    keep: &[usize],
) -> Result<DensityOperator<T>> {
    let keep = f.index_set(keep)?;
    let local = f.state_to_local(psi.amplitudes())?;
    Ok(DensityOperator::from_raw(reduced_from_local_state(&local, f.dims(), &keep)))
}

/// `−Σ λ ln λ` over eigenvalues above the entropy floor.
pub fn entropy_of_eigenvalues<T: Real>(eigenvalues: &[T]) -> T {
    let floor = T::tol(tolerance::ENTROPY_FLOOR);
    let s = eigenvalues
        .iter()
        .filter(|&&l| l > floor)
        .fold(T::zero(), |acc, &l| acc - l * l.ln());
    s.max(T::zero())
}

/// Von Neumann entropy in nats.
pub fn von_neumann_entropy<T: Real>(rho: &DensityOperator<T>) -> T {
    entropy_of_eigenvalues(&rho.eigenvalues())
}

pub(crate) fn entropy_of_matrix<T: Real>(m: &CMatrix<T>) -> T {
    entropy_of_eigenvalues(&eigh(m).0)
}

/// `1 − Tr ρ²`.
pub fn linear_entropy<T: Real>(rho: &DensityOperator<T>) -> T {
    T::one() - rho.purity()
}

/// Entanglement entropy of `region` for the pure state `psi`.
pub fn region_entropy<T: Real>(psi: &StateVector<T>, f: &Factorization<T>, region: &[usize]) -> Result<T> {
    Ok(von_neumann_entropy(&reduced_state(psi, f, region)?))
}

/// `I(α:β) = S_α + S_β − S_{αβ}` for the pure state `psi`.
pub fn mutual_information<T: Real>(
    psi: &StateVector<T>,
    f: &Factorization<T>,
    alpha: &[usize],
    beta: &[usize],
) -> Result<T> {
    let a = f.index_set(alpha)?;
    let b = f.index_set(beta)?;
    if a.iter().any(|i| b.contains(i)) {
        return Err(Error::InvalidIndexSet("regions overlap".into()));
    }
    let local = f.state_to_local(psi.amplitudes())?;
    Ok(mutual_information_local(&local, f.dims(), &a, &b))
}

pub(crate) fn mutual_information_local<T: Real>(psi: &CVector<T>, dims: &[usize], a: &[usize], b: &[usize]) -> T {
    let mut ab: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
    ab.sort_unstable();
    let s = |set: &[usize]| entropy_of_matrix(&reduced_from_local_state(psi, dims, set));
    s(a) + s(b) - s(&ab)
}

/// Purifies `rho` (dimension `d`) onto `d ⊗ d`: with `ρ = Σ λ_i |e_i⟩⟨e_i|`
/// sorted by decreasing weight, returns `Σ √λ_i |e_i⟩⊗|i⟩`. The ancilla is
/// the second factor, so a pure `|a⟩⟨a|` purifies to `|a⟩⊗|0⟩` up to phase.
pub fn purify<T: Real>(rho: &DensityOperator<T>) -> Result<(StateVector<T>, Factorization<T>)> {
    let d = rho.dim();
    if d < 2 {
        return Err(Error::InvalidDensity("purification needs dimension ≥ 2".into()));
    }
    let (values, vectors) = eigh(rho.matrix());
    let mut order: Vec<usize> = (0..d).collect();
    // eigh is ascending; stable reverse keeps ties in eigensolver order
    order.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap());
    let mut psi = CVector::zeros(d * d);
    for (slot, &k) in order.iter().enumerate() {
        let weight = values[k].max(T::zero()).sqrt();
        for i in 0..d {
            psi[i * d + slot] = vectors[(i, k)] * cr(weight);
        }
    }
    let state = StateVector::normalized(psi)?;
    Ok((state, Factorization::identity(vec![d, d])?))
}
