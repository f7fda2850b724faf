use crate::scalar::{cr, CMatrix, Real, C};

/// Orthonormal Hermitian operator basis of a `d`-level factor under the
/// Hilbert–Schmidt inner product: `I/√d` (label 0), then for each pair
/// `j < k` the symmetric and antisymmetric off-diagonal generators, then the
/// `d − 1` diagonal generators. Every element has unit Frobenius norm.
pub fn gell_mann_basis<T: Real>(d: usize) -> Vec<CMatrix<T>> {
    let mut basis = Vec::with_capacity(d * d);
    basis.push(CMatrix::identity(d, d) * cr(T::one() / T::from_usize(d).unwrap().sqrt()));
    let r = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    for j in 0..d {
        for k in j + 1..d {
            let mut sym = CMatrix::zeros(d, d);
            sym[(j, k)] = cr(r);
            sym[(k, j)] = cr(r);
            basis.push(sym);
            let mut anti = CMatrix::zeros(d, d);
            anti[(j, k)] = C::new(T::zero(), -r);
            anti[(k, j)] = C::new(T::zero(), r);
            basis.push(anti);
        }
    }
    for l in 1..d {
        let norm = T::one() / T::from_usize(l * (l + 1)).unwrap().sqrt();
        let mut diag = CMatrix::zeros(d, d);
        for j in 0..l {
            diag[(j, j)] = cr(norm);
        }
        diag[(l, l)] = cr(-T::from_usize(l).unwrap() * norm);
        basis.push(diag);
    }
    basis
}

/// `L[a][(i, j)] = B_a[j, i]`, so that `Σ_{ij} L[a][(i,j)] M[i,j] = Tr(B_a M)`.
pub(crate) fn analysis_map<T: Real>(basis: &[CMatrix<T>]) -> Vec<Vec<C<T>>> {
    let d = basis[0].nrows();
    basis
        .iter()
        .map(|b| (0..d * d).map(|p| b[(p % d, p / d)]).collect())
        .collect()
}

/// `S[(i, j)][a] = B_a[i, j]`: rebuilds an operator from its coefficients.
pub(crate) fn synthesis_map<T: Real>(basis: &[CMatrix<T>]) -> Vec<Vec<C<T>>> {
    let d = basis[0].nrows();
    (0..d * d)
        .map(|p| basis.iter().map(|b| b[(p / d, p % d)]).collect())
        .collect()
}
