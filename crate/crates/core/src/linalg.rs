//! Dense complex linear-algebra helpers on top of `nalgebra`.

use nalgebra::{ComplexField, DMatrix, SymmetricEigen};

use crate::scalar::{cr, CMatrix, Real, C};

pub fn kron<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    a.kronecker(b)
}

pub fn identity<T: Real>(dim: usize) -> CMatrix<T> {
    CMatrix::identity(dim, dim)
}

pub fn commutator<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    a * b - b * a
}

pub fn hermitian_part<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    (m + m.adjoint()) * cr(T::lit(0.5))
}

/// `‖M − M†‖_F / ‖M‖_F`, or 0 for the zero matrix.
pub fn hermiticity_defect<T: Real>(m: &CMatrix<T>) -> T {
    let norm = m.norm();
    if norm == T::zero() {
        return T::zero();
    }
    (m - m.adjoint()).norm() / norm
}

/// `‖U U† − I‖_F`.
pub fn unitarity_defect<T: Real>(u: &CMatrix<T>) -> T {
    let n = u.nrows();
    (u * u.adjoint() - identity::<T>(n)).norm()
}

/// `U M U†`, symmetrized so that Hermitian input stays exactly Hermitian.
pub fn conjugate<T: Real>(u: &CMatrix<T>, m: &CMatrix<T>) -> CMatrix<T> {
    hermitian_part(&(u * m * u.adjoint()))
}

/// `U† M U`, symmetrized.
pub fn conjugate_inverse<T: Real>(u: &CMatrix<T>, m: &CMatrix<T>) -> CMatrix<T> {
    hermitian_part(&(u.adjoint() * m * u))
}

/// Multiplies column `j` by the phase that makes its largest-modulus entry
/// real and positive. Ties are broken toward the lowest index.
pub fn fix_column_phases<T: Real>(v: &mut CMatrix<T>) {
    let near = T::lit(1.0 - 1e-8);
    for mut col in v.column_iter_mut() {
        let max = col.iter().fold(T::zero(), |m, z| m.max(z.modulus()));
        if max == T::zero() {
            continue;
        }
        let pivot = col
            .iter()
            .find(|z| z.modulus() >= near * max)
            .copied()
            .unwrap_or_else(|| cr(max));
        let phase = pivot.conj() / cr(pivot.modulus());
        col *= phase;
    }
}

/// Hermitian eigendecomposition with eigenvalues ascending and eigenvector
/// phases fixed by [`fix_column_phases`].
pub fn eigh<T: Real>(m: &CMatrix<T>) -> (Vec<T>, CMatrix<T>) {
    let n = m.nrows();
    let eig = SymmetricEigen::new(hermitian_part(m));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .expect("finite eigenvalues")
    });
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    fix_column_phases(&mut vectors);
    (values, vectors)
}

/// Real symmetric eigendecomposition, eigenvalues descending.
pub fn eigh_real_descending<T: Real>(m: &DMatrix<T>) -> (Vec<T>, DMatrix<T>) {
    let n = m.nrows();
    let sym = (m + m.transpose()) * T::lit(0.5);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .expect("finite eigenvalues")
    });
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = eig.eigenvectors.column(src).into_owned();
        if let Some(p) = col.iter().copied().reduce(|a, b| if b.abs() > a.abs() { b } else { a }) {
            if p < T::zero() {
                col.neg_mut();
            }
        }
        vectors.set_column(dst, &col);
    }
    (values, vectors)
}

/// `exp(K)` for skew-Hermitian `K`, computed through the eigendecomposition
/// of the Hermitian matrix `iK` so the result is unitary to rounding.
pub fn expm_skew_hermitian<T: Real>(k: &CMatrix<T>) -> CMatrix<T> {
    let a = k * C::new(T::zero(), T::one());
    let (values, v) = eigh(&a);
    let mut scaled = v.clone();
    for (j, lambda) in values.iter().enumerate() {
        let phase = C::new(lambda.cos(), -lambda.sin());
        for z in scaled.column_mut(j).iter_mut() {
            *z *= phase;
        }
    }
    scaled * v.adjoint()
}

/// Q factor of a QR decomposition with the phases of `R`'s diagonal moved
/// into `Q`, so that `R` has a positive real diagonal.
pub fn qr_phase_fixed<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    let qr = m.clone().qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..q.ncols() {
        let d = r[(j, j)];
        let modulus = d.modulus();
        if modulus > T::zero() {
            let phase = d / cr(modulus);
            for z in q.column_mut(j).iter_mut() {
                *z *= phase;
            }
        }
    }
    q
}

/// Projects a nearly-unitary matrix back onto the unitary group.
pub fn reunitarize<T: Real>(u: &CMatrix<T>) -> CMatrix<T> {
    qr_phase_fixed(u)
}

/// Index bookkeeping for a tensor product of factors with dimensions `dims`
/// (factor 0 is the most significant digit).
///
/// `table[c][k]` is the global basis index whose digits on the kept factors
/// spell `k` and whose digits on the remaining factors spell `c`. Both
/// sub-indices are row-major in ascending factor order.
pub fn subsystem_index_table(dims: &[usize], keep: &[usize]) -> Vec<Vec<usize>> {
    let kept_dim: usize = keep.iter().map(|&k| dims[k]).product();
    let total: usize = dims.iter().product();
    let traced_dim = total / kept_dim;
    let mut table = vec![vec![0usize; kept_dim]; traced_dim];
    let mut digits = vec![0usize; dims.len()];
    for global in 0..total {
        let mut rest = global;
        for f in (0..dims.len()).rev() {
            digits[f] = rest % dims[f];
            rest /= dims[f];
        }
        let (mut k, mut c) = (0usize, 0usize);
        for f in 0..dims.len() {
            if keep.contains(&f) {
                k = k * dims[f] + digits[f];
            } else {
                c = c * dims[f] + digits[f];
            }
        }
        table[c][k] = global;
    }
    table
}
