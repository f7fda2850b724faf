use nalgebra::{ComplexField, DMatrix};

use crate::error::{Error, Result};
use crate::linalg::{eigh, eigh_real_descending, fix_column_phases, identity, kron};
use crate::quantum::{trace_out_local, HermitianOperator};
use crate::random::{haar_unitary, random_hermitian, seeded_rng};
use crate::scalar::{cr, CMatrix, Real, C};

use super::decompose::commutator_defect_matrix;

/// Orthonormal system basis `{|φ_n⟩}` (columns of `vectors`) together with
/// the commutator defect of its label observable `Q = Σ n |φ_n⟩⟨φ_n|`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointerBasis<T: Real> {
    vectors: CMatrix<T>,
    defect: T,
    cost: T,
    trace: Vec<(usize, T)>,
}

impl<T: Real> PointerBasis<T> {
    pub fn vectors(&self) -> &CMatrix<T> {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.ncols()
    }

    pub fn defect(&self) -> T {
        self.defect
    }

    /// `Σ_n ‖[H_int, P_n⊗I]‖²_F` at this basis.
    pub fn cost(&self) -> T {
        self.cost
    }

    /// Best cost after candidate screening (iteration 0) and after each
    /// refinement sweep.
    pub fn trace(&self) -> &[(usize, T)] {
        &self.trace
    }

    pub fn vector(&self, n: usize) -> nalgebra::DVector<C<T>> {
        self.vectors.column(n).into_owned()
    }

    /// `Q = Σ n |φ_n⟩⟨φ_n|` in the stored order.
    pub fn observable(&self) -> HermitianOperator<T> {
        HermitianOperator::from_hermitian_part(&label_observable(&self.vectors))
    }

    /// The same basis with vectors permuted so that new position `k` holds
    /// old vector `order[k]`; the defect is recomputed for the new labels.
    pub fn reordered(&self, order: &[usize], h_int: &HermitianOperator<T>) -> Result<Self> {
        let d = self.dim();
        let mut seen = vec![false; d];
        if order.len() != d || order.iter().any(|&i| i >= d || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::InvalidParameter("pointer reordering is not a permutation".into()));
        }
        let vectors = CMatrix::from_fn(d, d, |i, k| self.vectors[(i, order[k])]);
        let defect = commutator_defect_matrix(&label_observable(&vectors), h_int.matrix(), h_int.dim() / d);
        Ok(Self { vectors, defect, ..self.clone() })
    }
}

impl<T: Real> PointerBasis<T> {
    /// Scores a given basis without searching.
    pub(crate) fn evaluated(vectors: &CMatrix<T>, h_int: &HermitianOperator<T>) -> Self {
        let d_s = vectors.ncols();
        let d_e = h_int.dim() / d_s;
        let vectors = canonicalize(vectors);
        let cost = offdiag_cost(&system_components(h_int.matrix(), d_s, d_e), &vectors);
        let defect = commutator_defect_matrix(&label_observable(&vectors), h_int.matrix(), d_e);
        Self { vectors, defect, cost, trace: vec![(0, cost)] }
    }
}

fn label_observable<T: Real>(vectors: &CMatrix<T>) -> CMatrix<T> {
    let d = vectors.ncols();
    let mut q = CMatrix::zeros(d, d);
    for n in 1..d {
        let v = vectors.column(n);
        q += (v * v.adjoint()) * cr(T::from_usize(n).unwrap());
    }
    q
}

/// `Σ_n ‖[H_int, P_n⊗I_E]‖²_F` for the projectors onto the columns of `v`.
pub fn pointer_cost<T: Real>(h_int: &HermitianOperator<T>, v: &CMatrix<T>, d_s: usize, d_e: usize) -> Result<T> {
    check_dims(h_int, d_s, d_e)?;
    if v.nrows() != d_s || v.ncols() != d_s {
        return Err(Error::DimensionMismatch { expected: d_s, found: v.nrows() });
    }
    let mut total = T::zero();
    for n in 0..d_s {
        let col = v.column(n);
        let p = kron(&(col * col.adjoint()), &identity(d_e));
        total += (h_int.matrix() * &p - &p * h_int.matrix()).norm_squared();
    }
    Ok(total)
}

fn check_dims<T: Real>(h_int: &HermitianOperator<T>, d_s: usize, d_e: usize) -> Result<()> {
    if d_s == 0 || d_e == 0 || h_int.dim() != d_s * d_e {
        return Err(Error::DimensionMismatch { expected: d_s * d_e, found: h_int.dim() });
    }
    Ok(())
}

/// Hermitian system operators `S_k` with `H_int = Σ_k S_k ⊗ E_k` for an
/// orthonormal Hermitian basis `{E_k}` of the environment. The pointer cost
/// of a basis `V` is `2 Σ_k ‖offdiag(V† S_k V)‖²`.
fn system_components<T: Real>(h_int: &CMatrix<T>, d_s: usize, d_e: usize) -> Vec<CMatrix<T>> {
    let block = |e: usize, f: usize| CMatrix::from_fn(d_s, d_s, |s, t| h_int[(s * d_e + e, t * d_e + f)]);
    let r = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    let mut out = Vec::with_capacity(d_e * d_e);
    for e in 0..d_e {
        out.push(block(e, e));
        for f in e + 1..d_e {
            let a = block(e, f);
            let b = block(f, e);
            out.push((&a + &b) * cr(r));
            out.push((&a - &b) * C::new(T::zero(), r));
        }
    }
    out
}

fn offdiag_cost<T: Real>(components: &[CMatrix<T>], v: &CMatrix<T>) -> T {
    let mut total = T::zero();
    for s in components {
        let m = v.adjoint() * s * v;
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                if i != j {
                    total += m[(i, j)].modulus_squared();
                }
            }
        }
    }
    total * T::lit(2.0)
}

/// Jacobi sweeps for joint diagonalization of Hermitian matrices: each plane
/// rotation maximizes the summed squared diagonal over its `(p, q)` plane in
/// closed form, so the off-diagonal cost never increases. Returns the cost
/// after each sweep; stops early once every rotation is negligible.
fn joint_diagonalize<T: Real>(components: &[CMatrix<T>], v: &mut CMatrix<T>, sweeps: usize) -> Vec<T> {
    let d = v.nrows();
    let mut mats: Vec<CMatrix<T>> = components.iter().map(|s| v.adjoint() * s * &*v).collect();
    let threshold = T::tol(1e-14);
    let mut history = Vec::with_capacity(sweeps);
    for _ in 0..sweeps {
        let mut largest = T::zero();
        for p in 0..d {
            for q in p + 1..d {
                let mut g = DMatrix::<T>::zeros(3, 3);
                for m in &mats {
                    let h = [m[(p, p)].re - m[(q, q)].re, T::lit(2.0) * m[(p, q)].re, T::lit(2.0) * m[(p, q)].im];
                    for a in 0..3 {
                        for b in 0..3 {
                            g[(a, b)] += h[a] * h[b];
                        }
                    }
                }
                let (_, vecs) = eigh_real_descending(&g);
                let (mut x, mut y, mut z) = (vecs[(0, 0)], vecs[(1, 0)], vecs[(2, 0)]);
                if x < T::zero() {
                    x = -x;
                    y = -y;
                    z = -z;
                }
                let c = ((T::one() + x) / T::lit(2.0)).sqrt();
                let s = C::new(y, -z) / cr(T::lit(2.0) * c);
                let size = s.modulus();
                if size <= threshold {
                    continue;
                }
                largest = largest.max(size);
                let cc = cr(c);
                for m in mats.iter_mut().chain(std::iter::once(&mut *v)) {
                    rotate_columns(m, p, q, cc, s);
                }
                for m in mats.iter_mut() {
                    rotate_rows(m, p, q, cc, s);
                }
            }
        }
        history.push(offdiag_cost_rotated(&mats));
        if largest <= threshold {
            break;
        }
    }
    history
}

fn offdiag_cost_rotated<T: Real>(mats: &[CMatrix<T>]) -> T {
    let mut total = T::zero();
    for m in mats {
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                if i != j {
                    total += m[(i, j)].modulus_squared();
                }
            }
        }
    }
    total * T::lit(2.0)
}

// M ← M·R with R's (p, q) block [[c, −s̄], [s, c]].
fn rotate_columns<T: Real>(m: &mut CMatrix<T>, p: usize, q: usize, c: C<T>, s: C<T>) {
    for i in 0..m.nrows() {
        let (a, b) = (m[(i, p)], m[(i, q)]);
        m[(i, p)] = c * a + s * b;
        m[(i, q)] = c * b - s.conj() * a;
    }
}

// M ← R†·M.
fn rotate_rows<T: Real>(m: &mut CMatrix<T>, p: usize, q: usize, c: C<T>, s: C<T>) {
    for j in 0..m.ncols() {
        let (a, b) = (m[(p, j)], m[(q, j)]);
        m[(p, j)] = c * a + s.conj() * b;
        m[(q, j)] = c * b - s * a;
    }
}

/// Phase-fixes each vector and orders them by the position of their
/// dominant component.
fn canonicalize<T: Real>(v: &CMatrix<T>) -> CMatrix<T> {
    let mut v = v.clone();
    fix_column_phases(&mut v);
    let near = T::lit(1.0 - 1e-8);
    let pivot = |j: usize| {
        let col = v.column(j);
        let max = col.iter().fold(T::zero(), |m, z| m.max(z.modulus()));
        col.iter().position(|z| z.modulus() >= near * max).unwrap_or(0)
    };
    let mut order: Vec<usize> = (0..v.ncols()).collect();
    order.sort_by_key(|&j| pivot(j));
    CMatrix::from_fn(v.nrows(), v.ncols(), |i, k| v[(i, order[k])])
}

const REFINED_CANDIDATES: usize = 3;

/// Searches for the system basis whose projectors best commute with `H_int`.
///
/// Candidates are the canonical basis, the eigenbasis of a random
/// environment contraction `Tr_E[H_int (I⊗R)]`, and `10·d_S` Haar-random
/// bases. The best few are refined by up to `budget` Jacobi sweeps over
/// plane rotations. Ties keep the earliest candidate, so `H_int = 0`
/// returns the canonical basis.
pub fn pointer_basis_search<T: Real>(
    h_int: &HermitianOperator<T>,
    d_s: usize,
    d_e: usize,
    budget: usize,
    seed: u64,
) -> Result<PointerBasis<T>> {
    check_dims(h_int, d_s, d_e)?;
    if budget == 0 {
        return Err(Error::InvalidParameter("pointer search budget must be at least 1".into()));
    }
    let components = system_components(h_int.matrix(), d_s, d_e);
    let mut rng = seeded_rng(seed, 0);

    let mut candidates = vec![identity::<T>(d_s)];
    let r = random_hermitian::<T>(d_e, &mut rng);
    let contraction = trace_out_local(&(h_int.matrix() * kron(&identity(d_s), &r)), &[d_s, d_e], &[0]);
    candidates.push(eigh(&crate::linalg::hermitian_part(&contraction)).1);
    candidates.extend((0..10 * d_s).map(|_| haar_unitary::<T>(d_s, &mut rng)));

    let mut scored: Vec<(T, CMatrix<T>)> = candidates.into_iter().map(|v| (offdiag_cost(&components, &v), v)).collect();
    scored.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    scored.truncate(REFINED_CANDIDATES);

    let screened = scored[0].0;
    let mut histories = Vec::with_capacity(scored.len());
    let mut best: Option<(T, CMatrix<T>)> = None;
    for (initial_cost, mut v) in scored {
        let history = if initial_cost > T::zero() {
            joint_diagonalize(&components, &mut v, budget)
        } else {
            Vec::new()
        };
        let cost = history.last().copied().unwrap_or(initial_cost).min(initial_cost);
        histories.push(history);
        if best.as_ref().is_none_or(|(b, _)| cost < *b) {
            best = Some((cost, v));
        }
    }
    let (_, v) = best.expect("at least one candidate");

    let sweeps = histories.iter().map(Vec::len).max().unwrap_or(0);
    let mut trace = vec![(0, screened)];
    let mut running = screened;
    for k in 0..sweeps {
        for h in &histories {
            if let Some(&c) = h.get(k).or(h.last()) {
                running = running.min(c);
            }
        }
        trace.push((k + 1, running));
    }

    let vectors = canonicalize(&v);
    let cost = offdiag_cost(&components, &vectors);
    let defect = commutator_defect_matrix(&label_observable(&vectors), h_int.matrix(), d_e);
    Ok(PointerBasis { vectors, defect, cost, trace })
}
