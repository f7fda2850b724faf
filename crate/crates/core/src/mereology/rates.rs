//! Early-time growth rates of entanglement and pointer delocalization.
//!
//! A rate is the `t²` coefficient of a quantity that starts at a stationary
//! minimum. Samples are taken at `t_i = window·i/20`, `i = 1..20`, and the
//! increments `f(t_i) − f(0)` are fitted with the monomials `τ, …, τ⁶` in
//! `τ = t/window`; the higher terms soak up Taylor corrections that a bare
//! `Λt²` fit would fold into `Λ`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{eigh, identity, kron};
use crate::quantum::{diagonalize, reduced_from_local_state, HermitianOperator, StateVector};
use crate::scalar::{cr, CMatrix, CVector, Real};
use crate::tolerance;

use super::{BipartiteSplit, PointerBasis};

pub const RATE_SAMPLES: usize = 20;
pub const WINDOW_SCALE: f64 = 0.1;
const FIT_ORDER: usize = 6;

/// `0.1/‖H‖_F`, or 1 for `H = 0`.
pub fn default_window<T: Real>(h: &HermitianOperator<T>) -> T {
    let n = h.frobenius_norm();
    if n > T::zero() {
        T::lit(WINDOW_SCALE) / n
    } else {
        T::one()
    }
}

pub(crate) fn sample_times<T: Real>(window: T) -> Vec<T> {
    (1..=RATE_SAMPLES)
        .map(|i| window * T::from_usize(i).unwrap() / T::from_usize(RATE_SAMPLES).unwrap())
        .collect()
}

/// `t²` coefficient of increments sampled at [`sample_times`].
pub(crate) fn quadratic_coefficient<T: Real>(increments: &[T], window: T) -> T {
    let n = increments.len();
    let design = DMatrix::from_fn(n, FIT_ORDER, |i, k| {
        let tau = T::from_usize(i + 1).unwrap() / T::from_usize(n).unwrap();
        tau.powi(k as i32 + 1)
    });
    let rhs = DVector::from_column_slice(increments);
    let coef = design
        .svd(true, true)
        .solve(&rhs, T::tol(1e-15))
        .expect("SVD with both factors computed");
    coef[1] / (window * window)
}

fn check_window<T: Real>(window: T) -> Result<()> {
    if window > T::zero() && window.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("rate window must be positive, got {}", window.as_f64())))
    }
}

/// Local (product-basis) amplitudes of `psi0`, after checking that it has
/// Schmidt rank one across the split.
fn product_local<T: Real>(split: &BipartiteSplit<T>, psi0: &StateVector<T>) -> Result<CVector<T>> {
    let local = split.factorization().state_to_local(psi0.amplitudes())?;
    let rho_s = reduced_from_local_state(&local, &[split.d_s(), split.d_e()], &[0]);
    let top = eigh(&rho_s).0.last().copied().unwrap_or_else(T::zero);
    let deficit = T::one() - top;
    if deficit > T::tol(tolerance::PRODUCT_STATE) {
        return Err(Error::NotProductState(deficit.as_f64()));
    }
    Ok(local)
}

/// Evolves `psi0` under `h` and returns `g(local amplitudes)` at `t = 0` and
/// at every sample time.
fn sampled<T: Real, G: Fn(&CVector<T>) -> T>(
    h: &HermitianOperator<T>,
    split: &BipartiteSplit<T>,
    psi0: &StateVector<T>,
    window: T,
    g: G,
) -> Result<Vec<T>> {
    let system = diagonalize(h);
    let mut values = vec![g(&split.factorization().state_to_local(psi0.amplitudes())?)];
    for t in sample_times(window) {
        let psi = system.evolve(psi0, t)?;
        values.push(g(&split.factorization().state_to_local(psi.amplitudes())?));
    }
    Ok(values)
}

fn increments<T: Real>(values: &[T]) -> Vec<T> {
    values[1..].iter().map(|&v| v - values[0]).collect()
}

/// Early-time growth coefficient `Λ` of `S_lin(t) = 1 − Tr ρ_S(t)² ≈ Λt²`
/// for an initial product state.
pub fn entanglement_growth_rate<T: Real>(
    h: &HermitianOperator<T>,
    split: &BipartiteSplit<T>,
    psi0: &StateVector<T>,
    window: T,
) -> Result<T> {
    check_window(window)?;
    split.factorization().check_dim(h.dim())?;
    product_local(split, psi0)?;
    let dims = [split.d_s(), split.d_e()];
    let values = sampled(h, split, psi0, window, |local| {
        let rho = reduced_from_local_state(local, &dims, &[0]);
        T::one() - (&rho * &rho).trace().re
    })?;
    Ok(quadratic_coefficient(&increments(&values), window))
}

/// Early-time growth coefficient of `Var(Q⊗I)` for the pointer-label
/// observable `Q = Σ n |φ_n⟩⟨φ_n|`.
pub fn delocalization_rate<T: Real>(
    h: &HermitianOperator<T>,
    split: &BipartiteSplit<T>,
    psi0: &StateVector<T>,
    pointer: &PointerBasis<T>,
    window: T,
) -> Result<T> {
    check_window(window)?;
    split.factorization().check_dim(h.dim())?;
    if pointer.dim() != split.d_s() {
        return Err(Error::DimensionMismatch { expected: split.d_s(), found: pointer.dim() });
    }
    product_local(split, psi0)?;
    let q = kron(pointer.observable().matrix(), &identity(split.d_e()));
    let q2 = &q * &q;
    let values = sampled(h, split, psi0, window, |local| {
        let mean = local.dotc(&(&q * local)).re;
        local.dotc(&(&q2 * local)).re - mean * mean
    })?;
    Ok(quadratic_coefficient(&increments(&values), window))
}

/// Rates for `|a⟩⊗|χ⟩` averaged over Haar-random environment states `|χ⟩`,
/// evaluated for a Hamiltonian given by its eigensystem in the product basis.
///
/// Both quantities are quartic in `|χ⟩`, so the average follows exactly from
/// `E[|χ⟩⟨χ|^{⊗2}] = (I + SWAP)/(d_E(d_E+1))`: with
/// `X(t) = e^{−iHt}(|a⟩⟨a|⊗I)e^{iHt}`,
/// `E[Tr ρ_S²] = (Tr (Tr_E X)² + Tr (Tr_S X)²)/(d_E(d_E+1))` and
/// `E[⟨A⟩²] = ((Tr AX)² + Tr (AX)²)/(d_E(d_E+1))`.
pub(crate) struct AveragedRates<'a, T: Real> {
    pub energies: &'a [T],
    /// Eigenvectors of the Hamiltonian in the product basis.
    pub vectors: &'a CMatrix<T>,
    pub d_s: usize,
    pub d_e: usize,
}

impl<T: Real> AveragedRates<'_, T> {
    /// `(entanglement rate, delocalization rate)` for system state `a` and
    /// system observable `q`.
    pub fn rates(&self, a: &CVector<T>, q: &CMatrix<T>, window: T) -> (T, T) {
        let (d_s, d_e) = (self.d_s, self.d_e);
        let d = d_s * d_e;
        // Φ(0) = V†A with A = [a⊗e_0, …, a⊗e_{d_E−1}]
        let phi0 = CMatrix::from_fn(d, d_e, |n, j| {
            (0..d_s).fold(cr(T::zero()), |acc, s| acc + self.vectors[(s * d_e + j, n)].conj() * a[s])
        });
        let q_full = kron(q, &identity(d_e));
        let norm = T::from_usize(d_e * (d_e + 1)).unwrap();
        let de = T::from_usize(d_e).unwrap();

        let evaluate = |t: T| -> (T, T) {
            let mut rotated = phi0.clone();
            for (n, &e) in self.energies.iter().enumerate() {
                let phase = nalgebra::Complex::new((e * t).cos(), -(e * t).sin());
                for z in rotated.row_mut(n).iter_mut() {
                    *z *= phase;
                }
            }
            let phi = self.vectors * rotated;
            let mut rho_s = CMatrix::<T>::zeros(d_s, d_s);
            let mut rho_e = CMatrix::<T>::zeros(d_e, d_e);
            for j in 0..d_e {
                let m = CMatrix::from_fn(d_s, d_e, |s, e| phi[(s * d_e + e, j)]);
                rho_s += &m * m.adjoint();
                rho_e += m.adjoint() * &m;
            }
            let purity = ((&rho_s * &rho_s).trace().re + (&rho_e * &rho_e).trace().re) / norm;
            let qphi = &q_full * &phi;
            let b = phi.adjoint() * &qphi;
            let tr_b = b.trace().re;
            let second = qphi.norm_squared() / de;
            let first_sq = (tr_b * tr_b + b.norm_squared()) / norm;
            (T::one() - purity, second - first_sq)
        };

        let (e0, v0) = evaluate(T::zero());
        let (mut ent, mut var) = (Vec::with_capacity(RATE_SAMPLES), Vec::with_capacity(RATE_SAMPLES));
        for t in sample_times(window) {
            let (e, v) = evaluate(t);
            ent.push(e - e0);
            var.push(v - v0);
        }
        (quadratic_coefficient(&ent, window), quadratic_coefficient(&var, window))
    }
}
