//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use emergence::quantum::{DensityOperator, HermitianOperator, StateVector};
use emergence::random::{ginibre, random_hermitian, random_unit_vector, seeded_rng, SeededRng};
use emergence::scalar::{CMatrix, CVector, C};
use nalgebra::DMatrix;

pub fn rng(seed: u64) -> SeededRng {
    seeded_rng(seed, 0xfeed)
}

pub fn random_h(dim: usize, seed: u64) -> HermitianOperator<f64> {
    HermitianOperator::from_hermitian_part(&random_hermitian(dim, &mut rng(seed)))
}

pub fn random_state(dim: usize, seed: u64) -> StateVector<f64> {
    StateVector::new(random_unit_vector(dim, &mut rng(seed))).unwrap()
}

/// `G G† / Tr(G G†)` for a Ginibre `G`: a full-rank random density matrix.
pub fn random_density(dim: usize, seed: u64) -> DensityOperator<f64> {
    let g = ginibre::<f64>(dim, &mut rng(seed));
    let m = &g * g.adjoint();
    let tr = m.trace();
    DensityOperator::new(m / tr).unwrap()
}

/// Fixed-step classical Runge–Kutta for `ψ̇ = −iHψ`.
pub fn rk4(h: &CMatrix<f64>, psi: &CVector<f64>, t: f64, dt: f64) -> CVector<f64> {
    let steps = (t / dt).ceil().max(1.0) as usize;
    let dt = t / steps as f64;
    let mi = C::new(0.0, -1.0);
    let f = |y: &CVector<f64>| (h * y) * mi;
    let mut y = psi.clone();
    for _ in 0..steps {
        let k1 = f(&y);
        let k2 = f(&(&y + &k1 * C::from(dt / 2.0)));
        let k3 = f(&(&y + &k2 * C::from(dt / 2.0)));
        let k4 = f(&(&y + &k3 * C::from(dt)));
        y += (k1 + k2 * C::from(2.0) + k3 * C::from(2.0) + k4) * C::from(dt / 6.0);
    }
    y
}

/// Partial trace by explicit multi-index enumeration, first factor most
/// significant.
pub fn brute_partial_trace(m: &CMatrix<f64>, dims: &[usize], keep: &[usize]) -> CMatrix<f64> {
    let total: usize = dims.iter().product();
    let digits = |mut i: usize| {
        let mut out = vec![0; dims.len()];
        for k in (0..dims.len()).rev() {
            out[k] = i % dims[k];
            i /= dims[k];
        }
        out
    };
    let kept_dim: usize = keep.iter().map(|&k| dims[k]).product();
    let kept_index = |d: &[usize]| keep.iter().fold(0, |acc, &k| acc * dims[k] + d[k]);
    let mut out = CMatrix::zeros(kept_dim, kept_dim);
    for i in 0..total {
        let di = digits(i);
        for j in 0..total {
            let dj = digits(j);
            let traced_equal = (0..dims.len()).filter(|k| !keep.contains(k)).all(|k| di[k] == dj[k]);
            if traced_equal {
                out[(kept_index(&di), kept_index(&dj))] += m[(i, j)];
            }
        }
    }
    out
}

/// Entropy from eigenvalues computed by an independent route: the real
/// symmetric 2d×2d embedding of the Hermitian matrix, whose spectrum is
/// that of `m` with every eigenvalue doubled.
pub fn brute_entropy(m: &CMatrix<f64>) -> f64 {
    let d = m.nrows();
    let big = DMatrix::from_fn(2 * d, 2 * d, |i, j| {
        let z = m[(i % d, j % d)];
        match (i < d, j < d) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let mut ev: Vec<f64> = big.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev.chunks(2).map(|p| p[0]).filter(|&l| l > 1e-14).map(|l| -l * l.ln()).sum()
}

/// Least-squares rigid alignment (orthogonal Procrustes with centering)
/// of `x` onto `y`; returns the largest pointwise residual.
pub fn procrustes_residual(x: &DMatrix<f64>, y: &DMatrix<f64>) -> f64 {
    let m = x.ncols().max(y.ncols());
    let pad = |a: &DMatrix<f64>| {
        let mut p = DMatrix::zeros(a.nrows(), m);
        p.view_mut((0, 0), (a.nrows(), a.ncols())).copy_from(a);
        let c = p.row_mean();
        for mut r in p.row_iter_mut() {
            r -= &c;
        }
        p
    };
    let (x, y) = (pad(x), pad(y));
    let svd = (x.transpose() * &y).svd(true, true);
    let r = svd.u.unwrap() * svd.v_t.unwrap();
    let aligned = &x * r;
    (0..x.nrows()).map(|i| (aligned.row(i) - y.row(i)).norm()).fold(0.0, f64::max)
}
