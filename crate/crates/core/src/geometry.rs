//! Emergent geometry from entanglement: pairwise mutual information between
//! factors, conversion to distances, and classical multidimensional scaling.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::eigh_real_descending;
use crate::quantum::{entropy_of_matrix, reduced_from_local_state, region_entropy, Factorization, StateVector};
use crate::scalar::Real;

/// Symmetric matrix of pairwise mutual informations (nats), zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct MIGraph<T: Real> {
    values: DMatrix<T>,
}

impl<T: Real> MIGraph<T> {
    pub fn from_matrix(values: DMatrix<T>) -> Result<Self> {
        check_symmetric(&values, "mutual-information graph")?;
        if let Some(v) = values.iter().find(|&&v| v < T::tol(-1e-9)) {
            return Err(Error::InvalidParameter(format!("negative mutual information {}", v.as_f64())));
        }
        Ok(Self { values })
    }

    pub fn n_regions(&self) -> usize {
        self.values.nrows()
    }

    pub fn values(&self) -> &DMatrix<T> {
        &self.values
    }

    /// Largest off-diagonal entry, or `None` for fewer than two regions.
    pub fn max_off_diagonal(&self) -> Option<T> {
        let n = self.n_regions();
        (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| self.values[(i, j)]).reduce(T::max)
    }
}

fn check_symmetric<T: Real>(m: &DMatrix<T>, what: &str) -> Result<()> {
    if !m.is_square() {
        return Err(Error::InvalidDistanceMatrix(format!("{what} is not square")));
    }
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidDistanceMatrix(format!("{what} has non-finite entries")));
    }
    let scale = m.iter().fold(T::one(), |a, v| a.max(v.abs()));
    let n = m.nrows();
    for i in 0..n {
        for j in 0..i {
            if (m[(i, j)] - m[(j, i)]).abs() > T::tol(1e-12) * scale {
                return Err(Error::InvalidDistanceMatrix(format!("{what} is not symmetric at ({i}, {j})")));
            }
        }
    }
    Ok(())
}

/// `I(α:β)` for every pair of single factors of `p`. Pairs are evaluated in
/// parallel; the result does not depend on scheduling.
pub fn mi_graph<T: Real>(psi: &StateVector<T>, p: &Factorization<T>) -> Result<MIGraph<T>> {
    let local = p.state_to_local(psi.amplitudes())?;
    let dims = p.dims();
    let n = dims.len();
    let single: Vec<T> = (0..n).map(|a| entropy_of_matrix(&reduced_from_local_state(&local, dims, &[a]))).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let joint: Vec<T> = pairs
        .par_iter()
        .map(|&(a, b)| entropy_of_matrix(&reduced_from_local_state(&local, dims, &[a, b])))
        .collect();
    let mut values = DMatrix::zeros(n, n);
    for (&(a, b), s_ab) in pairs.iter().zip(joint) {
        let i = single[a] + single[b] - s_ab;
        values[(a, b)] = i;
        values[(b, a)] = i;
    }
    Ok(MIGraph { values })
}

/// Symmetric, non-negative distances with zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix<T: Real> {
    values: DMatrix<T>,
}

impl<T: Real> DistanceMatrix<T> {
    pub fn new(values: DMatrix<T>) -> Result<Self> {
        check_symmetric(&values, "distance matrix")?;
        if values.iter().any(|&v| v < T::zero()) {
            return Err(Error::InvalidDistanceMatrix("negative distance".into()));
        }
        if (0..values.nrows()).any(|i| values[(i, i)] != T::zero()) {
            return Err(Error::InvalidDistanceMatrix("nonzero diagonal".into()));
        }
        Ok(Self { values })
    }

    /// Euclidean distances between the rows of `points`.
    pub fn from_points(points: &DMatrix<T>) -> Self {
        let n = points.nrows();
        let values = DMatrix::from_fn(n, n, |i, j| (points.row(i) - points.row(j)).norm());
        Self { values }
    }

    pub fn n(&self) -> usize {
        self.values.nrows()
    }

    pub fn values(&self) -> &DMatrix<T> {
        &self.values
    }
}

/// Parameters of the distance functional `d = −ℓ0 ln(max(I, I_floor)/I_max)`
/// capped at `d_cap` (default `50·ℓ0`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceParams {
    pub l0: f64,
    pub i_floor: f64,
    pub d_cap: Option<f64>,
}

impl Default for DistanceParams {
    fn default() -> Self {
        Self {
            l0: 1.0,
            i_floor: 1e-12,
            d_cap: None,
        }
    }
}

impl DistanceParams {
    pub fn cap(&self) -> f64 {
        self.d_cap.unwrap_or(50.0 * self.l0)
    }
}

/// Maps mutual information to distance, `d(α,β) = min(d_cap,
/// −ℓ0·ln(max(I, I_floor)/I_max))`, so the most entangled pair sits at
/// distance 0 and every factor of `e` less information adds `ℓ0`.
///
/// Fails with [`Error::NoEntanglement`] when no pair carries more than
/// `I_floor`.
pub fn mi_to_distance<T: Real>(g: &MIGraph<T>, l0: T, i_floor: T, d_cap: T) -> Result<DistanceMatrix<T>> {
    if !(l0 > T::zero()) || !(i_floor > T::zero()) || !(d_cap >= T::zero()) {
        return Err(Error::InvalidParameter("need ℓ0 > 0, I_floor > 0 and d_cap ≥ 0".into()));
    }
    let i_max = match g.max_off_diagonal() {
        Some(m) if m > i_floor => m,
        _ => return Err(Error::NoEntanglement),
    };
    let n = g.n_regions();
    let values = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            T::zero()
        } else {
            let d = -l0 * (g.values()[(i, j)].max(i_floor) / i_max).ln();
            d.max(T::zero()).min(d_cap)
        }
    });
    DistanceMatrix::new(values)
}

pub const DEFAULT_TAU: f64 = 0.05;

/// Number of eigenvalues above `τ·max(λ_max, 0)`.
pub fn dimension_estimate<T: Real>(gram_eigenvalues: &[T], tau: T) -> usize {
    let top = gram_eigenvalues.iter().copied().fold(T::zero(), T::max);
    gram_eigenvalues.iter().filter(|&&l| l > tau * top).count()
}

/// Points in `R^m` reconstructed from a distance matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Embedding<T: Real> {
    /// `n × m`, one row per region, centered at the origin.
    pub coordinates: DMatrix<T>,
    /// Every eigenvalue of the double-centred Gram matrix, descending;
    /// negative ones are reported here but never used.
    pub gram_eigenvalues: Vec<T>,
    /// `√(Σ (d − d̂)² / Σ d²)` over pairs; 0 when every distance is 0.
    pub stress: T,
    pub estimated_dimension: usize,
}

impl<T: Real> Embedding<T> {
    pub fn n_points(&self) -> usize {
        self.coordinates.nrows()
    }

    pub fn dimension(&self) -> usize {
        self.coordinates.ncols()
    }

    pub fn negative_eigenvalues(&self) -> impl Iterator<Item = T> + '_ {
        self.gram_eigenvalues.iter().copied().filter(|&l| l < T::zero())
    }
}

/// Classical (Torgerson) MDS with the default dimension threshold.
pub fn classical_mds<T: Real>(d: &DistanceMatrix<T>, m_max: usize) -> Result<Embedding<T>> {
    classical_mds_with(d, m_max, T::lit(DEFAULT_TAU))
}

/// Double-centres `−½D²` into a Gram matrix and embeds with its top
/// eigenpairs. The dimension is [`dimension_estimate`] at `tau`, capped at
/// `m_max`. A single point or an all-zero matrix embeds as zero
/// coordinates with stress 0.
pub fn classical_mds_with<T: Real>(d: &DistanceMatrix<T>, m_max: usize, tau: T) -> Result<Embedding<T>> {
    let n = d.n();
    if n == 0 {
        return Err(Error::InvalidDistanceMatrix("no points".into()));
    }
    if n > 1 && !(1..n).contains(&m_max) {
        return Err(Error::InvalidParameter(format!("embedding dimension {m_max} outside 1..={}", n - 1)));
    }
    let sq = d.values().map(|v| v * v);
    let nt = T::from_usize(n).unwrap();
    let row_mean: Vec<T> = (0..n).map(|i| sq.row(i).sum() / nt).collect();
    let grand = row_mean.iter().fold(T::zero(), |a, &v| a + v) / nt;
    let gram = DMatrix::from_fn(n, n, |i, j| -T::lit(0.5) * (sq[(i, j)] - row_mean[i] - row_mean[j] + grand));
    let (eigenvalues, vectors) = eigh_real_descending(&gram);

    let m = dimension_estimate(&eigenvalues, tau).min(m_max).min(n.saturating_sub(1));
    let mut coordinates = DMatrix::from_fn(n, m, |i, k| vectors[(i, k)] * eigenvalues[k].sqrt());
    // the centring is exact in theory; remove the rounding residue
    for k in 0..m {
        let mean = coordinates.column(k).sum() / nt;
        coordinates.column_mut(k).add_scalar_mut(-mean);
    }
    let embedded = DistanceMatrix::from_points(&coordinates);
    let (mut num, mut den) = (T::zero(), T::zero());
    for i in 0..n {
        for j in 0..i {
            let dij = d.values()[(i, j)];
            let r = dij - embedded.values()[(i, j)];
            num += r * r;
            den += dij * dij;
        }
    }
    let stress = if den > T::zero() { (num / den).sqrt() } else { T::zero() };
    Ok(Embedding {
        coordinates,
        gram_eigenvalues: eigenvalues,
        stress,
        estimated_dimension: m,
    })
}

/// `S_region(ψ′) − S_region(ψ)`: the entanglement change across the
/// boundary of `region`.
pub fn entanglement_perturbation<T: Real>(
    psi: &StateVector<T>,
    psi_prime: &StateVector<T>,
    p: &Factorization<T>,
    region: &[usize],
) -> Result<T> {
    if psi.dim() != psi_prime.dim() {
        return Err(Error::DimensionMismatch { expected: psi.dim(), found: psi_prime.dim() });
    }
    Ok(region_entropy(psi_prime, p, region)? - region_entropy(psi, p, region)?)
}

/// Configuration of the full state → geometry pipeline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometryConfig {
    pub distance: DistanceParams,
    pub m_max: usize,
    pub tau: f64,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        Self {
            distance: DistanceParams::default(),
            m_max: 3,
            tau: DEFAULT_TAU,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EmergentGeometry<T: Real> {
    pub mi: MIGraph<T>,
    pub distances: DistanceMatrix<T>,
    pub embedding: Embedding<T>,
}

/// Mutual-information graph, distances and embedding of `psi`. `m_max` is
/// capped at `n − 1`.
pub fn emergent_geometry<T: Real>(psi: &StateVector<T>, p: &Factorization<T>, config: &GeometryConfig) -> Result<EmergentGeometry<T>> {
    let mi = mi_graph(psi, p)?;
    let dp = &config.distance;
    let distances = mi_to_distance(&mi, T::lit(dp.l0), T::lit(dp.i_floor), T::lit(dp.cap()))?;
    let m_max = config.m_max.min(distances.n().saturating_sub(1)).max(1);
    let embedding = classical_mds_with(&distances, m_max, T::lit(config.tau))?;
    Ok(EmergentGeometry { mi, distances, embedding })
}
