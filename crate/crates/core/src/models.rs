//! Deterministic constructors for reference Hamiltonians.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::quantum::HermitianOperator;
use crate::random::{ginibre, haar_unitary, seeded_rng};
use crate::scalar::{c, cr, CMatrix, Real};

const GUE_STREAM: u64 = 0x6775_6500;
const SCRAMBLE_STREAM: u64 = 0x7363_7200;

pub fn pauli_x<T: Real>() -> CMatrix<T> {
    CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
}

pub fn pauli_y<T: Real>() -> CMatrix<T> {
    CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
}

pub fn pauli_z<T: Real>() -> CMatrix<T> {
    CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
}

/// `op` acting on qubit `site` of an `n`-qubit register (site 0 is the
/// most significant tensor factor).
pub fn on_site<T: Real>(op: &CMatrix<T>, site: usize, n: usize) -> CMatrix<T> {
    let left = linalg::identity::<T>(1 << site);
    let right = linalg::identity::<T>(1 << (n - site - 1));
    linalg::kron(&linalg::kron(&left, op), &right)
}

/// `H = −J Σ σᶻ_i σᶻ_{i+1} − g Σ σˣ_i` on `n` qubits, open or periodic.
pub fn transverse_field_ising<T: Real>(n: usize, coupling: T, field: T, periodic: bool) -> Result<HermitianOperator<T>> {
    if !(2..=12).contains(&n) {
        return Err(Error::InvalidParameter(format!("Ising chain needs 2 ≤ n ≤ 12, got {n}")));
    }
    let dim = 1usize << n;
    let bonds: Vec<(usize, usize)> = (0..n - 1)
        .map(|i| (i, i + 1))
        .chain(periodic.then_some((n - 1, 0)))
        .collect();
    let spin = |b: usize, site: usize| -> T {
        if (b >> (n - 1 - site)) & 1 == 0 { T::one() } else { -T::one() }
    };
    let mut m = CMatrix::zeros(dim, dim);
    for b in 0..dim {
        let zz = bonds.iter().fold(T::zero(), |acc, &(i, j)| acc + spin(b, i) * spin(b, j));
        m[(b, b)] = cr(-coupling * zz);
        for site in 0..n {
            let flipped = b ^ (1 << (n - 1 - site));
            m[(flipped, b)] += cr(-field);
        }
    }
    Ok(HermitianOperator::from_hermitian_part(&m))
}

/// Harmonic oscillator `p²/2m + mω²x²/2` in the lowest `dim` number
/// states, with `x` and `p` built from truncated ladder operators.
///
/// The truncation only corrupts the top level, so every other eigenvalue
/// is exactly `ω(n + ½)`.
pub fn truncated_sho<T: Real>(dim: usize, mass: T, omega: T) -> Result<HermitianOperator<T>> {
    if dim < 4 {
        return Err(Error::InvalidParameter(format!("oscillator truncation needs dim ≥ 4, got {dim}")));
    }
    if !(mass > T::zero() && omega > T::zero()) {
        return Err(Error::InvalidParameter("mass and frequency must be positive".into()));
    }
    let mut a = CMatrix::<T>::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = cr(T::from_usize(n).unwrap().sqrt());
    }
    let ad = a.adjoint();
    let x = (&a + &ad) * cr((T::one() / (T::lit(2.0) * mass * omega)).sqrt());
    let p = (&ad - &a) * crate::scalar::C::new(T::zero(), (mass * omega / T::lit(2.0)).sqrt());
    let h = &p * &p * cr(T::one() / (T::lit(2.0) * mass)) + &x * &x * cr(T::lit(0.5) * mass * omega * omega);
    Ok(HermitianOperator::from_hermitian_part(&h))
}

/// `H = (A + A†)/2` with `A` a seeded matrix of iid standard complex normals.
pub fn gue_random<T: Real>(dim: usize, seed: u64) -> Result<HermitianOperator<T>> {
    if dim < 2 {
        return Err(Error::InvalidParameter(format!("GUE needs dim ≥ 2, got {dim}")));
    }
    let mut rng = seeded_rng(seed, GUE_STREAM);
    let a = ginibre::<T>(dim, &mut rng);
    Ok(HermitianOperator::from_hermitian_part(&a))
}

/// `(U H U†, U)` with `U` Haar-random from `seed`.
pub fn scramble<T: Real>(h: &HermitianOperator<T>, seed: u64) -> (HermitianOperator<T>, CMatrix<T>) {
    let mut rng = seeded_rng(seed, SCRAMBLE_STREAM);
    let u = haar_unitary::<T>(h.dim(), &mut rng);
    let scrambled = HermitianOperator::from_hermitian_part(&(&u * h.matrix() * u.adjoint()));
    (scrambled, u)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Ising,
    Sho,
    Gue,
    /// Ising chain conjugated by a seeded Haar-random frame.
    Scrambled,
}

/// Serializable model description accepted by the command-line tool.
///
/// Parameters by kind:
/// * `ising`, `scrambled`: `n`, `J`, `g`, `periodic` (0 or 1)
/// * `sho`: `dim`, `mass`, `omega`
/// * `gue`: `dim`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: ModelKind,
    #[serde(default)]
    pub parameters: BTreeMap<String, f64>,
    #[serde(default)]
    pub seed: u64,
}

/// A built model; `frame` is the scrambling unitary for `scrambled`.
pub struct ModelInstance<T: Real> {
    pub hamiltonian: HermitianOperator<T>,
    pub frame: Option<CMatrix<T>>,
}

impl ModelSpec {
    fn param(&self, name: &str) -> Result<f64> {
        let v = self
            .parameters
            .get(name)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("{:?} model needs parameter `{name}`", self.kind)))?;
        if !v.is_finite() {
            return Err(Error::InvalidParameter(format!("parameter `{name}` is not finite")));
        }
        Ok(v)
    }

    fn count(&self, name: &str) -> Result<usize> {
        let v = self.param(name)?;
        if v < 0.0 || v.fract() != 0.0 {
            return Err(Error::InvalidParameter(format!("parameter `{name}` must be a non-negative integer")));
        }
        Ok(v as usize)
    }

    fn flag(&self, name: &str) -> Result<bool> {
        match self.parameters.get(name) {
            None => Ok(false),
            Some(0.0) => Ok(false),
            Some(1.0) => Ok(true),
            Some(_) => Err(Error::InvalidParameter(format!("parameter `{name}` must be 0 or 1"))),
        }
    }

    pub fn build<T: Real>(&self) -> Result<ModelInstance<T>> {
        match self.kind {
            ModelKind::Ising => Ok(ModelInstance {
                hamiltonian: self.ising()?,
                frame: None,
            }),
            ModelKind::Scrambled => {
                let (hamiltonian, u) = scramble(&self.ising::<T>()?, self.seed);
                Ok(ModelInstance { hamiltonian, frame: Some(u) })
            }
            ModelKind::Sho => Ok(ModelInstance {
                hamiltonian: truncated_sho(self.count("dim")?, T::lit(self.param("mass")?), T::lit(self.param("omega")?))?,
                frame: None,
            }),
            ModelKind::Gue => Ok(ModelInstance {
                hamiltonian: gue_random(self.count("dim")?, self.seed)?,
                frame: None,
            }),
        }
    }

    fn ising<T: Real>(&self) -> Result<HermitianOperator<T>> {
        transverse_field_ising(
            self.count("n")?,
            T::lit(self.param("J")?),
            T::lit(self.param("g")?),
            self.flag("periodic")?,
        )
    }
}
