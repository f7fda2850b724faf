use nalgebra::ComplexField;

use crate::error::{Error, Result};
use crate::quantum::{HermitianOperator, Spectrum, StateVector};
use crate::scalar::{cr, CMatrix, CVector, Real, C};
use crate::tolerance;

/// Phases each energy-basis coefficient: `ψ_n ↦ ψ_n e^{−iE_n t}`.
pub fn spectral_evolve<T: Real>(spectrum: &Spectrum<T>, coeffs: &CVector<T>, t: T) -> Result<CVector<T>> {
    if coeffs.len() != spectrum.len() {
        return Err(Error::DimensionMismatch { expected: spectrum.len(), found: coeffs.len() });
    }
    Ok(CVector::from_iterator(
        coeffs.len(),
        spectrum.energies().iter().zip(coeffs.iter()).map(|(&e, &z)| {
            let phase = e * t;
            z * C::new(phase.cos(), -phase.sin())
        }),
    ))
}

/// Settings for the adaptive Dormand–Prince integrator.
#[derive(Clone, Copy, Debug)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self { rtol: tolerance::ODE, atol: tolerance::ODE, max_steps: 50_000_000 }
    }
}

/// `exp(−iHt)ψ` by direct integration of `iψ̇ = Hψ`, independent of any
/// eigendecomposition. Negative `t` integrates backwards.
pub fn schrodinger_evolve_dense<T: Real>(
    h: &HermitianOperator<T>,
    psi: &StateVector<T>,
    t: T,
) -> Result<StateVector<T>> {
    schrodinger_evolve_dense_with(h, psi, t, OdeOptions::default())
}

pub fn schrodinger_evolve_dense_with<T: Real>(
    h: &HermitianOperator<T>,
    psi: &StateVector<T>,
    t: T,
    opts: OdeOptions,
) -> Result<StateVector<T>> {
    if h.dim() != psi.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), found: psi.dim() });
    }
    let y = dopri5(h.matrix(), psi.amplitudes().clone(), t, opts)?;
    Ok(StateVector::from_raw(y))
}

// Dormand–Prince 5(4) tableau (the node constants are unused: the
// right-hand side is autonomous).
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = B1 - 5179.0 / 57600.0;
const E3: f64 = B3 - 7571.0 / 16695.0;
const E4: f64 = B4 - 393.0 / 640.0;
const E5: f64 = B5 - -92097.0 / 339200.0;
const E6: f64 = B6 - 187.0 / 2100.0;
const E7: f64 = -1.0 / 40.0;

fn dopri5<T: Real>(h: &CMatrix<T>, mut y: CVector<T>, t_end: T, opts: OdeOptions) -> Result<CVector<T>> {
    let span = t_end.abs();
    if span == T::zero() {
        return Ok(y);
    }
    let sign = if t_end < T::zero() { -T::one() } else { T::one() };
    // f(y) = −i H y, with the direction of integration folded in
    let minus_i = C::new(T::zero(), -sign);
    let f = |v: &CVector<T>| -> CVector<T> { (h * v) * minus_i };
    let k = |x: f64| cr::<T>(T::lit(x));

    let h_norm = h.norm();
    let rtol = T::lit(opts.rtol);
    let atol = T::lit(opts.atol);
    let mut step = if h_norm > T::zero() { (T::lit(0.01) / h_norm).min(span) } else { span };
    let mut elapsed = T::zero();
    let mut k1 = f(&y);
    let mut steps = 0usize;
    let n = T::from_usize(y.len()).unwrap();

    while elapsed < span {
        steps += 1;
        if steps > opts.max_steps {
            return Err(Error::InvalidParameter("ODE step budget exhausted".into()));
        }
        let last = elapsed + step >= span;
        if last {
            step = span - elapsed;
        }
        let hs = cr(step);
        let k2 = f(&(&y + &k1 * (hs * k(A21))));
        let k3 = f(&(&y + (&k1 * k(A31) + &k2 * k(A32)) * hs));
        let k4 = f(&(&y + (&k1 * k(A41) + &k2 * k(A42) + &k3 * k(A43)) * hs));
        let k5 = f(&(&y + (&k1 * k(A51) + &k2 * k(A52) + &k3 * k(A53) + &k4 * k(A54)) * hs));
        let k6 = f(&(&y + (&k1 * k(A61) + &k2 * k(A62) + &k3 * k(A63) + &k4 * k(A64) + &k5 * k(A65)) * hs));
        let y_new = &y + (&k1 * k(B1) + &k3 * k(B3) + &k4 * k(B4) + &k5 * k(B5) + &k6 * k(B6)) * hs;
        let k7 = f(&y_new);
        let err_vec = (&k1 * k(E1) + &k3 * k(E3) + &k4 * k(E4) + &k5 * k(E5) + &k6 * k(E6) + &k7 * k(E7)) * hs;

        let mut acc = T::zero();
        for i in 0..y.len() {
            let scale = atol + rtol * y[i].modulus().max(y_new[i].modulus());
            let r = err_vec[i].modulus() / scale;
            acc += r * r;
        }
        let err = (acc / n).sqrt();

        if err <= T::one() {
            elapsed = if last { span } else { elapsed + step };
            y = y_new;
            k1 = k7;
            let grow = if err == T::zero() {
                T::lit(5.0)
            } else {
                (T::lit(0.9) * err.powf(T::lit(-0.2))).min(T::lit(5.0)).max(T::lit(0.2))
            };
            step *= grow;
        } else {
            step *= (T::lit(0.9) * err.powf(T::lit(-0.2))).max(T::lit(0.2));
        }
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    #[test]
    fn zero_time_is_identity() {
        let s = Spectrum::from_energies(vec![-1.0, 0.5]).unwrap();
        let v = CVector::from_vec(vec![c(0.6, 0.0), c(0.0, 0.8)]);
        assert_eq!(spectral_evolve(&s, &v, 0.0).unwrap(), v);
    }

    #[test]
    fn pure_phase() {
        let s = Spectrum::from_energies(vec![2.0, 3.0]).unwrap();
        let v = CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        let out = spectral_evolve(&s, &v, std::f64::consts::PI).unwrap();
        assert!((out[0] - c(1.0, 0.0)).norm() < 1e-14);
        assert!((out[0].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn length_mismatch() {
        let s = Spectrum::from_energies(vec![0.0, 1.0]).unwrap();
        let v = CVector::<f64>::from_vec(vec![c(1.0, 0.0)]);
        assert!(spectral_evolve(&s, &v, 1.0).is_err());
    }

    #[test]
    fn dense_zero_hamiltonian_leaves_state() {
        let h = HermitianOperator::<f64>::zeros(3);
        let psi = StateVector::basis(3, 1);
        let out = schrodinger_evolve_dense(&h, &psi, 2.0).unwrap();
        assert_eq!(out, psi);
    }

    #[test]
    fn dense_diagonal_matches_phases() {
        let h = HermitianOperator::<f64>::from_real_diagonal(&[-1.0, 0.3, 2.0]);
        let psi = StateVector::normalized(CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 1.0), c(1.0, 1.0)])).unwrap();
        for &t in &[0.7, -1.3] {
            let out = schrodinger_evolve_dense(&h, &psi, t).unwrap();
            let s = Spectrum::from_energies(vec![-1.0, 0.3, 2.0]).unwrap();
            let expect = spectral_evolve(&s, psi.amplitudes(), t).unwrap();
            assert!((out.amplitudes() - expect).norm() < 1e-11);
        }
    }
}
