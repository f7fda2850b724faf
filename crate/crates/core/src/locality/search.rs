use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{conjugate_inverse, expm_skew_hermitian, reunitarize};
use crate::optim::{restarted, RestartResult, SearchOptions};
use crate::quantum::HermitianOperator;
use crate::scalar::{cr, CMatrix, Real};

use super::expansion::{expand_local, locality_profile, LocalityProfile, Multipartition};

/// Step control of the frame descent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DescentSchedule {
    /// Initial step in units of `1/‖H‖²_F`.
    pub initial_step: f64,
    pub growth: f64,
    pub backtrack: f64,
    pub max_backtracks: usize,
    /// Sufficient-decrease constant of the Armijo test.
    pub armijo: f64,
}

impl Default for DescentSchedule {
    fn default() -> Self {
        Self {
            initial_step: 0.1,
            growth: 2.0,
            backtrack: 0.5,
            max_backtracks: 40,
            armijo: 1e-4,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LocalitySearch<T: Real> {
    pub partition: Multipartition<T>,
    pub nonlocal_fraction: T,
    pub profile: LocalityProfile<T>,
    /// Best fraction so far by iteration, as in the mereology search.
    pub trace: Vec<(usize, T)>,
}

/// Non-local fraction of `H' = U†HU` beyond order `k`, and the descent
/// direction `[Π_{>k} H', H']` on the unitary group.
fn fraction_and_direction<T: Real>(h: &CMatrix<T>, u: &CMatrix<T>, dims: &[usize], k: usize, total: T) -> (T, CMatrix<T>) {
    let local = conjugate_inverse(u, h);
    let mut e = expand_local(&local, dims);
    let high_weight = e
        .coefficients()
        .iter()
        .enumerate()
        .filter(|&(i, _)| e.order(i) > k)
        .fold(T::zero(), |a, (_, &c)| a + c * c);
    e.retain_orders_above(k);
    let high = e.to_local_operator();
    (high_weight / total, &high * &local - &local * &high)
}

fn fraction<T: Real>(h: &CMatrix<T>, u: &CMatrix<T>, dims: &[usize], k: usize, total: T) -> T {
    let e = expand_local(&conjugate_inverse(u, h), dims);
    locality_profile(&e).weight_by_order.iter().skip(k + 1).fold(T::zero(), |a, &w| a + w) / total
}

/// Gradient descent of the non-local fraction along geodesics `U·exp(ηY)`
/// with Armijo backtracking.
fn descend<T: Real>(h: &CMatrix<T>, start: CMatrix<T>, dims: &[usize], k: usize, steps: usize, schedule: &DescentSchedule) -> RestartResult<T> {
    let total = h.norm_squared();
    let mut u = start;
    let (mut value, mut direction) = fraction_and_direction(h, &u, dims, k, total);
    let mut history = vec![value];
    let mut eta = T::lit(schedule.initial_step) / total;
    for iteration in 0..steps {
        let slope = T::lit(2.0) * direction.norm_squared() / total;
        if slope > T::zero() {
            for _ in 0..schedule.max_backtracks {
                let candidate = &u * expm_skew_hermitian(&(&direction * cr(eta)));
                let v = fraction(h, &candidate, dims, k, total);
                if v <= value - T::lit(schedule.armijo) * eta * slope {
                    u = if iteration % 50 == 49 { reunitarize(&candidate) } else { candidate };
                    eta *= T::lit(schedule.growth);
                    let (v, d) = fraction_and_direction(h, &u, dims, k, total);
                    value = v;
                    direction = d;
                    break;
                }
                eta *= T::lit(schedule.backtrack);
            }
        }
        history.push(value);
    }
    let best = history.iter().copied().fold(history[0], |a, b| a.min(b));
    let history = history
        .iter()
        .scan(history[0], |run, &v| {
            *run = run.min(v);
            Some(*run)
        })
        .collect();
    RestartResult { frame: u, value: best, history }
}

/// Searches frames of a multipartition with factor dimensions `dims` for
/// the smallest weight beyond order `k`. Restart 0 starts from the
/// presented frame.
pub fn local_factorization_search<T: Real>(
    h: &HermitianOperator<T>,
    dims: &[usize],
    k: usize,
    restarts: usize,
    steps: usize,
    seed: u64,
) -> Result<LocalitySearch<T>> {
    local_factorization_search_with(h, dims, k, &SearchOptions::new(restarts, steps, seed), &DescentSchedule::default())
}

pub fn local_factorization_search_with<T: Real>(
    h: &HermitianOperator<T>,
    dims: &[usize],
    k: usize,
    options: &SearchOptions,
    schedule: &DescentSchedule,
) -> Result<LocalitySearch<T>> {
    let start = Multipartition::<T>::identity(dims.to_vec())?;
    start.check_dim(h.dim())?;
    if k == 0 || k > dims.len() {
        return Err(Error::InvalidParameter(format!("locality order {k} outside 1..={}", dims.len())));
    }
    if options.restarts == 0 || options.steps == 0 {
        return Err(Error::InvalidParameter("restarts and steps must be at least 1".into()));
    }
    let finish = |frame: CMatrix<T>, trace| -> Result<LocalitySearch<T>> {
        let partition = start.with_frame(frame)?;
        let profile = locality_profile(&expand_local(&partition.operator_to_local(h.matrix())?, dims));
        Ok(LocalitySearch {
            nonlocal_fraction: profile.nonlocal_fraction(k),
            partition,
            profile,
            trace,
        })
    };
    if h.matrix().norm_squared() == T::zero() {
        return finish(start.frame().clone(), vec![(0, T::zero())]);
    }
    let outcome = restarted(start.frame(), options, |initial, _| descend(h.matrix(), initial, dims, k, options.steps, schedule));
    finish(outcome.frame, outcome.trace)
}
