//! Restarted local search over the unitary group.
//!
//! Frames are updated multiplicatively, `U ← U·exp(K)` with `K`
//! skew-Hermitian, so every iterate stays unitary. Restart `r` draws all of
//! its randomness from stream `r` of the search seed, which makes the
//! outcome independent of how restarts are scheduled across threads.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::{expm_skew_hermitian, reunitarize};
use crate::random::{haar_unitary, random_skew_hermitian, seeded_rng, SeededRng};
use crate::scalar::{CMatrix, Real};

/// Budget and seed of a restarted frame search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub restarts: usize,
    pub steps: usize,
    pub seed: u64,
}

impl SearchOptions {
    pub fn new(restarts: usize, steps: usize, seed: u64) -> Self {
        Self { restarts, steps, seed }
    }
}

/// Step-size schedule of the gradient-free perturbation search. Steps are
/// Frobenius norms of the skew-Hermitian generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepSchedule {
    pub initial: f64,
    /// Factor applied after an accepted move.
    pub growth: f64,
    /// Factor applied after a rejected move (geometric decay).
    pub decay: f64,
    pub min: f64,
    pub max: f64,
}

impl Default for StepSchedule {
    fn default() -> Self {
        Self {
            initial: 0.5,
            growth: 1.5,
            decay: 0.93,
            min: 1e-7,
            max: 3.0,
        }
    }
}

/// Best frame found, which restart found it, and the global best-so-far
/// objective trace. Iteration 0 is the starting frame of restart 0;
/// restart `r`, step `s` is iteration `r·steps + s + 1`.
#[derive(Clone, Debug)]
pub struct SearchOutcome<T: Real> {
    pub frame: CMatrix<T>,
    pub value: T,
    pub restart: usize,
    pub trace: Vec<(usize, T)>,
}

/// Result of one restart: final frame, its value, and the best-so-far value
/// after the start and after every step (`steps + 1` entries).
pub(crate) struct RestartResult<T: Real> {
    pub frame: CMatrix<T>,
    pub value: T,
    pub history: Vec<T>,
}

/// Runs `local` once per restart, in parallel, and merges the results.
/// Restart 0 starts from `start`; the others start from a Haar-random frame
/// drawn from their own stream.
pub(crate) fn restarted<T, F>(start: &CMatrix<T>, options: &SearchOptions, local: F) -> SearchOutcome<T>
where
    T: Real,
    F: Fn(CMatrix<T>, &mut SeededRng) -> RestartResult<T> + Sync,
{
    let dim = start.nrows();
    let restarts = options.restarts.max(1);
    let results: Vec<RestartResult<T>> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = seeded_rng(options.seed, r as u64);
            let initial = if r == 0 { start.clone() } else { haar_unitary(dim, &mut rng) };
            local(initial, &mut rng)
        })
        .collect();

    let mut trace = Vec::with_capacity(restarts * options.steps + 1);
    let mut running: Option<T> = None;
    for (r, res) in results.iter().enumerate() {
        for (s, &v) in res.history.iter().enumerate() {
            if r > 0 && s == 0 {
                continue;
            }
            let best = running.map_or(v, |b| b.min(v));
            running = Some(best);
            let iteration = if s == 0 { 0 } else { r * options.steps + s };
            trace.push((iteration, best));
        }
    }
    let (restart, best) = results
        .iter()
        .enumerate()
        .fold(None::<(usize, &RestartResult<T>)>, |acc, (r, res)| match acc {
            Some((_, b)) if !(res.value < b.value) => acc,
            _ => Some((r, res)),
        })
        .expect("at least one restart");
    SearchOutcome {
        frame: best.frame.clone(),
        value: best.value,
        restart,
        trace,
    }
}

/// (1+1) random search: propose `U·exp(K)` with `‖K‖_F = step`, accept
/// strict improvements, grow the step on success and decay it otherwise.
/// NaN objective values are treated as rejections.
pub(crate) fn perturbative_descent<T, F>(
    start: CMatrix<T>,
    objective: &F,
    steps: usize,
    schedule: &StepSchedule,
    rng: &mut SeededRng,
) -> RestartResult<T>
where
    T: Real,
    F: Fn(&CMatrix<T>) -> T,
{
    let dim = start.nrows();
    let mut frame = start;
    let mut value = objective(&frame);
    if !value.is_finite() {
        value = T::lit(f64::INFINITY);
    }
    let mut history = Vec::with_capacity(steps + 1);
    history.push(value);
    let mut step = schedule.initial;
    let mut accepted = 0usize;
    for _ in 0..steps {
        let k = random_skew_hermitian::<T>(dim, T::lit(step), rng);
        let candidate = &frame * expm_skew_hermitian(&k);
        let v = objective(&candidate);
        if v < value {
            frame = candidate;
            value = v;
            accepted += 1;
            if accepted.is_multiple_of(64) {
                frame = reunitarize(&frame);
            }
            step = (step * schedule.growth).min(schedule.max);
        } else {
            step = (step * schedule.decay).max(schedule.min);
        }
        history.push(value);
    }
    RestartResult { frame, value, history }
}
