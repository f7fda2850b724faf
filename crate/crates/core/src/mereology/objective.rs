use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{conjugate_inverse, eigh};
use crate::models::gue_random;
use crate::optim::{perturbative_descent, restarted, SearchOptions, StepSchedule};
use crate::quantum::HermitianOperator;
use crate::scalar::{CMatrix, Real};
use crate::tolerance;

use super::decompose::decompose_local;
use super::pointer::pointer_basis_search;
use super::rates::{default_window, AveragedRates};
use super::{BipartiteSplit, PointerBasis};

/// Seed of the reference GUE Hamiltonian that fixes the rate scales.
pub const REFERENCE_SEED: u64 = 0x5ca1e;

/// How a split is scored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveConfig {
    pub entanglement_weight: f64,
    pub delocalization_weight: f64,
    /// Jacobi sweeps per refined pointer candidate.
    pub pointer_budget: usize,
    pub pointer_seed: u64,
}

impl Default for ObjectiveConfig {
    fn default() -> Self {
        Self {
            entanglement_weight: 1.0,
            delocalization_weight: 1.0,
            pointer_budget: 50,
            pointer_seed: 0,
        }
    }
}

/// Outcome of scoring (and possibly searching for) a system/environment
/// split. Rates are averaged over Haar-random environment states, see
/// [`factorization_objective`].
#[derive(Clone, Debug, PartialEq)]
pub struct MereologyReport<T: Real> {
    pub split: BipartiteSplit<T>,
    /// Pointer basis ordered by increasing `⟨φ|H_S|φ⟩`.
    pub pointer: PointerBasis<T>,
    pub entanglement_rate: T,
    pub delocalization_rate: T,
    pub objective: T,
    /// `‖H_int‖_F / ‖H_S‖_F` in this split; `None` when `H_S = 0`.
    pub interaction_dominance: Option<T>,
    /// Best objective so far by search iteration; a single entry when the
    /// split was evaluated rather than searched.
    pub search_trace: Vec<(usize, T)>,
}

/// Rates of the reference Hamiltonian per unit `‖H − Tr H/d‖²_F`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateScales<T: Real> {
    pub entanglement: T,
    pub delocalization: T,
}

fn traceless_norm_sq<T: Real>(h: &CMatrix<T>) -> T {
    let d = T::from_usize(h.nrows()).unwrap();
    let mean = h.trace().re / d;
    (h.norm_squared() - mean * mean * d).max(T::zero())
}

/// Scales measured on the identity-frame split of a fixed GUE Hamiltonian
/// with the same dimensions.
pub fn reference_scales<T: Real>(d_s: usize, d_e: usize, config: &ObjectiveConfig) -> Result<RateScales<T>> {
    let h = gue_random::<T>(d_s * d_e, REFERENCE_SEED)?;
    let unit = RateScales {
        entanglement: T::one(),
        delocalization: T::one(),
    };
    let eval = Evaluator::new(&h, d_s, d_e, unit, config.clone());
    let e = eval.evaluate(&CMatrix::identity(d_s * d_e, d_s * d_e))?;
    let n2 = traceless_norm_sq(h.matrix());
    Ok(RateScales {
        entanglement: e.entanglement_rate / n2,
        delocalization: e.delocalization_rate / n2,
    })
}

struct Evaluation<T: Real> {
    pointer: PointerBasis<T>,
    entanglement_rate: T,
    delocalization_rate: T,
    objective: T,
    interaction_dominance: Option<T>,
}

/// Everything about `H` that does not depend on the split frame.
struct Evaluator<T: Real> {
    h: CMatrix<T>,
    energies: Vec<T>,
    vectors: CMatrix<T>,
    window: T,
    norm_sq: T,
    d_s: usize,
    d_e: usize,
    scales: RateScales<T>,
    config: ObjectiveConfig,
}

impl<T: Real> Evaluator<T> {
    fn new(h: &HermitianOperator<T>, d_s: usize, d_e: usize, scales: RateScales<T>, config: ObjectiveConfig) -> Self {
        let (energies, vectors) = eigh(h.matrix());
        Self {
            h: h.matrix().clone(),
            energies,
            vectors,
            window: default_window(h),
            norm_sq: traceless_norm_sq(h.matrix()),
            d_s,
            d_e,
            scales,
            config,
        }
    }

    fn evaluate(&self, frame: &CMatrix<T>) -> Result<Evaluation<T>> {
        let (d_s, d_e) = (self.d_s, self.d_e);
        let local = conjugate_inverse(frame, &self.h);
        let parts = decompose_local(&local, d_s, d_e);
        // Without coupling every basis commutes with H_int; the H_S eigenbasis
        // is the one that is also stationary.
        let uncoupled = parts.interaction.frobenius_norm() <= T::tol(tolerance::NEGLIGIBLE_INTERACTION) * self.h.norm();
        let found = if uncoupled {
            PointerBasis::evaluated(&eigh(parts.system.matrix()).1, &parts.interaction)
        } else {
            pointer_basis_search(&parts.interaction, d_s, d_e, self.config.pointer_budget, self.config.pointer_seed)?
        };
        let pointer = found.reordered(&energy_order(&found, &parts.system), &parts.interaction)?;

        let median = pointer.vector((d_s - 1) / 2);
        let local_vectors = frame.adjoint() * &self.vectors;
        let averaged = AveragedRates {
            energies: &self.energies,
            vectors: &local_vectors,
            d_s,
            d_e,
        };
        let (ent, deloc) = averaged.rates(&median, pointer.observable().matrix(), self.window);
        let objective = if self.norm_sq > T::zero() {
            (T::lit(self.config.entanglement_weight) * ent / self.scales.entanglement
                + T::lit(self.config.delocalization_weight) * deloc / self.scales.delocalization)
                / self.norm_sq
        } else {
            T::zero()
        };
        Ok(Evaluation {
            pointer,
            entanglement_rate: ent,
            delocalization_rate: deloc,
            objective,
            interaction_dominance: parts.interaction_dominance(),
        })
    }

    fn report(&self, frame: CMatrix<T>, search_trace: Option<Vec<(usize, T)>>) -> Result<MereologyReport<T>> {
        let e = self.evaluate(&frame)?;
        Ok(MereologyReport {
            split: BipartiteSplit::new(self.d_s, self.d_e, frame)?,
            search_trace: search_trace.unwrap_or_else(|| vec![(0, e.objective)]),
            pointer: e.pointer,
            entanglement_rate: e.entanglement_rate,
            delocalization_rate: e.delocalization_rate,
            objective: e.objective,
            interaction_dominance: e.interaction_dominance,
        })
    }
}

/// Pointer labels ordered by `⟨φ|H_S|φ⟩`; vectors whose energies agree to
/// the degeneracy tolerance keep their canonical order.
fn energy_order<T: Real>(pointer: &PointerBasis<T>, h_s: &HermitianOperator<T>) -> Vec<usize> {
    let energies: Vec<T> = (0..pointer.dim())
        .map(|n| {
            let v = pointer.vector(n);
            v.dotc(&(h_s.matrix() * &v)).re
        })
        .collect();
    let tol = T::tol(crate::tolerance::DEGENERACY) * T::one().max(h_s.frobenius_norm());
    let mut order: Vec<usize> = (0..energies.len()).collect();
    order.sort_by(|&a, &b| energies[a].partial_cmp(&energies[b]).unwrap().then(a.cmp(&b)));
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && energies[order[end]] - energies[order[start]] <= tol {
            end += 1;
        }
        order[start..end].sort_unstable();
        start = end;
    }
    order
}

/// Scores a split: `w_E·Λ_E/s_E + w_D·Λ_D/s_D`.
///
/// `Λ_E` and `Λ_D` are the entanglement and delocalization rates of
/// `|φ_m⟩⊗|χ⟩`, where `φ_m` is the lower-median pointer state in energy
/// order and `|χ⟩` is a Haar-random environment state; the rates are
/// averaged over `|χ⟩` exactly rather than sampled, so the score is
/// unchanged by local unitaries `u_S⊗u_E` on the frame. The scales `s_E`,
/// `s_D` are the reference GUE rates (see [`reference_scales`]) rescaled to
/// the traceless norm of `H`, which makes the objective scale-free.
///
/// `budget` and `seed` drive the inner pointer-basis search.
pub fn factorization_objective<T: Real>(
    h: &HermitianOperator<T>,
    split: &BipartiteSplit<T>,
    budget: usize,
    seed: u64,
) -> Result<(T, MereologyReport<T>)> {
    let config = ObjectiveConfig {
        pointer_budget: budget,
        pointer_seed: seed,
        ..ObjectiveConfig::default()
    };
    factorization_objective_with(h, split, &config)
}

pub fn factorization_objective_with<T: Real>(
    h: &HermitianOperator<T>,
    split: &BipartiteSplit<T>,
    config: &ObjectiveConfig,
) -> Result<(T, MereologyReport<T>)> {
    split.factorization().check_dim(h.dim())?;
    let scales = reference_scales(split.d_s(), split.d_e(), config)?;
    let eval = Evaluator::new(h, split.d_s(), split.d_e(), scales, config.clone());
    let report = eval.report(split.frame().clone(), None)?;
    Ok((report.objective, report))
}

/// Searches split frames for the lowest objective, starting restart 0 from
/// the presented (computational) frame. `seed` also seeds the pointer
/// search, which stays fixed for the whole run.
pub fn mereology_search<T: Real>(
    h: &HermitianOperator<T>,
    d_s: usize,
    d_e: usize,
    restarts: usize,
    steps: usize,
    seed: u64,
) -> Result<MereologyReport<T>> {
    let config = ObjectiveConfig {
        pointer_seed: seed,
        ..ObjectiveConfig::default()
    };
    mereology_search_with(h, d_s, d_e, &SearchOptions::new(restarts, steps, seed), &config, &StepSchedule::default())
}

pub fn mereology_search_with<T: Real>(
    h: &HermitianOperator<T>,
    d_s: usize,
    d_e: usize,
    options: &SearchOptions,
    config: &ObjectiveConfig,
    schedule: &StepSchedule,
) -> Result<MereologyReport<T>> {
    let start = BipartiteSplit::identity(d_s, d_e)?;
    start.factorization().check_dim(h.dim())?;
    if options.restarts == 0 || options.steps == 0 {
        return Err(crate::Error::InvalidParameter("restarts and steps must be at least 1".into()));
    }
    let scales = reference_scales(d_s, d_e, config)?;
    let eval = Evaluator::new(h, d_s, d_e, scales, config.clone());
    let value = |u: &CMatrix<T>| eval.evaluate(u).map_or(T::lit(f64::NAN), |e| e.objective);
    let outcome = restarted(start.frame(), options, |initial, rng| {
        perturbative_descent(initial, &value, options.steps, schedule, rng)
    });
    eval.report(outcome.frame, Some(outcome.trace))
}
