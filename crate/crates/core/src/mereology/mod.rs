//! System/environment factorizations of a Hamiltonian: decomposition into
//! self and interaction terms, pointer bases, early-time entanglement and
//! delocalization rates, and a search over splits that minimizes both.

mod decompose;
mod objective;
mod pointer;
mod rates;
mod split;

pub use decompose::{commutator_defect, decompose_hamiltonian, HamiltonianDecomposition};
pub use objective::{
    factorization_objective, factorization_objective_with, mereology_search, mereology_search_with, reference_scales,
    MereologyReport, ObjectiveConfig, RateScales, REFERENCE_SEED,
};
pub use pointer::{pointer_basis_search, pointer_cost, PointerBasis};
pub use rates::{default_window, delocalization_rate, entanglement_growth_rate, RATE_SAMPLES, WINDOW_SCALE};
pub use split::BipartiteSplit;
