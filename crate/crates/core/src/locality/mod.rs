//! Interaction-order structure of a Hamiltonian over a multipartite tensor
//! product, and search for frames in which it is `k`-local.

mod basis;
mod expansion;
mod search;

pub use basis::gell_mann_basis;
pub use expansion::{
    k_locality_test, locality_profile, operator_expansion, reconstruct_operator, LocalityProfile, Multipartition,
    OperatorExpansion,
};
pub use search::{local_factorization_search, local_factorization_search_with, DescentSchedule, LocalitySearch};
