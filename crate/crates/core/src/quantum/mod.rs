//! Finite-dimensional quantum primitives.

mod bekenstein;
mod entropy;
mod evolution;
mod factorization;
mod operator;
mod spectrum;
mod state;

pub use bekenstein::{bekenstein_bound, BekensteinBound};
pub use entropy::{
    entropy_of_eigenvalues, linear_entropy, mutual_information, partial_trace, purify, reduced_state,
    region_entropy, von_neumann_entropy,
};
pub(crate) use entropy::{entropy_of_matrix, reduced_from_local_state, trace_out_local};
pub use evolution::{schrodinger_evolve_dense, schrodinger_evolve_dense_with, spectral_evolve, OdeOptions};
pub use factorization::Factorization;
pub use operator::{DensityOperator, HermitianOperator};
pub use spectrum::{diagonalize, diagonalize_matrix, Eigensystem, Spectrum};
pub use state::StateVector;
