//! Emergent structure from a bare Hamiltonian.
//!
//! Given only a finite-dimensional Hermitian operator, the crate looks for
//! the structure usually taken for granted: a system/environment split with
//! a robust pointer basis ([`mereology`]), a tensor-product frame in which
//! the Hamiltonian is few-body local ([`locality`]), and a spatial geometry
//! read off from ground-state mutual information ([`geometry`]).
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix the common double-precision case.

// `!(x > 0)` is deliberate throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod locality;
pub mod mereology;
pub mod models;
pub mod optim;
pub mod quantum;
pub mod random;
pub mod scalar;
pub mod tolerance;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Hamiltonian = quantum::HermitianOperator<f64>;
pub type State = quantum::StateVector<f64>;
pub type Density = quantum::DensityOperator<f64>;
pub type Frame = scalar::CMatrix<f64>;
