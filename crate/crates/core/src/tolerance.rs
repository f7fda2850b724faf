//! Default numerical tolerances. Every check in the crate that is not
//! given an explicit tolerance uses one of these.

/// Allowed deviation of a state's Euclidean norm from 1.
pub const NORM: f64 = 1e-10;
/// Allowed `‖M − M†‖_F / ‖M‖_F` for a Hermitian operator.
pub const HERMITIAN: f64 = 1e-12;
/// Smallest eigenvalue a density operator may have.
pub const DENSITY_EIGENVALUE: f64 = -1e-10;
/// Allowed deviation of a density operator's trace from 1.
pub const TRACE: f64 = 1e-10;
/// Allowed `‖U U† − I‖_F` for a frame.
pub const UNITARY: f64 = 1e-10;
/// Relative gap (times `max(1, ‖H‖)`) below which two energies count as degenerate.
pub const DEGENERACY: f64 = 1e-9;
/// Eigenvalues below this contribute nothing to `−λ ln λ`.
pub const ENTROPY_FLOOR: f64 = 1e-12;
/// Allowed `1 − max Schmidt weight` for a product state.
pub const PRODUCT_STATE: f64 = 1e-8;
/// Local error tolerance of the adaptive Schrödinger integrator.
pub const ODE: f64 = 1e-13;
/// Default non-local weight fraction accepted as k-local.
pub const K_LOCALITY: f64 = 1e-6;
/// `‖H_int‖_F / ‖H‖_F` below which a split counts as uncoupled, so every
/// system basis is an equally good pointer basis.
pub const NEGLIGIBLE_INTERACTION: f64 = 1e-12;
