use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use emergence::models::ModelKind;
use serde::Serialize;

/// Extract emergent structure from finite-dimensional Hamiltonians.
///
/// Matrices and states are read and written as HOP-JSON. Every command
/// emits a JSON report (to stdout unless `--report` is given).
///
/// Exit codes: 0 success; 1 invalid input; 2 numerical failure
/// (non-Hermitian input, degenerate-basis request, …); 3 a search finished
/// without meeting `--tol` (artifacts and report are still written).
#[derive(Debug, Parser)]
#[command(name = "emergence", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Seed for every random choice (restarts, pointer candidates, models).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; defaults to the number of available cores. Results
    /// do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a reference Hamiltonian.
    Model(ModelArgs),
    /// Diagonalize a Hamiltonian.
    Spectrum(SpectrumArgs),
    /// Evolve a state under a Hamiltonian.
    Evolve(EvolveArgs),
    /// Score or search system/environment splits.
    Mereology(MereologyArgs),
    /// Locality profile of a Hamiltonian, optionally searching for a local frame.
    Locality(LocalityArgs),
    /// Emergent geometry from the mutual information of a state.
    Geometry(GeometryArgs),
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Ising,
    Sho,
    Gue,
    Scrambled,
}

impl From<Kind> for ModelKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Ising => ModelKind::Ising,
            Kind::Sho => ModelKind::Sho,
            Kind::Gue => ModelKind::Gue,
            Kind::Scrambled => ModelKind::Scrambled,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct ModelArgs {
    /// Model family; required unless `--spec` is given.
    #[arg(long, required_unless_present = "spec")]
    pub kind: Option<Kind>,
    /// Read a model specification (JSON) instead of flags.
    #[arg(long, conflicts_with_all = ["kind", "n", "coupling", "field", "periodic", "dim", "mass", "omega"])]
    pub spec: Option<PathBuf>,
    /// Number of spins (ising, scrambled).
    #[arg(long)]
    pub n: Option<usize>,
    /// Ising coupling.
    #[arg(long = "J", allow_negative_numbers = true)]
    #[serde(rename = "J")]
    pub coupling: Option<f64>,
    /// Transverse field.
    #[arg(long = "g", allow_negative_numbers = true)]
    #[serde(rename = "g")]
    pub field: Option<f64>,
    /// Close the chain into a ring.
    #[arg(long)]
    pub periodic: bool,
    /// Hilbert-space dimension (sho, gue).
    #[arg(long)]
    pub dim: Option<usize>,
    /// Oscillator mass.
    #[arg(long)]
    pub mass: Option<f64>,
    /// Oscillator frequency.
    #[arg(long)]
    pub omega: Option<f64>,
    /// Output HOP-JSON matrix.
    #[arg(short, long)]
    pub output: PathBuf,
    /// Also write the scrambling frame (scrambled models only).
    #[arg(long)]
    pub frame_out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SpectrumArgs {
    /// HOP-JSON Hamiltonian.
    pub hamiltonian: PathBuf,
    /// Relative gap (times max(1, max|E|)) below which levels count as degenerate.
    #[arg(long, default_value_t = emergence::tolerance::DEGENERACY)]
    pub tol: f64,
    /// Write the eigenbasis (columns) as HOP-JSON; fails on a degenerate spectrum.
    #[arg(long)]
    pub vectors: Option<PathBuf>,
    /// Write the ground state as HOP-JSON; fails if it is degenerate.
    #[arg(long)]
    pub ground_state: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Phases in the energy eigenbasis.
    Spectral,
    /// Adaptive Runge–Kutta integration of the Schrödinger equation.
    Ode,
}

#[derive(Debug, Args, Serialize)]
pub struct EvolveArgs {
    /// HOP-JSON Hamiltonian.
    pub hamiltonian: PathBuf,
    /// HOP-JSON initial state.
    pub state: PathBuf,
    /// Evolution time (may be negative).
    #[arg(long, allow_negative_numbers = true)]
    pub t: f64,
    #[arg(long, value_enum, default_value_t = Method::Spectral)]
    pub method: Method,
    /// Local error tolerance of the ODE method.
    #[arg(long, default_value_t = emergence::tolerance::ODE)]
    pub tol: f64,
    /// Output HOP-JSON state.
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct MereologyArgs {
    /// HOP-JSON Hamiltonian.
    pub hamiltonian: PathBuf,
    /// System dimension; the environment gets dim/d_S.
    #[arg(long)]
    pub ds: usize,
    /// Score the presented frame only, without searching.
    #[arg(long)]
    pub no_search: bool,
    #[arg(long, default_value_t = 4)]
    pub restarts: usize,
    /// Search steps per restart.
    #[arg(long, default_value_t = 300)]
    pub budget: usize,
    /// Jacobi sweeps per refined pointer candidate.
    #[arg(long, default_value_t = 50)]
    pub pointer_budget: usize,
    /// Weight of the entanglement rate in the objective.
    #[arg(long, default_value_t = 1.0)]
    pub entanglement_weight: f64,
    /// Weight of the delocalization rate in the objective.
    #[arg(long, default_value_t = 1.0)]
    pub delocalization_weight: f64,
    /// Objective a search must reach; exit 3 otherwise. No threshold by default.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Write the best split frame as HOP-JSON.
    #[arg(long)]
    pub frame_out: Option<PathBuf>,
    /// Write the best-objective trace as CSV.
    #[arg(long)]
    pub trace_out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct LocalityArgs {
    /// HOP-JSON Hamiltonian.
    pub hamiltonian: PathBuf,
    /// Factor dimensions, most significant first (e.g. 2,2,2,2).
    #[arg(long, value_delimiter = ',', required = true)]
    pub dims: Vec<usize>,
    /// Locality order.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Non-local weight fraction accepted as k-local.
    #[arg(long, default_value_t = emergence::tolerance::K_LOCALITY)]
    pub tol: f64,
    /// Search frames for the most local one; exit 3 if it stays above `--tol`.
    #[arg(long)]
    pub search: bool,
    #[arg(long, default_value_t = 4)]
    pub restarts: usize,
    /// Search steps per restart.
    #[arg(long, default_value_t = 300)]
    pub budget: usize,
    /// Write the weight per interaction order as CSV.
    #[arg(long)]
    pub profile_out: Option<PathBuf>,
    /// Write expansion coefficients as CSV.
    #[arg(long)]
    pub expansion_out: Option<PathBuf>,
    /// Coefficients at or below this magnitude are left out of the expansion CSV.
    #[arg(long, default_value_t = 1e-12)]
    pub coefficient_floor: f64,
    /// Write the (searched) frame as HOP-JSON.
    #[arg(long)]
    pub frame_out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct GeometryArgs {
    /// HOP-JSON state.
    #[arg(long, required_unless_present = "hamiltonian", conflicts_with = "hamiltonian")]
    pub state: Option<PathBuf>,
    /// Use the ground state of this HOP-JSON Hamiltonian.
    #[arg(long)]
    pub hamiltonian: Option<PathBuf>,
    /// Region dimensions, most significant first.
    #[arg(long, value_delimiter = ',', required = true)]
    pub dims: Vec<usize>,
    /// Distance per e-fold of mutual information.
    #[arg(long, default_value_t = 1.0)]
    pub l0: f64,
    /// Mutual information below this counts as this.
    #[arg(long, default_value_t = 1e-12)]
    pub i_floor: f64,
    /// Largest distance; defaults to 50·l0.
    #[arg(long)]
    pub d_cap: Option<f64>,
    /// Largest embedding dimension.
    #[arg(long, default_value_t = 3)]
    pub m_max: usize,
    /// Relative eigenvalue threshold for the dimension estimate.
    #[arg(long, default_value_t = emergence::geometry::DEFAULT_TAU)]
    pub tau: f64,
    /// Write the mutual-information matrix as CSV.
    #[arg(long)]
    pub mi_out: Option<PathBuf>,
    /// Write the distance matrix as CSV.
    #[arg(long)]
    pub distances_out: Option<PathBuf>,
    /// Write embedding coordinates as CSV.
    #[arg(long)]
    pub embedding_out: Option<PathBuf>,
}
