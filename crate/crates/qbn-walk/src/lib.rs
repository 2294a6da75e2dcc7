//! Simulation library for a continuous-time quantum walk on the
//! infinite-dimensional hypercube, generated by a weighted sum of commuting
//! self-adjoint bit-toggle operators (the adjacency operator of the graph of
//! finite subsets of the nonnegative integers).
//!
//! Everything is computed in the canonical subset basis. Because the toggle
//! generators commute and square to the identity, the truncated propagator
//! factors exactly into one sparse rotation per mode; the only approximation
//! anywhere is mode truncation, and its error is bounded analytically by the
//! weight tail.
//!
//! Module map:
//! - [`vertex`]: bit-vector subsets and the hypercube adjacency structure
//! - [`weight`]: summable positive weight sequences, totals, tails, the
//!   vertex-weight function
//! - [`state`]: sparse complex states and the elementary operator actions
//! - [`operator`]: truncated adjacency/shifted operators and dense sections
//! - [`evolution`]: exact product-formula propagator, closed-form basis
//!   amplitudes, the Walsh-Hadamard spectral oracle, truncation bounds
//! - [`spectral`]: approximate-eigenvector residuals and spectrum grids
//! - [`analysis`]: probability distributions and symmetry verdicts
//! - [`cli`]: the `walk` / `spectrum` / `symmetry` command-line surface

pub mod analysis;
pub mod cli;
pub mod error;
pub mod evolution;
pub mod operator;
pub mod spectral;
pub mod state;
pub mod vertex;
pub mod weight;

pub use analysis::{check_operator_identity, check_parity_sector_symmetry, check_time_reversal};
pub use analysis::{distribution, Distribution, SymmetryReport, Verdict};
pub use error::{Error, Result};
pub use evolution::{oracle_evolve, truncation_error_bound, Propagator};
pub use operator::{operator_norm_witness, DenseMatrix, OperatorKind, TruncatedOperator};
pub use spectral::{analytic_spectrum, spectrum_fill_report, weyl_residual, weyl_vector, SpectralReport};
pub use state::{Sector, State, PRUNE_EPS};
pub use vertex::{Vertex, MAX_MODES};
pub use weight::{Weight, WeightSpec};
