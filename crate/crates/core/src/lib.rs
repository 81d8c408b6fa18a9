//! Entropic and information inequalities for noncomposite systems.
//!
//! A single probability vector or a single density matrix carries no tensor
//! structure, but its index set can always be relabelled as pairs or triples
//! of indices (after padding with zeros). Under such a relabelling the usual
//! bipartite and tripartite entropic inequalities (subadditivity, strong
//! subadditivity, conditional-entropy chain rules) apply verbatim. This crate
//! provides the machinery to build those relabellings and to evaluate every
//! inequality numerically:
//!
//! * [`simplex`]: probability vectors, tables, Shannon and Tsallis entropies
//!   and the classical inequalities.
//! * [`qstate`]: density matrices, reduction maps, von Neumann entropy and
//!   the quantum inequalities.
//! * [`tomography`]: unitary charts, tomograms, tomographic entropy
//!   minimization and single-qudit discord.
//! * [`ensemble`]: seeded random states (Dirichlet, Ginibre, Haar).

pub mod ensemble;
pub mod error;
pub mod linalg;
pub mod qstate;
pub mod report;
pub mod simplex;
pub mod tomography;

pub use error::{Error, Result};
pub use qstate::{DensityMatrix, ReductionPlan, Spectrum};
pub use report::{CheckKind, EntropyKind, EntropyValue, InequalityReport};
pub use simplex::{ProbTable, ProbVec, TableShape};
pub use tomography::{DiscordReport, Tomogram, UnitaryChart, UnitaryMatrix};

/// Library version.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Absolute tolerance on inequality gaps: a check passes iff `gap >= -GAP_TOLERANCE`.
pub const GAP_TOLERANCE: f64 = 1e-9;

/// Absolute tolerance on algebraic identities (chain rules).
pub const IDENTITY_TOLERANCE: f64 = 1e-12;
