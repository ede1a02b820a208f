//! Variational ground states of localized many-body systems: an FCC rare-gas
//! solid built from exponential site orbitals, its center-of-mass statistics,
//! and self-gravitating boson and fermion clusters.
//!
//! Computations use natural units (length σ, energy ε, mass μ); see
//! [`UnitSystem`] for conversions to laboratory units.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod energy;
pub mod error;
pub mod lattice;
pub mod model;
pub mod observables;
pub mod optimize;
pub mod oracle;
pub mod quadrature;
pub mod selfgrav;
pub mod units;

pub use energy::{EnergyBreakdown, SameSiteEnergy, ShellContribution, SolidModel};
pub use error::{Error, Result};
pub use lattice::{Cluster, LatticeKind, LatticeShells, Shell, Vec3};
pub use model::{GravParams, OrbitalParams, TwoYukawaParams};
pub use observables::{ComStatistics, SuperpositionSpec};
pub use optimize::{BulkModulus, CompressionMode, OptimizeOptions, SolidSolution};
pub use oracle::McEstimate;
pub use quadrature::QuadratureOptions;
pub use selfgrav::{BosonSolution, FermionSolution, GravSystem};
pub use units::UnitSystem;
