//! Desk-scale toolkit for quantum ground-space traversal and product-state
//! energy problems.
//!
//! The crate is organized around five subsystems:
//!
//! - [`qcore`] — dense complex linear algebra for small systems: state
//!   vectors, operators, Pauli algebra, norms, local-gate embedding, and
//!   eigensolvers.
//! - [`decomp`] — gate decomposition: Pauli-basis expansion, anti-commuting
//!   depth-4 splits, exact recursive 2-local decomposition of Pauli
//!   evolutions, first-order product formulas, and small-unitary synthesis.
//! - [`pathfollow`] — discretization of Lipschitz paths on the unit
//!   hypersphere into 2-local gate sequences, and low-energy ground-space
//!   traversal between states.
//! - [`gscon`] — ground-state connectivity instances, sequence verification,
//!   classical reconfiguration (ST-CONN) solving, and reductions.
//! - [`fluxembed`] — embedding of streamed classical proofs into separable
//!   sparse Hamiltonians: clock-register constructions, flux gadgets,
//!   symmetric-subspace penalties, row oracles, history states, and
//!   product-state optimization.
//!
//! Everything is verified numerically at desk scale: dense matrices up to
//! 14 qubits (configurable), sparse row oracles beyond.
//!
//! # Conventions
//!
//! Qubit 0 is the **most significant** bit of a basis-state index: the basis
//! state `|q0 q1 ... q_{n-1}>` has index `q0*2^{n-1} + ... + q_{n-1}`. Gate
//! sequences are stored in application order: the first gate in the list is
//! applied first, so the sequence `[U1, U2, ..., UM]` implements the operator
//! product `UM * ... * U2 * U1`.

pub mod config;
pub mod decomp;
pub mod error;
pub mod fluxembed;
pub mod gscon;
pub mod pathfollow;
pub mod qcore;
pub mod verify;

pub use config::{RunConfig, Tolerances};
pub use error::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Bit-ordering convention string embedded in every JSON artifact.
pub const CONVENTION: &str = "qubit0-most-significant";
