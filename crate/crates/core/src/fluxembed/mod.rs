//! Embedding streamed classical proofs into separable sparse Hamiltonians:
//! clock constructions, crossed proof-step gadgets, symmetric-subspace
//! penalties, sparse row access, and product-state optimization.

pub mod circuit;
pub mod embedded;
pub mod flux;
pub mod kitaev;
pub mod optimize;
pub mod params;

pub use circuit::{
    identity_chain, toy_accept, toy_partial, toy_reject, StreamGate, StreamingCircuit,
};
pub use embedded::{
    build_flux_hamiltonian, swap_test, EmbeddedHamiltonian, FluxThresholds, FluxWeights,
    GroupEnergies, Term, TermPair,
};
pub use flux::{
    cheating_state, find_fooling_null, flux_unitary, full_support_profile,
    propagation_extract_check, residual_block, residual_min_formula, round_proof_gates,
    FoolingWitness, ResidualProfile, SupportCheck,
};
pub use kitaev::{PropGate, SideLayout, SideOp, SideSpace};
pub use optimize::{DenseProductTerm, SeparableProblem};
pub use params::{mip_embedding_params, MipEmbedding};
