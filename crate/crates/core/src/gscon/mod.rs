//! Ground-state connectivity instances, sequence verification, classical
//! reconfiguration, and reductions.

pub mod cnf;
pub mod instance;
pub mod reduce;
pub mod stconn;
pub mod traversal;

pub use cnf::{bits_to_index, index_to_bits, Clause, CnfFormula, Literal};
pub use instance::{verify_gscon_sequence, GsconInstance, Verdict, VerifyReport};
pub use reduce::{
    clause_penalty_hamiltonian, path_to_gate_sequence, reduce_lh_to_gscon,
    reduce_stconn_to_gscon, LhReduction,
};
pub use stconn::{
    lift_stconn_locality, stconn_solve, validate_path, StConnInstance, StConnOutcome,
};
pub use traversal::{
    amplitude_pump_sequence, certify_k_orthogonal, check_traversal_lemma, traversal_bound,
    TraversalCheck,
};
