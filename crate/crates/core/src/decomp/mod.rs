//! Gate-decomposition machinery: Pauli expansion, anti-commuting depth-4
//! splits, exact 2-local decomposition of Pauli evolutions, first-order
//! product formulas, and small-unitary synthesis.

pub mod depth4;
pub mod expansion;
pub mod rotation;
pub mod small;
pub mod split;
pub mod trotter;

pub use depth4::{depth4_solve, Depth4Split};
pub use expansion::{pauli_expand, PauliExpansion};
pub use rotation::{decompose_pauli_rotation, pulse_bound, recursion_depth};
pub use small::{decompose_small_unitary, synthesize_small_unitary, SmallUnitaryReport};
pub use split::{split_pauli, SplitWord};
pub use trotter::{embed_hermitian, trotter_first_order, LocalTerm, TrotterReport};
