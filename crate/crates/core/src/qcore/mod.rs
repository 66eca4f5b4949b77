//! Dense complex linear algebra for small systems.

pub mod gate;
pub mod jsonio;
pub mod operator;
pub mod pauli;
pub mod state;

pub use gate::{embed_local, GateSequence, LocalGate, PulseAnnotation};
pub use operator::{lanczos_min, DenseOperator, Norms};
pub use pauli::{pauli_matrix, Pauli, PauliTerm, PauliWord};
pub use state::{euclid_diff, StateVector};
