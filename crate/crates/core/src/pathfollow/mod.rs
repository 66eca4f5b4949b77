//! Universal path following on the unit hypersphere and low-energy
//! ground-space traversal.

pub mod follow;
pub mod mapvec;
pub mod rotate;
pub mod traverse;

pub use follow::{follow_path, FollowReport, FollowSummary, Path};
pub use mapvec::{map_close_vectors, MapReport};
pub use rotate::rotation_between;
pub use traverse::{rescale_hamiltonian, traverse_ground_space};
