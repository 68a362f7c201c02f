//! Tripartite entanglement measures.

pub mod negativity;
pub mod tangle;

pub use negativity::{log_negativity, min_residual_contangle, residual_contangle, PartitionLabel, RESIDUAL_CLAMP};
pub use tangle::{project_to_three_qubits, three_tangle_pure, QubitProjection, LEAK_LIMIT};
