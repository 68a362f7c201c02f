//! Dense complex linear algebra on the composite spin ⊗ phonon ⊗ magnon space.

pub mod eigen;
pub mod expm;
pub mod layout;
pub mod matrix;
pub mod operators;
pub mod partial;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, trace_norm, HermitianEigen};
pub use expm::matrix_exp;
pub use layout::{SpaceLayout, Subsystem};
pub use matrix::{kron, ComplexMatrix, C64};
pub use operators::{annihilation, embed};
pub use partial::{partial_trace, partial_transpose};
