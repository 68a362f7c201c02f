//! Simulator for a spin–magnon–phonon hybrid system with a parametrically
//! squeezed mechanical mode.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: dense complex matrices, tensor-product layout, partial
//!   trace/transpose, Hermitian eigensolver, matrix exponential.
//! * [`model`]: physical parameters, derived couplings, Hamiltonians and
//!   collapse operators in the lab and squeezed frames.
//! * [`dynamics`]: Lindblad integration with Fock-cutoff convergence control.
//! * [`entanglement`]: logarithmic negativity, residual contangles and the
//!   pure-state three-tangle.
//! * [`sweep`]: figure pipelines, parallel grid runner and CSV output used by
//!   the `tripartite` binary.

pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod linalg;
pub mod model;
pub mod sweep;

pub use error::{Error, Result};
