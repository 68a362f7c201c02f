//! Lindblad time evolution in the squeezed frame.

pub mod dopri;
pub mod evolve;
pub mod liouvillian;
pub mod spectral;

pub use evolve::{
    converged_evolve, evolve, expectation, uniform_grid, ConvergedTrajectory, CutoffPolicy, EvolutionSpec,
    InitialState, Tolerances, Trajectory,
};
pub use liouvillian::{effective_hamiltonian, liouvillian_apply, liouvillian_superoperator, SparseLiouvillian};
pub use spectral::SpectralPropagator;
