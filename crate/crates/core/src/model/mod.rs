//! Physical parameters, derived couplings and the hybrid Hamiltonian.

pub mod constants;
pub mod hamiltonian;
pub mod params;

pub use constants::Constants;
pub use hamiltonian::{
    build_hamiltonian, build_hamiltonian_lab, build_hamiltonian_squeezed, collapse_operators, squeeze_unitary,
    Dissipation, Frame, ModelParams, Resonance,
};
pub use params::{derive_params, Charge, DerivedParams, PhysicalParams, Platform};
