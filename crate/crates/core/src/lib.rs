//! Quantum emulation of invertible finite-state dynamics.
//!
//! Any invertible update rule on a finite set of configurations splits into
//! disjoint cycles. On each cycle of length N this crate builds the quantum
//! dynamics whose energy eigenstates are the discrete Fourier transforms of
//! the configuration states, with eigenvalues m·h/T. Sampled at multiples of
//! the update interval, that dynamics reproduces the classical one exactly;
//! in between, states are given by bandlimited interpolation with the
//! periodic sinc kernel S(N, u).
//!
//! - [`dynamics`]: permutations, orbit decomposition, example systems
//! - [`kernel`]: S(N, u), its shifted form and its sinc limit
//! - [`spectral`]: energy basis, evolution, interpolation, reconstruction
//! - [`oversample`]: M-fold oversampled orbits and their bandlimited basis
//! - [`observables`]: energy, momentum and bandwidth measures

pub mod config;
pub mod dft;
pub mod dynamics;
pub mod error;
pub mod kernel;
pub mod observables;
pub mod oversample;
pub mod spectral;

pub use config::GlobalConfig;
pub use dynamics::{
    decompose_orbits, from_particle_shift, from_permutation, from_two_channel_lga, orbit_of, step,
    ClassicalDynamics, DynamicsFile, Orbit, OrbitDecomposition,
};
pub use error::{Error, Result};
pub use kernel::{kernel_direct_sum, periodic_sinc, periodic_sinc_shifted, sinc_limit};
pub use num_complex::Complex64;
pub use observables::{
    average_energy, figure_data, momentum, particle_amplitude, second_moment, width_report,
    ParticleModel, WidthReport,
};
pub use oversample::{
    bandlimited_basis_state, bandlimited_evolve, limit_superposition_profile, oversample,
    verify_isomorphism, OversampledOrbit,
};
pub use spectral::{
    closure_defect, config_basis_state, dirac_defect, energy_spectrum, evolve, interpolate_config,
    reconstruct, to_config_basis, to_energy_basis, unit_step, BandlimitedFunction, Basis,
    QuantumState, Spectrum,
};
