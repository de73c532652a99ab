//! Three-flavor neutrino oscillations in vacuum and in uniform-density matter.
//!
//! The crate evaluates flavor transition probabilities under the plane-wave
//! and Gaussian wave-packet treatments, diagonalizes the constant-density
//! matter Hamiltonian through two successive rotations (13 then 12), derives
//! group-velocity differences and coherence lengths from the resulting
//! eigenvalues, and quantifies flavor coherence with the l1-norm.
//!
//! Lengths cross the public API in meters, energies and potentials in eV,
//! mass-squared splittings in eV² and angles in radians.
//!
//! ```
//! use nucoh::{Flavor, OscillationParams, ParticleKind, WavePacketConfig};
//!
//! let params = OscillationParams::default();
//! let wp = WavePacketConfig::default();
//! let p_ee = nucoh::matter_probability(
//!     &params, &wp, Flavor::Electron, Flavor::Electron,
//!     1.0e15, 4.5e10, 2.242e-15, ParticleKind::Neutrino,
//! ).unwrap();
//! assert!((0.0..=1.0).contains(&p_ee));
//! ```

pub mod cli;
pub mod coherence;
pub mod error;
pub mod kinematics;
pub mod matter;
pub mod params;
pub mod probability;
pub mod sweep;
pub mod units;

pub use coherence::{
    l1_from_probabilities, l1_norm, l1_scan, plane_wave_density_matrix, FlavorDensityMatrix, L1Norm,
};
pub use error::{Error, Result};
pub use kinematics::{
    dl_de, find_infinite_coherence_potentials, find_resonance_potentials, matter_lengths,
    vacuum_lengths, velocity_differences, Pair, PairLengths, VelocityDifferences,
};
pub use matter::{
    epsilon, exact_eigensystem, l_eigenvalues, matter_eigenvalues, matter_mixing, theta12_matter,
    theta13_matter, ExactEigensystem, LEigenvalues, MatterEigenSystem,
};
pub use params::{
    build_pmns, build_rotation, default_params, ComplexMatrix3, OscillationParams, ParticleKind,
    RotationPlane,
};
pub use probability::{
    averaged_probability, matter_probability, probability_matrix, vacuum_probability, Flavor,
    FlavorProbabilities, Medium, Propagator, Treatment, WavePacketConfig,
};
pub use units::{length_to_natural, natural_to_length, PhysicalScales, HBAR_C_EV_M};
