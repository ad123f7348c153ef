//! Single-photon routing in a T-bulge of coupled-resonator waveguides.
//!
//! An infinite waveguide (CRW-a) crosses cavity N of a semi-infinite one
//! (CRW-b); a cascade three-level emitter |g⟩, |f⟩, |e⟩ sits at the crossing
//! and mediates all transport between them. The crate provides
//!
//! * closed-form scattering amplitudes and flux-normalised coefficients
//!   ([`scattering`]),
//! * an independent lattice oracle that solves the full single-excitation
//!   Hamiltonian in the frequency and time domains ([`oracle`]),
//! * deterministic parameter sweeps with extremum analysis ([`sweep`]).

pub mod config;
pub mod couplings;
pub mod error;
pub mod kinematics;
mod linalg;
pub mod oracle;
pub mod params;
pub mod published;
pub mod sampling;
pub mod scattering;
pub mod spectral;
pub mod sweep;

pub use couplings::EffectiveCouplings;
pub use error::{Result, RouterError};
pub use kinematics::Kinematics;
pub use params::RouterParams;
pub use scattering::{AmplitudeSet, ChannelAmplitudes, CoefficientSet, Port, ScatteringQuery, Site};

pub use num_complex::Complex64;
