//! Space-time simulation of pulsed photoemission from a thin film formed by
//! a double quantum well on an impenetrable substrate.
//!
//! The film is modelled as a hard wall at x = 0 with two delta barriers at d
//! and 2d. Photoexcited states are the inverse-LEED scattering basis: a
//! normalized outgoing plane wave toward the detector plus the incoming and
//! interior components fixed by the boundary conditions. Second-order
//! density-matrix kernels for rectangular pumping are contracted against
//! charge/current matrix elements over a resonance-clustered 2D energy
//! quadrature, giving n(x,t) and j(x,t) maps whose beats, decay lengths, and
//! stationary limits follow the quasi-stationary doublet of the well.
//!
//! Everything internal is in Hartree atomic units (ℏ = m = e = 1); the core
//! is generic over the floating-point scalar via [`scalar::Real`].

pub mod asymptotics;
pub mod density_matrix;
pub mod error;
pub mod field_solver;
pub mod model;
pub mod quadrature;
pub mod resonances;
pub mod scalar;
pub mod scattering;

pub use error::{Error, Result};
pub use scalar::{Cplx, Real};

/// Complex number at default (f64) precision.
pub type C64 = Cplx<f64>;
/// Complex number at single precision.
pub type C32 = Cplx<f32>;

pub type EmitterConfig64 = model::EmitterConfig<f64>;
pub type EnergyBand64 = model::EnergyBand<f64>;
pub type RelaxationParams64 = model::RelaxationParams<f64>;
pub type PumpSchedule64 = model::PumpSchedule<f64>;
pub type UnitSystem64 = model::UnitSystem<f64>;
pub type Matrix2c64 = scattering::Matrix2c<f64>;
pub type PartialAmplitudes64 = scattering::PartialAmplitudes<f64>;
pub type ResonancePole64 = resonances::ResonancePole<f64>;
pub type Doublet64 = resonances::Doublet<f64>;
pub type EnergyGrid64 = quadrature::EnergyGrid<f64>;
pub type SpaceTimeGrid64 = field_solver::SpaceTimeGrid<f64>;
pub type FieldMap64 = field_solver::FieldMap<f64>;
