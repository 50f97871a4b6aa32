//! Physical constants, unit conversions, and the configuration types shared
//! by all modules. Everything internal runs in Hartree atomic units
//! (ℏ = m = e = 1); eV, Å, and seconds appear only at the I/O boundary.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// CODATA-2018: Hartree energy in electronvolts.
pub const HARTREE_EV: f64 = 27.211386245988;
/// CODATA-2018: Bohr radius in ångströms.
pub const BOHR_ANGSTROM: f64 = 0.529177210903;
/// CODATA-2018: atomic unit of time in seconds.
pub const AU_TIME_SECOND: f64 = 2.4188843265857e-17;
/// CODATA-2018: atomic unit of velocity in metres per second.
pub const AU_VELOCITY_M_PER_S: f64 = 2.18769126364e6;

/// Unit tag for I/O-side quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    ElectronVolt,
    Angstrom,
    /// Å⁻¹, for the barrier power.
    InverseAngstrom,
    Second,
    /// Already in Hartree atomic units (pass-through).
    Atomic,
}

/// Conversion factors into Hartree atomic units.
#[derive(Debug, Clone, Copy)]
pub struct UnitSystem<T> {
    pub hartree_per_ev: T,
    pub bohr_per_angstrom: T,
    pub au_time_per_second: T,
}

impl<T: Real> Default for UnitSystem<T> {
    fn default() -> Self {
        Self {
            hartree_per_ev: T::one() / T::lit(HARTREE_EV),
            bohr_per_angstrom: T::one() / T::lit(BOHR_ANGSTROM),
            au_time_per_second: T::one() / T::lit(AU_TIME_SECOND),
        }
    }
}

impl<T: Real> UnitSystem<T> {
    /// Converts a tagged quantity into atomic units.
    pub fn to_atomic(&self, value: T, unit: Unit) -> Result<T> {
        if !value.is_finite() {
            return Err(Error::Config(format!("non-finite quantity {value}")));
        }
        Ok(match unit {
            Unit::ElectronVolt => value * self.hartree_per_ev,
            Unit::Angstrom => value * self.bohr_per_angstrom,
            Unit::InverseAngstrom => value / self.bohr_per_angstrom,
            Unit::Second => value * self.au_time_per_second,
            Unit::Atomic => value,
        })
    }

    pub fn ev_to_au(&self, ev: T) -> T {
        ev * self.hartree_per_ev
    }

    pub fn au_to_ev(&self, au: T) -> T {
        au / self.hartree_per_ev
    }

    pub fn angstrom_to_au(&self, ang: T) -> T {
        ang * self.bohr_per_angstrom
    }

    pub fn au_to_angstrom(&self, au: T) -> T {
        au / self.bohr_per_angstrom
    }

    pub fn au_velocity_to_m_per_s(&self, au: T) -> T {
        au * T::lit(AU_VELOCITY_M_PER_S)
    }

    pub fn au_time_to_seconds(&self, au: T) -> T {
        au * T::lit(AU_TIME_SECOND)
    }
}

fn ensure_finite<T: Real>(name: &str, v: T) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must be finite, got {v}")))
    }
}

/// Geometry and potentials of the well/barrier system, in atomic units.
///
/// Hard wall at x = 0, delta barriers of power `omega` at d and 2d, interior
/// potential −χ (energies counted from the vacuum level), exterior 0.
#[derive(Debug, Clone, Copy)]
pub struct EmitterConfig<T> {
    d: T,
    omega: T,
    chi: T,
}

impl<T: Real> EmitterConfig<T> {
    pub fn new(d: T, omega: T, chi: T) -> Result<Self> {
        ensure_finite("d", d)?;
        ensure_finite("omega", omega)?;
        ensure_finite("chi", chi)?;
        if d <= T::zero() {
            return Err(Error::Config(format!("d must be > 0, got {d}")));
        }
        if omega < T::zero() {
            return Err(Error::Config(format!("omega must be >= 0, got {omega}")));
        }
        if chi <= T::zero() {
            return Err(Error::Config(format!("chi must be > 0, got {chi}")));
        }
        Ok(Self { d, omega, chi })
    }

    /// Barrier spacing d (a.u.).
    pub fn d(&self) -> T {
        self.d
    }

    /// Delta-barrier power Ω (inverse length, a.u.).
    pub fn omega(&self) -> T {
        self.omega
    }

    /// Electron affinity χ (a.u.); the interior potential is −χ.
    pub fn chi(&self) -> T {
        self.chi
    }

    /// Hard-wall position.
    pub fn x1(&self) -> T {
        T::zero()
    }

    /// First barrier position.
    pub fn x2(&self) -> T {
        self.d
    }

    /// Second barrier position = emitter surface.
    pub fn x3(&self) -> T {
        self.d * T::two()
    }

    /// Potential in region j (1-based): −χ inside, 0 outside.
    pub fn potential(&self, region: usize) -> T {
        if region < 3 {
            -self.chi
        } else {
            T::zero()
        }
    }
}

/// Detected energy band above the vacuum level, in atomic units.
#[derive(Debug, Clone, Copy)]
pub struct EnergyBand<T> {
    e_min: T,
    e_max: T,
}

impl<T: Real> EnergyBand<T> {
    pub fn new(e_min: T, e_max: T) -> Result<Self> {
        ensure_finite("e_min", e_min)?;
        ensure_finite("e_max", e_max)?;
        if !(T::zero() < e_min && e_min < e_max) {
            return Err(Error::Config(format!(
                "band must satisfy 0 < e_min < e_max, got [{e_min}, {e_max}]"
            )));
        }
        Ok(Self { e_min, e_max })
    }

    pub fn e_min(&self) -> T {
        self.e_min
    }

    pub fn e_max(&self) -> T {
        self.e_max
    }

    pub fn width(&self) -> T {
        self.e_max - self.e_min
    }

    pub fn center(&self) -> T {
        (self.e_min + self.e_max) * T::half()
    }

    pub fn contains(&self, e: T) -> bool {
        self.e_min <= e && e <= self.e_max
    }
}

/// Dissipative level broadening γ_p from inelastic scattering (a.u.).
///
/// γ_p sets both the quasi-diagonal width of the energy denominator
/// (E' − E) + iγ_p and the overall pulse decay rate e^{−γ_p t}.
#[derive(Debug, Clone, Copy)]
pub struct RelaxationParams<T> {
    gamma_p: T,
}

impl<T: Real> RelaxationParams<T> {
    pub fn new(gamma_p: T) -> Result<Self> {
        ensure_finite("gamma_p", gamma_p)?;
        if gamma_p <= T::zero() {
            return Err(Error::Config(format!("gamma_p must be > 0, got {gamma_p}")));
        }
        Ok(Self { gamma_p })
    }

    pub fn gamma_p(&self) -> T {
        self.gamma_p
    }

    /// Pair broadening γ_{p'p} entering the energy denominator and the time
    /// exponent. Equal to γ_p; this is the convention the reference results
    /// are computed with.
    pub fn pair_broadening(&self) -> T {
        self.gamma_p
    }
}

/// Rectangular pump phase selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PumpMode {
    /// Pump switched on at t = 0, evaluated for 0 ≤ t (≤ t0 physically).
    PumpOn,
    /// Stationary saturation limit t → ∞; ignores t0.
    Saturation,
    /// Pump switched off at t0, evaluated for t ≥ t0.
    Decay,
}

/// Rectangular optical pump: sharp on at t = 0, sharp off at t0.
#[derive(Debug, Clone, Copy)]
pub struct PumpSchedule<T> {
    t0: T,
    d_factor: T,
    mode: PumpMode,
}

impl<T: Real> PumpSchedule<T> {
    pub fn new(t0: T, d_factor: T, mode: PumpMode) -> Result<Self> {
        ensure_finite("t0", t0)?;
        ensure_finite("d_factor", d_factor)?;
        if mode != PumpMode::Saturation && t0 <= T::zero() {
            return Err(Error::Config(format!("t0 must be > 0, got {t0}")));
        }
        if d_factor <= T::zero() {
            return Err(Error::Config(format!("d_factor must be > 0, got {d_factor}")));
        }
        Ok(Self { t0, d_factor, mode })
    }

    pub fn pump_on(t0: T) -> Result<Self> {
        Self::new(t0, T::one(), PumpMode::PumpOn)
    }

    pub fn saturation() -> Self {
        Self {
            t0: T::one(),
            d_factor: T::one(),
            mode: PumpMode::Saturation,
        }
    }

    pub fn decay(t0: T) -> Result<Self> {
        Self::new(t0, T::one(), PumpMode::Decay)
    }

    pub fn t0(&self) -> T {
        self.t0
    }

    pub fn d_factor(&self) -> T {
        self.d_factor
    }

    pub fn mode(&self) -> PumpMode {
        self.mode
    }

    pub fn with_mode(mut self, mode: PumpMode) -> Self {
        self.mode = mode;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn units() -> UnitSystem<f64> {
        UnitSystem::default()
    }

    #[test]
    fn hartree_definition() {
        let u = units();
        assert_relative_eq!(
            u.to_atomic(27.211386245988, Unit::ElectronVolt).unwrap(),
            1.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn ev_round_trip_is_identity() {
        let u = units();
        for ev in [1e-4, 0.653, 4.0, 27.2114] {
            let back = u.au_to_ev(u.ev_to_au(ev));
            assert_relative_eq!(back, ev, max_relative = 1e-12);
        }
    }

    #[test]
    fn barrier_power_conversion() {
        // Ω = 18.9 Å⁻¹ is 10 a.u. to the printing precision of the source value.
        let u = units();
        let omega = u.to_atomic(18.9, Unit::InverseAngstrom).unwrap();
        assert_relative_eq!(omega, 10.0, max_relative = 2e-3);
        // and exactly: 10 a.u. = 18.897 Å⁻¹
        assert_relative_eq!(10.0 / u.bohr_per_angstrom.recip(), 18.897, max_relative = 1e-4);
    }

    #[test]
    fn film_thickness_conversion() {
        let u = units();
        let d = u.to_atomic(125.0, Unit::Angstrom).unwrap();
        assert_relative_eq!(d, 236.22, max_relative = 1e-4);
        assert_relative_eq!(d, 125.0 / BOHR_ANGSTROM, max_relative = 1e-14);
    }

    #[test]
    fn doublet_spacing_cross_check() {
        // ΔE = 8.77e-3 eV gives a beat period 2π/ΔE ≈ 1.95e4 a.u.
        let u = units();
        let de = u.ev_to_au(8.77e-3);
        let t12 = std::f64::consts::TAU / de;
        assert_relative_eq!(t12, 1.95e4, max_relative = 5e-3);
        // and in seconds ≈ 4.72e-13
        assert_relative_eq!(u.au_time_to_seconds(t12), 4.72e-13, max_relative = 5e-3);
    }

    #[test]
    fn gamma_conversion_matches_quoted_value() {
        let u = units();
        assert_relative_eq!(u.ev_to_au(1e-4), 3.675e-6, max_relative = 2e-4);
    }

    #[test]
    fn config_rejects_bad_values() {
        assert!(EmitterConfig::new(0.0, 10.0, 0.147).is_err());
        assert!(EmitterConfig::new(236.0, -1.0, 0.147).is_err());
        assert!(EmitterConfig::new(236.0, 10.0, f64::NAN).is_err());
        assert!(EnergyBand::new(0.0, 0.025).is_err());
        assert!(EnergyBand::new(0.025, 0.024).is_err());
        assert!(EnergyBand::new(f64::INFINITY, 1.0).is_err());
        assert!(RelaxationParams::new(0.0).is_err());
        assert!(PumpSchedule::new(-1.0, 1.0, PumpMode::PumpOn).is_err());
        assert!(PumpSchedule::new(1e5, 0.0, PumpMode::PumpOn).is_err());
    }

    #[test]
    fn derived_positions() {
        let cfg = EmitterConfig::new(236.0, 10.0, 0.147).unwrap();
        assert_eq!(cfg.x1(), 0.0);
        assert_eq!(cfg.x2(), 236.0);
        assert_eq!(cfg.x3(), 472.0);
        assert_eq!(cfg.potential(1), -0.147);
        assert_eq!(cfg.potential(2), -0.147);
        assert_eq!(cfg.potential(3), 0.0);
    }

    #[test]
    fn unknown_unit_variants_all_convert() {
        // Every tag converts; pass-through for atomic units.
        let u = units();
        assert_eq!(u.to_atomic(2.5, Unit::Atomic).unwrap(), 2.5);
        assert!(u.to_atomic(f64::NAN, Unit::Atomic).is_err());
    }

    #[test]
    fn f32_units_smoke() {
        let u: UnitSystem<f32> = UnitSystem::default();
        let e = u.ev_to_au(27.211386_f32);
        assert!((e - 1.0).abs() < 1e-5);
    }
}
