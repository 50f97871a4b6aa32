//! Closed-form second-order density-matrix kernels for rectangular pumping:
//! pump-on, stationary saturation, and post-pump decay, with the resonance
//! pole factorization built in.
//!
//! With D the constant pump strength, γ the broadening, and m_r the
//! resonance denominator, the kernel evaluated between the state of energy
//! `e` (un-conjugated wave function) and `e'` (conjugated wave function) is
//!
//!   ρ(e, e', t) = 2πi·D / ((e' − e) + iγ) · 1/(m̄_r(e)·m_r(e')) · B(t)
//!
//! where B = 1 − e^{i(e'−e)t − γt} while pumping, 1 in saturation, and
//! B(t₀)·e^{i(e'−e)(t−t₀) − γ(t−t₀)} after switch-off. The conjugated
//! denominator sits on the un-conjugated side so the poles feed decaying
//! quasi-stationary waves.

use crate::error::{Error, Result};
use crate::model::{EmitterConfig, PumpMode, PumpSchedule, RelaxationParams};
use crate::quadrature::EnergyGrid;
use crate::scalar::{cplx, imag_unit, Cplx, Real};
use crate::scattering::resonance_denominator;

/// Largest decay exponent magnitude before the factor is flushed to zero.
const EXP_UNDERFLOW: f64 = 700.0;

/// e^{i·phase − decay} with the decay factor evaluated first and flushed to
/// zero beyond the underflow threshold.
#[inline]
fn damped_phase<T: Real>(phase: T, decay: T) -> Cplx<T> {
    if decay > T::lit(EXP_UNDERFLOW) {
        return Cplx::new(T::zero(), T::zero());
    }
    let amp = (-decay).exp();
    Cplx::from_polar(amp, phase)
}

/// Kernel context: pump/relaxation parameters plus m_r cached on the energy
/// grid nodes. Immutable once built; shared read-only across workers.
#[derive(Debug, Clone)]
pub struct RhoKernel<T> {
    gamma: T,
    d_factor: T,
    t0: T,
    mode: PumpMode,
    nodes: Vec<T>,
    m_r: Vec<Cplx<T>>,
}

impl<T: Real> RhoKernel<T> {
    pub fn new(
        config: &EmitterConfig<T>,
        relax: &RelaxationParams<T>,
        pump: &PumpSchedule<T>,
        grid: &EnergyGrid<T>,
    ) -> Result<Self> {
        let mut m_r = Vec::with_capacity(grid.len());
        for &e in &grid.nodes {
            m_r.push(resonance_denominator(cplx(e), config)?);
        }
        Ok(Self {
            gamma: relax.pair_broadening(),
            d_factor: pump.d_factor(),
            t0: pump.t0(),
            mode: pump.mode(),
            nodes: grid.nodes.clone(),
            m_r,
        })
    }

    /// Kernel without grid caching, for point evaluations.
    pub fn for_point_use(
        relax: &RelaxationParams<T>,
        pump: &PumpSchedule<T>,
    ) -> Self {
        Self {
            gamma: relax.pair_broadening(),
            d_factor: pump.d_factor(),
            t0: pump.t0(),
            mode: pump.mode(),
            nodes: Vec::new(),
            m_r: Vec::new(),
        }
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    pub fn t0(&self) -> T {
        self.t0
    }

    pub fn mode(&self) -> PumpMode {
        self.mode
    }

    pub fn d_factor(&self) -> T {
        self.d_factor
    }

    pub fn node_energies(&self) -> &[T] {
        &self.nodes
    }

    pub fn m_r_at(&self, idx: usize) -> Cplx<T> {
        self.m_r[idx]
    }

    /// 2πi·D / ((e'−e) + iγ) / (m̄_r(e)·m_r(e')).
    #[inline]
    pub fn prefactor(&self, e: T, e_prime: T, mr_e: Cplx<T>, mr_ep: Cplx<T>) -> Cplx<T> {
        let denom = Cplx::new(e_prime - e, self.gamma);
        let two_pi_i = imag_unit::<T>() * cplx(T::TAU());
        two_pi_i * cplx(self.d_factor) / (denom * mr_e.conj() * mr_ep)
    }

    /// Pump bracket 1 − e^{i(e'−e)t − γt}.
    #[inline]
    pub fn pump_bracket(&self, e: T, e_prime: T, t: T) -> Cplx<T> {
        cplx(T::one()) - damped_phase((e_prime - e) * t, self.gamma * t)
    }

    /// Decay propagator e^{i(e'−e)(t−t0) − γ(t−t0)}.
    #[inline]
    pub fn decay_factor(&self, e: T, e_prime: T, t: T) -> Cplx<T> {
        let dt = t - self.t0;
        damped_phase((e_prime - e) * dt, self.gamma * dt)
    }
}

fn mr_pair<T: Real>(
    e: T,
    e_prime: T,
    config: &EmitterConfig<T>,
) -> Result<(Cplx<T>, Cplx<T>)> {
    Ok((
        resonance_denominator(cplx(e), config)?,
        resonance_denominator(cplx(e_prime), config)?,
    ))
}

/// ρ during pumping, t ≥ 0.
pub fn rho_pump<T: Real>(
    e: T,
    e_prime: T,
    t: T,
    kernel: &RhoKernel<T>,
    config: &EmitterConfig<T>,
) -> Result<Cplx<T>> {
    if t < T::zero() {
        return Err(Error::Domain(format!("pump kernel needs t >= 0, got {t}")));
    }
    let (mr_e, mr_ep) = mr_pair(e, e_prime, config)?;
    Ok(kernel.prefactor(e, e_prime, mr_e, mr_ep) * kernel.pump_bracket(e, e_prime, t))
}

/// ρ in the stationary saturation limit t → ∞.
pub fn rho_saturation<T: Real>(
    e: T,
    e_prime: T,
    kernel: &RhoKernel<T>,
    config: &EmitterConfig<T>,
) -> Result<Cplx<T>> {
    let (mr_e, mr_ep) = mr_pair(e, e_prime, config)?;
    Ok(kernel.prefactor(e, e_prime, mr_e, mr_ep))
}

/// ρ after the pump switches off at t₀, for t ≥ t₀.
pub fn rho_decay<T: Real>(
    e: T,
    e_prime: T,
    t: T,
    kernel: &RhoKernel<T>,
    config: &EmitterConfig<T>,
) -> Result<Cplx<T>> {
    if t < kernel.t0() {
        return Err(Error::Domain(format!(
            "decay kernel needs t >= t0 = {}, got {t}",
            kernel.t0()
        )));
    }
    let at_t0 = rho_pump(e, e_prime, kernel.t0(), kernel, config)?;
    Ok(at_t0 * kernel.decay_factor(e, e_prime, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{EnergyBand, BOHR_ANGSTROM, HARTREE_EV};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn setup() -> (
        EmitterConfig<f64>,
        RelaxationParams<f64>,
        PumpSchedule<f64>,
        RhoKernel<f64>,
    ) {
        let cfg = EmitterConfig::new(125.0 / BOHR_ANGSTROM, 10.0, 4.0 / HARTREE_EV).unwrap();
        let relax = RelaxationParams::new(1e-4 / HARTREE_EV).unwrap();
        let pump = PumpSchedule::pump_on(1e5).unwrap();
        let kernel = RhoKernel::for_point_use(&relax, &pump);
        (cfg, relax, pump, kernel)
    }

    fn band() -> EnergyBand<f64> {
        EnergyBand::new(0.640 / HARTREE_EV, 0.680 / HARTREE_EV).unwrap()
    }

    #[test]
    fn pump_vanishes_at_t_zero() {
        let (cfg, _, _, kernel) = setup();
        let b = band();
        let v = rho_pump(b.e_min(), b.e_max(), 0.0, &kernel, &cfg).unwrap();
        assert_eq!(v, Cplx::new(0.0, 0.0));
    }

    #[test]
    fn diagonal_is_real_positive_and_monotone() {
        let (cfg, relax, _, kernel) = setup();
        let e = 0.653 / HARTREE_EV;
        let gamma = relax.gamma_p();
        let mr = resonance_denominator(cplx(e), &cfg).unwrap();
        let mut prev = 0.0;
        for t in [1e3, 1e4, 5e4, 1e5, 5e5] {
            let v = rho_pump(e, e, t, &kernel, &cfg).unwrap();
            assert!(v.im.abs() <= 1e-12 * v.re.abs());
            assert!(v.re > prev, "diagonal must grow with t");
            // closed form (2π D / γ)|m_r|⁻²(1 − e^{−γ t}) with the pair
            // broadening γ_pair = γ_p
            let expect =
                2.0 * std::f64::consts::PI / gamma / mr.norm_sqr() * (1.0 - (-gamma * t).exp());
            assert_relative_eq!(v.re, expect, max_relative = 1e-12);
            prev = v.re;
        }
    }

    #[test]
    fn pump_approaches_saturation() {
        let (cfg, relax, _, kernel) = setup();
        let b = band();
        let e = b.e_min() + 0.3 * b.width();
        let ep = b.e_min() + 0.7 * b.width();
        // t with e^{-γt} < 1e-13
        let t = 14.0 * (10.0_f64).ln() / relax.gamma_p();
        let p = rho_pump(e, ep, t, &kernel, &cfg).unwrap();
        let s = rho_saturation(e, ep, &kernel, &cfg).unwrap();
        assert!((p - s).norm() <= 1e-12 * s.norm());
    }

    #[test]
    fn saturation_magnitude_peaks_on_pole_diagonal() {
        // |ρ₀(E,E)| over a coarse grid is largest near (E'_R1, E'_R1) and
        // (E'_R2, E'_R2).
        let (cfg, _, _, kernel) = setup();
        let b = band();
        let n = 400;
        let mut best = (0.0_f64, 0.0_f64);
        for i in 0..n {
            let e = b.e_min() + b.width() * (i as f64 + 0.5) / n as f64;
            let v = rho_saturation(e, e, &kernel, &cfg).unwrap().norm();
            if v > best.1 {
                best = (e, v);
            }
        }
        let ev = best.0 * HARTREE_EV;
        assert!(
            (ev - 0.6489).abs() < 2e-3 || (ev - 0.6576).abs() < 2e-3,
            "peak at {ev} eV"
        );
        // and quasi-diagonal enhancement: same-E value dominates off-diagonal
        let e1 = 0.6489 / HARTREE_EV;
        let far = rho_saturation(e1, e1 + 20.0 * kernel.gamma(), &kernel, &cfg)
            .unwrap()
            .norm();
        let diag = rho_saturation(e1, e1, &kernel, &cfg).unwrap().norm();
        assert!(diag > 10.0 * far);
    }

    #[test]
    fn energy_denominator_scaling_with_frozen_m_r() {
        // Doubling |E−E'| (≫ γ) halves the prefactor magnitude at fixed m_r.
        let (_, relax, pump, _) = setup();
        let kernel = RhoKernel::for_point_use(&relax, &pump);
        let mr = Cplx::new(3.0, -1.0);
        let e = 0.024;
        let d1 = 10.0 * relax.gamma_p();
        let a = kernel.prefactor(e, e + d1, mr, mr).norm();
        let b = kernel.prefactor(e, e + 2.0 * d1, mr, mr).norm();
        let expected = ((2.0 * d1).powi(2) + relax.gamma_p().powi(2)).sqrt()
            / (d1.powi(2) + relax.gamma_p().powi(2)).sqrt();
        assert_relative_eq!(a / b, expected, max_relative = 1e-12);
        assert_relative_eq!(a / b, 2.0, max_relative = 2e-2);
    }

    #[test]
    fn decay_starts_at_pump_value_and_damps_uniformly() {
        let (cfg, relax, pump, _) = setup();
        let kernel = RhoKernel::for_point_use(&relax, &pump.with_mode(PumpMode::Decay));
        let b = band();
        let e = b.e_min() + 0.2 * b.width();
        let ep = b.e_min() + 0.8 * b.width();
        let t0 = pump.t0();
        let at_t0 = rho_decay(e, ep, t0, &kernel, &cfg).unwrap();
        let pump_t0 = rho_pump(e, ep, t0, &kernel, &cfg).unwrap();
        assert_eq!(at_t0, pump_t0);

        let gamma = relax.gamma_p();
        for dt in [1e4, 1e5, 3e5] {
            let v = rho_decay(e, ep, t0 + dt, &kernel, &cfg).unwrap();
            assert_relative_eq!(
                v.norm(),
                pump_t0.norm() * (-gamma * dt).exp(),
                max_relative = 1e-12
            );
        }
        // modulus halves every ln2/γ_p ≈ 1.89e5 a.u. for γ_p = 1e-4 eV
        let half_time = (2.0_f64).ln() / gamma;
        assert_relative_eq!(half_time, 1.886e5, max_relative = 1e-3);
        let v = rho_decay(e, ep, t0 + half_time, &kernel, &cfg).unwrap();
        assert_relative_eq!(v.norm(), pump_t0.norm() / 2.0, max_relative = 1e-12);
    }

    #[test]
    fn decay_rejects_t_before_t0() {
        let (cfg, relax, pump, _) = setup();
        let kernel = RhoKernel::for_point_use(&relax, &pump.with_mode(PumpMode::Decay));
        assert!(matches!(
            rho_decay(0.024, 0.0241, 0.5 * pump.t0(), &kernel, &cfg),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn d_factor_scales_linearly() {
        let (cfg, relax, _, _) = setup();
        let b = band();
        let e = b.center();
        let ep = b.center() + 3.0 * relax.gamma_p();
        let k1 = RhoKernel::for_point_use(&relax, &PumpSchedule::new(1e5, 1.0, PumpMode::PumpOn).unwrap());
        let k3 = RhoKernel::for_point_use(&relax, &PumpSchedule::new(1e5, 3.0, PumpMode::PumpOn).unwrap());
        let a = rho_pump(e, ep, 4e4, &k1, &cfg).unwrap();
        let b3 = rho_pump(e, ep, 4e4, &k3, &cfg).unwrap();
        assert!((b3 - a * cplx(3.0)).norm() <= 1e-12 * b3.norm());
    }

    #[test]
    fn underflow_clamp_returns_zero() {
        let (cfg, relax, pump, _) = setup();
        let kernel = RhoKernel::for_point_use(&relax, &pump.with_mode(PumpMode::Decay));
        let t_huge = pump.t0() + 800.0 / relax.gamma_p();
        let v = rho_decay(0.024, 0.0241, t_huge, &kernel, &cfg).unwrap();
        assert_eq!(v, Cplx::new(0.0, 0.0));
    }

    proptest! {
        #[test]
        fn prop_hermiticity_all_kernels(
            ef in 0.0_f64..1.0,
            epf in 0.0_f64..1.0,
            tf in 0.0_f64..1.0,
        ) {
            let (cfg, _, pump, kernel) = setup();
            let b = band();
            let e = b.e_min() + ef * b.width();
            let ep = b.e_min() + epf * b.width();

            let t = tf * pump.t0();
            let a = rho_pump(e, ep, t, &kernel, &cfg).unwrap();
            let b_ = rho_pump(ep, e, t, &kernel, &cfg).unwrap();
            prop_assert!((a - b_.conj()).norm() <= 1e-12 * a.norm().max(1e-300));

            let a = rho_saturation(e, ep, &kernel, &cfg).unwrap();
            let b_ = rho_saturation(ep, e, &kernel, &cfg).unwrap();
            prop_assert!((a - b_.conj()).norm() <= 1e-12 * a.norm());

            let td = pump.t0() * (1.0 + tf);
            let a = rho_decay(e, ep, td, &kernel, &cfg).unwrap();
            let b_ = rho_decay(ep, e, td, &kernel, &cfg).unwrap();
            prop_assert!((a - b_.conj()).norm() <= 1e-12 * a.norm().max(1e-300));
        }
    }
}
