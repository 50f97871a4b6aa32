//! Independent numerical oracles for the scattering solution: a Runge-Kutta
//! shooting integration of the Schrödinger equation with the delta barriers
//! smoothed into narrow tall rectangles of equal integral.

mod common;

use common::m_r_shooting;
use num_complex::Complex64 as C64;
use wellpulse::model::{EmitterConfig, EnergyBand, BOHR_ANGSTROM, HARTREE_EV};
use wellpulse::resonances::find_poles;
use wellpulse::scattering::resonance_denominator;

fn paper_config() -> EmitterConfig<f64> {
    EmitterConfig::new(125.0 / BOHR_ANGSTROM, 10.0, 4.0 / HARTREE_EV).unwrap()
}

#[test]
fn shooting_oracle_matches_transfer_matrix() {
    let cfg = paper_config();
    let width = 1e-8;
    for e_ev in [0.60, 0.6489, 0.653, 0.6576, 0.66, 0.68, 0.90] {
        let e = e_ev / HARTREE_EV;
        let oracle = m_r_shooting(e, &cfg, width);
        let exact = resonance_denominator(C64::from(e), &cfg).unwrap();
        let rel = (oracle - exact).norm() / exact.norm();
        assert!(
            rel <= 1e-5,
            "relative mismatch {rel:.2e} at {e_ev} eV: oracle {oracle}, exact {exact}"
        );
    }
}

#[test]
fn shooting_oracle_matches_without_barriers() {
    let cfg = EmitterConfig::new(125.0 / BOHR_ANGSTROM, 0.0, 4.0 / HARTREE_EV).unwrap();
    for e_ev in [0.62, 0.653, 0.69] {
        let e = e_ev / HARTREE_EV;
        let oracle = m_r_shooting(e, &cfg, 1e-8);
        let exact = resonance_denominator(C64::from(e), &cfg).unwrap();
        let rel = (oracle - exact).norm() / exact.norm();
        assert!(rel <= 1e-5, "relative mismatch {rel:.2e} at {e_ev} eV");
    }
}

#[test]
fn real_axis_scan_reproduces_sharp_peak_pair() {
    // 1/|m_r| over the fourth-doublet band shows exactly two sharp peaks at
    // the pole locations.
    let cfg = paper_config();
    let band = EnergyBand::new(0.640 / HARTREE_EV, 0.680 / HARTREE_EV).unwrap();
    let poles = find_poles(&cfg, &band, 3000).unwrap();
    assert_eq!(poles.len(), 2);
    let n = 3000;
    let mut peaks = Vec::new();
    let vals: Vec<f64> = (0..n)
        .map(|i| {
            let e = band.e_min() + band.width() * i as f64 / (n - 1) as f64;
            resonance_denominator(C64::from(e), &cfg)
                .unwrap()
                .norm()
                .recip()
        })
        .collect();
    let max = vals.iter().cloned().fold(0.0, f64::max);
    for i in 1..n - 1 {
        if vals[i] > vals[i - 1] && vals[i] > vals[i + 1] && vals[i] > 0.05 * max {
            peaks.push(band.e_min() + band.width() * i as f64 / (n - 1) as f64);
        }
    }
    assert_eq!(peaks.len(), 2, "peaks: {peaks:?}");
    for (peak, pole) in peaks.iter().zip(&poles) {
        assert!((peak - pole.e_re).abs() < 2.0 * band.width() / n as f64);
    }
}
