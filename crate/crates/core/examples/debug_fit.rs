use wellpulse::asymptotics::{extract_wave_params, SliceAxis};
use wellpulse::field_solver::*;
use wellpulse::model::*;
use wellpulse::quadrature::build_energy_grid;
use wellpulse::resonances::{find_doublet, find_poles};
use wellpulse::scattering::ContributionSelector;

fn lin(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn main() {
    let cfg = EmitterConfig::new(125.0 / BOHR_ANGSTROM, 10.0, 4.0 / HARTREE_EV).unwrap();
    let band = EnergyBand::new(0.640 / HARTREE_EV, 0.680 / HARTREE_EV).unwrap();
    let relax = RelaxationParams::new(1e-4 / HARTREE_EV).unwrap();
    let poles = find_poles(&cfg, &band, 3000).unwrap();
    let grid = build_energy_grid(&band, &poles, 600).unwrap();
    let d = find_doublet(&cfg, &band).unwrap();
    let jref = reference_current(&cfg, &relax, 1e5, &grid).unwrap();
    let x4 = 2.5e4 / BOHR_ANGSTROM;
    println!("T12 = {:.1}", d.t12);

    for (name, lo, periods, n) in [
        ("A", 3.0e5, 6.8, 140),
        ("B", 3.4e5, 7.0, 150),
        ("C", 3.2e5, 10.0, 170),
        ("D", 3.5e5, 10.0, 170),
        ("E", 2.6e5, 12.0, 200),
    ] {
        let ts = lin(lo, lo + periods * d.t12, n);
        let map = compute_fields(
            &cfg,
            &relax,
            &PumpSchedule::decay(1e5).unwrap(),
            &grid,
            &SpaceTimeGrid::new(vec![x4], ts.clone()).unwrap(),
            ContributionSelector::Full,
            Normalization::By(jref),
        )
        .unwrap();
        match extract_wave_params(&ts, &map.j_series_at_x(0), SliceAxis::Time, &d) {
            Ok(fit) => println!(
                "window {name} [{lo:.2e}, +{periods}T]: period {:.1} ({:+.2}%), kappa {:.2e}, resid {:.3}",
                fit.period,
                (fit.period / d.t12 - 1.0) * 100.0,
                fit.kappa,
                fit.residual_rms / fit.slice_rms
            ),
            Err(e) => println!("window {name}: {e}"),
        }
    }
}
