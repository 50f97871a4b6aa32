use wellpulse::field_solver::*;
use wellpulse::model::*;
use wellpulse::quadrature::build_energy_grid;
use wellpulse::resonances::find_poles;
use wellpulse::scattering::ContributionSelector;

fn main() {
    let cfg = EmitterConfig::new(125.0 / BOHR_ANGSTROM, 10.0, 4.0 / HARTREE_EV).unwrap();
    let band = EnergyBand::new(0.640 / HARTREE_EV, 0.680 / HARTREE_EV).unwrap();
    let relax = RelaxationParams::new(1e-4 / HARTREE_EV).unwrap();
    let poles = find_poles(&cfg, &band, 2000).unwrap();
    for p in &poles {
        println!(
            "pole: {:.6} + {:.4e} i eV (k = {:.6} + {:.3e} i)",
            p.e_re * HARTREE_EV,
            p.e_im * HARTREE_EV,
            p.k_re,
            p.k_im
        );
    }
    let grid = build_energy_grid(&band, &poles, 600).unwrap();
    println!("grid nodes: {}", grid.len());

    let jref = reference_current(&cfg, &relax, 1e5, &grid).unwrap();
    println!("jref raw = {jref:.6e} (expect ~3.31e-3)");

    let st = SpaceTimeGrid::new(vec![cfg.x3(), cfg.x3() + 2000.0], vec![1e4, 5e4]).unwrap();
    let sat = compute_fields(
        &cfg,
        &relax,
        &PumpSchedule::saturation(),
        &grid,
        &st,
        ContributionSelector::Full,
        Normalization::Raw,
    )
    .unwrap();
    println!(
        "sat: n(x3) = {:.6e}, j(x3) = {:.6e} (expect j ~ 8.9e-3); j/jref = {:.4}",
        sat.n_at(0, 0),
        sat.j_at(0, 0),
        sat.j_at(0, 0) / jref
    );
    println!("sat n cells: {:?}", sat.n);
}
