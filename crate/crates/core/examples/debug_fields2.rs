use wellpulse::field_solver::*;
use wellpulse::model::*;
use wellpulse::quadrature::build_energy_grid;
use wellpulse::resonances::find_poles;
use wellpulse::scattering::ContributionSelector;

fn main() {
    let cfg = EmitterConfig::new(125.0 / BOHR_ANGSTROM, 10.0, 4.0 / HARTREE_EV).unwrap();
    let band = EnergyBand::new(0.640 / HARTREE_EV, 0.680 / HARTREE_EV).unwrap();
    let relax = RelaxationParams::new(1e-4 / HARTREE_EV).unwrap();
    let poles = find_poles(&cfg, &band, 1500).unwrap();
    println!("poles: {}", poles.len());
    let grid = build_energy_grid(&band, &poles, 150).unwrap();
    println!("grid nodes: {}", grid.len());
    let st = SpaceTimeGrid::uniform(cfg.x3(), cfg.x3() + 3000.0, 4, 1e4, 9e4, 4).unwrap();
    let map = compute_fields(
        &cfg,
        &relax,
        &PumpSchedule::saturation(),
        &grid,
        &st,
        ContributionSelector::Full,
        Normalization::Raw,
    )
    .unwrap();
    println!("x nodes: {:?}", map.x_nodes);
    println!("t nodes: {:?}", map.t_nodes);
    for ix in 0..4 {
        let row: Vec<f64> = (0..4).map(|it| map.n_at(ix, it)).collect();
        println!("n row ix={ix}: {row:?}");
    }
}
