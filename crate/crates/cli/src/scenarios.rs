//! Named reproduction scenarios. Each scenario writes plot-ready CSV files
//! plus metadata sidecars into the output directory; all current/charge
//! values are relative to the Ω = 10 a.u. reference surface current
//! j(x₃, t₀) computed with the same film, band, and broadening.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use wellpulse::field_solver::{
    compute_fields, contribution_split, reference_current, FieldMap, Normalization, SpaceTimeGrid,
};
use wellpulse::model::{EmitterConfig, EnergyBand, PumpSchedule, UnitSystem};
use wellpulse::quadrature::{build_energy_grid, EnergyGrid};
use wellpulse::resonances::{find_poles, pair_into_doublets, Doublet, ResonancePole};
use wellpulse::scalar::cplx;
use wellpulse::scattering::{resonance_denominator, ContributionSelector};
use wellpulse::asymptotics::{extract_wave_params, SliceAxis};

use crate::config::RunConfig;
use crate::output::{
    write_comparison, write_doublet_table, write_field_map, write_profile, RunMetadata,
};

/// Grid resolutions per profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Ci,
    Paper,
}

impl Profile {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "ci" => Ok(Profile::Ci),
            "paper" => Ok(Profile::Paper),
            other => bail!("unknown profile `{other}` (ci|paper)"),
        }
    }

    fn n_energy_cap(&self) -> usize {
        match self {
            Profile::Ci => 150,
            Profile::Paper => usize::MAX,
        }
    }

    fn nt_pump(&self) -> usize {
        match self {
            Profile::Ci => 26,
            Profile::Paper => 51,
        }
    }

    fn nt_decay(&self) -> usize {
        match self {
            Profile::Ci => 56,
            Profile::Paper => 140,
        }
    }

    fn nx_coord(&self) -> usize {
        match self {
            Profile::Ci => 64,
            Profile::Paper => 160,
        }
    }

    fn nx_inset(&self) -> usize {
        match self {
            Profile::Ci => 48,
            Profile::Paper => 96,
        }
    }

    fn nt_fine(&self) -> usize {
        match self {
            Profile::Ci => 100,
            Profile::Paper => 240,
        }
    }

    fn n_scan(&self) -> usize {
        match self {
            Profile::Ci => 2000,
            Profile::Paper => 4000,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Profile::Ci => "ci",
            Profile::Paper => "paper",
        }
    }
}

/// Command-line overrides applied on top of the config file.
#[derive(Debug, Clone)]
pub struct Overrides {
    pub omega: Option<f64>,
    pub t0: Option<f64>,
    pub gamma_ev: Option<f64>,
    pub band_ev: Option<(f64, f64)>,
    pub selector: ContributionSelector,
    pub profile: Profile,
}

/// Everything a scenario needs, in atomic units, overrides applied.
struct Context64 {
    emitter: EmitterConfig<f64>,
    band: EnergyBand<f64>,
    relax: wellpulse::model::RelaxationParams<f64>,
    t0: f64,
    n_energy: usize,
    profile: Profile,
    selector: ContributionSelector,
    out_dir: PathBuf,
    meta: RunMetadata,
    /// Raw Ω = 10 reference current j(x₃, t₀), shared by every product.
    reference_j: f64,
    units: UnitSystem<f64>,
}

const REFERENCE_OMEGA: f64 = 10.0;
/// Far-field probe x₄ = 2.5e4 Å.
const X4_ANGSTROM: f64 = 2.5e4;

fn energy_grid_for(
    emitter: &EmitterConfig<f64>,
    band: &EnergyBand<f64>,
    n_energy: usize,
    n_scan: usize,
) -> Result<(EnergyGrid<f64>, Vec<ResonancePole<f64>>)> {
    let poles = if emitter.omega() > 0.0 {
        find_poles(emitter, band, n_scan)?
    } else {
        Vec::new()
    };
    let grid = build_energy_grid(band, &poles, n_energy)?;
    Ok((grid, poles))
}

fn apply_overrides(cfg: &RunConfig, ov: &Overrides) -> RunConfig {
    let mut cfg = cfg.clone();
    if let Some(om) = ov.omega {
        cfg.omega_au = om;
    }
    if let Some(t0) = ov.t0 {
        cfg.t0_au = t0;
    }
    if let Some(g) = ov.gamma_ev {
        cfg.gamma_ev = g;
    }
    if let Some((lo, hi)) = ov.band_ev {
        cfg.e_min_ev = lo;
        cfg.e_max_ev = hi;
    }
    cfg
}

impl Context64 {
    fn build(cfg: &RunConfig, out_dir: &Path, ov: &Overrides) -> Result<Self> {
        let cfg = apply_overrides(cfg, ov);
        let domain = cfg.to_domain()?;
        let n_energy = domain.n_energy.min(ov.profile.n_energy_cap()).max(100);
        let units = UnitSystem::<f64>::default();

        // reference run: same film with Ω = 10 a.u.
        let ref_emitter =
            EmitterConfig::new(domain.emitter.d(), REFERENCE_OMEGA, domain.emitter.chi())?;
        let (ref_grid, _) =
            energy_grid_for(&ref_emitter, &domain.band, n_energy, ov.profile.n_scan())?;
        let reference_j = reference_current(&ref_emitter, &domain.relax, cfg.t0_au, &ref_grid)?;

        let mut meta = RunMetadata::default();
        meta.push("profile", ov.profile.label());
        meta.push("d_angstrom", cfg.d_angstrom);
        meta.push("d_au", domain.emitter.d());
        meta.push("omega_au", cfg.omega_au);
        meta.push("chi_ev", cfg.chi_ev);
        meta.push("band_ev", format!("{}:{}", cfg.e_min_ev, cfg.e_max_ev));
        meta.push("gamma_ev", cfg.gamma_ev);
        meta.push("t0_au", cfg.t0_au);
        meta.push("n_energy_base", n_energy);
        meta.push("reference_omega_au", REFERENCE_OMEGA);
        meta.push("reference_grid_nodes", ref_grid.len());
        meta.push("reference_j_au", format!("{reference_j:.6e}"));
        meta.push(
            "conventions",
            "relative units j/j_ref(omega=10); pump constant D and densities of states \
             folded to 1; pair broadening = gamma_p in denominator and time decay",
        );

        Ok(Self {
            emitter: domain.emitter,
            band: domain.band,
            relax: domain.relax,
            t0: cfg.t0_au,
            n_energy,
            profile: ov.profile,
            selector: ov.selector,
            out_dir: out_dir.to_path_buf(),
            meta,
            reference_j,
            units,
        })
    }

    fn emitter_with_omega(&self, omega: f64) -> Result<EmitterConfig<f64>> {
        Ok(EmitterConfig::new(self.emitter.d(), omega, self.emitter.chi())?)
    }

    fn grid_for_omega(&self, omega: f64) -> Result<(EmitterConfig<f64>, EnergyGrid<f64>)> {
        let emitter = self.emitter_with_omega(omega)?;
        let (grid, _) =
            energy_grid_for(&emitter, &self.band, self.n_energy, self.profile.n_scan())?;
        Ok((emitter, grid))
    }

    fn x4_au(&self) -> f64 {
        self.units.angstrom_to_au(X4_ANGSTROM)
    }

    fn path(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }

    fn lin(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect()
    }

    /// Pump series on [t_eps, t0] then decay on (t0, t_max], concatenated.
    fn time_series(
        &self,
        emitter: &EmitterConfig<f64>,
        grid: &EnergyGrid<f64>,
        xs: Vec<f64>,
        t_max: f64,
        selector: ContributionSelector,
    ) -> Result<FieldMap<f64>> {
        let norm = Normalization::By(self.reference_j);
        let nt_p = self.profile.nt_pump();
        let nt_d = self.profile.nt_decay();
        let ts_pump = Self::lin(self.t0 / nt_p as f64, self.t0, nt_p);
        let pump_grid = SpaceTimeGrid::new(xs.clone(), ts_pump)?;
        let pump_map = compute_fields(
            emitter,
            &self.relax,
            &PumpSchedule::pump_on(self.t0)?,
            grid,
            &pump_grid,
            selector,
            norm,
        )?;
        let dt = (t_max - self.t0) / nt_d as f64;
        let ts_decay = Self::lin(self.t0 + dt, t_max, nt_d);
        let decay_grid = SpaceTimeGrid::new(xs, ts_decay)?;
        let decay_map = compute_fields(
            emitter,
            &self.relax,
            &PumpSchedule::decay(self.t0)?,
            grid,
            &decay_grid,
            selector,
            norm,
        )?;
        Ok(concat_time(&pump_map, &decay_map))
    }
}

/// Concatenates two maps sharing x nodes along the time axis.
fn concat_time(a: &FieldMap<f64>, b: &FieldMap<f64>) -> FieldMap<f64> {
    assert_eq!(a.x_nodes, b.x_nodes, "time concat needs equal x axes");
    let nta = a.t_nodes.len();
    let ntb = b.t_nodes.len();
    let mut t_nodes = a.t_nodes.clone();
    t_nodes.extend_from_slice(&b.t_nodes);
    let mut n = Vec::with_capacity(a.x_nodes.len() * (nta + ntb));
    let mut j = Vec::with_capacity(n.capacity());
    for ix in 0..a.x_nodes.len() {
        n.extend_from_slice(&a.n[ix * nta..(ix + 1) * nta]);
        n.extend_from_slice(&b.n[ix * ntb..(ix + 1) * ntb]);
        j.extend_from_slice(&a.j[ix * nta..(ix + 1) * nta]);
        j.extend_from_slice(&b.j[ix * ntb..(ix + 1) * ntb]);
    }
    FieldMap {
        x_nodes: a.x_nodes.clone(),
        t_nodes,
        n,
        j,
        selector: a.selector,
        reference_j: a.reference_j,
        max_im_ratio: a.max_im_ratio.max(b.max_im_ratio),
    }
}

fn omega_tag(omega: f64) -> String {
    if omega == omega.trunc() {
        format!("{}", omega as i64)
    } else {
        format!("{omega}").replace('.', "p")
    }
}

/// Known scenario names.
pub const SCENARIOS: &[&str] = &["fig2", "fig3-4", "fig5-7", "fig8-9", "fig10-17", "fig18-20"];

pub fn run_scenario(
    name: &str,
    cfg: &RunConfig,
    out_dir: &Path,
    overrides: &Overrides,
) -> Result<()> {
    std::fs::create_dir_all(out_dir)
        .with_context(|| format!("creating {}", out_dir.display()))?;
    let ctx = Context64::build(cfg, out_dir, overrides)?;
    match name {
        "fig2" => scenario_fig2(&ctx),
        "fig3-4" => scenario_fig3_4(&ctx),
        "fig5-7" => scenario_fig5_7(&ctx),
        "fig8-9" => scenario_fig8_9(&ctx),
        "fig10-17" => scenario_fig10_17(&ctx),
        "fig18-20" => scenario_fig18_20(&ctx),
        other => bail!("unknown scenario `{other}` (known: {})", SCENARIOS.join(", ")),
    }
}

/// Resonance scan: 1/|m_r| profile over the band plus the doublet table.
fn scenario_fig2(ctx: &Context64) -> Result<()> {
    let n = 2000;
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let e = ctx.band.e_min() + ctx.band.width() * i as f64 / (n - 1) as f64;
        let v = resonance_denominator(cplx(e), &ctx.emitter)?.norm().recip();
        rows.push((ctx.units.au_to_ev(e), v));
    }
    write_profile(&ctx.path("fig2_profile.csv"), &rows, &ctx.meta)?;

    let poles = find_poles(&ctx.emitter, &ctx.band, ctx.profile.n_scan())?;
    let doublets = pair_into_doublets(&poles);
    let lo_ev = ctx.units.au_to_ev(ctx.band.e_min());
    let hi_ev = ctx.units.au_to_ev(ctx.band.e_max());
    let table: Vec<(f64, f64, Doublet<f64>)> =
        doublets.into_iter().map(|d| (lo_ev, hi_ev, d)).collect();
    write_doublet_table(&ctx.path("fig2_doublets.csv"), &table, &ctx.meta)?;
    Ok(())
}

/// Surface and far-field time series for Ω = 0 and the configured Ω.
fn scenario_fig3_4(ctx: &Context64) -> Result<()> {
    for omega in [0.0, ctx.emitter.omega()] {
        let (emitter, grid) = ctx.grid_for_omega(omega)?;
        let xs = vec![emitter.x3(), ctx.x4_au()];
        let map = ctx.time_series(&emitter, &grid, xs, 8.0 * ctx.t0, ctx.selector)?;
        write_field_map(
            &ctx.path(&format!("fig3-4_omega{}.csv", omega_tag(omega))),
            &map,
            &ctx.meta,
        )?;
        if omega == ctx.emitter.omega() && omega == 0.0 {
            break; // configured Ω is zero: one pass covers both
        }
    }
    Ok(())
}

/// Coordinate snapshots while pumping (fig5, fig6 charge) and after
/// switch-off (fig7), interior points included for the insets.
fn scenario_fig5_7(ctx: &Context64) -> Result<()> {
    let norm = Normalization::By(ctx.reference_j);
    for omega in [0.0, ctx.emitter.omega()] {
        let (emitter, grid) = ctx.grid_for_omega(omega)?;
        let mut xs = Context64::lin(
            1.0,
            emitter.x3(),
            ctx.profile.nx_inset(),
        );
        xs.extend(Context64::lin(
            emitter.x3() + 10.0,
            ctx.units.angstrom_to_au(4.0e4),
            ctx.profile.nx_coord(),
        ));
        let ts_pump: Vec<f64> = (1..=5).map(|k| k as f64 * ctx.t0 / 5.0).collect();
        let pump_map = compute_fields(
            &emitter,
            &ctx.relax,
            &PumpSchedule::pump_on(ctx.t0)?,
            &grid,
            &SpaceTimeGrid::new(xs.clone(), ts_pump)?,
            ctx.selector,
            norm,
        )?;
        write_field_map(
            &ctx.path(&format!("fig5-6_omega{}.csv", omega_tag(omega))),
            &pump_map,
            &ctx.meta,
        )?;
        let ts_decay: Vec<f64> = (1..=8).map(|k| k as f64 * ctx.t0).collect();
        let ts_decay: Vec<f64> = ts_decay.into_iter().filter(|&t| t >= ctx.t0).collect();
        let decay_map = compute_fields(
            &emitter,
            &ctx.relax,
            &PumpSchedule::decay(ctx.t0)?,
            &grid,
            &SpaceTimeGrid::new(xs, ts_decay)?,
            ctx.selector,
            norm,
        )?;
        write_field_map(
            &ctx.path(&format!("fig7_omega{}.csv", omega_tag(omega))),
            &decay_map,
            &ctx.meta,
        )?;
        if omega == ctx.emitter.omega() && omega == 0.0 {
            break;
        }
    }
    Ok(())
}

/// Barrier-power sweep: surface time series and 1/|m_r| profiles, plus the
/// tracked-doublet table for the resolvable Ω values.
fn scenario_fig8_9(ctx: &Context64) -> Result<()> {
    let sweep = [20.0, 10.0, 6.0, 2.0, 0.5, 0.0];
    let mut doublet_rows = Vec::new();
    let scan_band = EnergyBand::new(
        ctx.units.ev_to_au(0.30),
        ctx.units.ev_to_au(0.70),
    )?;
    let mut tracked_center = ctx.units.ev_to_au(0.653);
    for &omega in &sweep {
        let (emitter, grid) = ctx.grid_for_omega(omega)?;
        let map = ctx.time_series(
            &emitter,
            &grid,
            vec![emitter.x3()],
            6.0 * ctx.t0,
            ctx.selector,
        )?;
        write_field_map(
            &ctx.path(&format!("fig8_omega{}.csv", omega_tag(omega))),
            &map,
            &ctx.meta,
        )?;

        let n = 1500;
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let e = ctx.band.e_min() + ctx.band.width() * i as f64 / (n - 1) as f64;
            let v = resonance_denominator(cplx(e), &emitter)?.norm().recip();
            rows.push((ctx.units.au_to_ev(e), v));
        }
        write_profile(
            &ctx.path(&format!("fig9_omega{}.csv", omega_tag(omega))),
            &rows,
            &ctx.meta,
        )?;

        // track the doublet while it stays resolvable
        if omega >= 2.0 {
            let mut poles = find_poles(&emitter, &scan_band, 8000)?;
            poles.sort_by(|a, b| {
                (a.e_re - tracked_center)
                    .abs()
                    .partial_cmp(&(b.e_re - tracked_center).abs())
                    .unwrap()
            });
            if poles.len() >= 2 {
                let d = Doublet::from_poles(poles[0], poles[1]);
                tracked_center = (d.p1.e_re + d.p2.e_re) / 2.0;
                doublet_rows.push((
                    ctx.units.au_to_ev(scan_band.e_min()),
                    ctx.units.au_to_ev(scan_band.e_max()),
                    d,
                ));
            }
        }
    }
    write_doublet_table(&ctx.path("fig8-9_doublets.csv"), &doublet_rows, &ctx.meta)?;
    Ok(())
}

/// Outgoing/incoming contribution splits: far-field and surface time series
/// plus the coordinate snapshot at t = 3·t₀.
fn scenario_fig10_17(ctx: &Context64) -> Result<()> {
    let norm = Normalization::By(ctx.reference_j);
    for omega in [0.0, ctx.emitter.omega()] {
        let (emitter, grid) = ctx.grid_for_omega(omega)?;
        let xs = vec![emitter.x3(), ctx.x4_au()];
        for selector in [
            ContributionSelector::Full,
            ContributionSelector::OutgoingOnly,
            ContributionSelector::IncomingOnly,
        ] {
            let map = ctx.time_series(&emitter, &grid, xs.clone(), 6.0 * ctx.t0, selector)?;
            write_field_map(
                &ctx.path(&format!(
                    "fig10-13_omega{}_{}.csv",
                    omega_tag(omega),
                    selector.label()
                )),
                &map,
                &ctx.meta,
            )?;
        }

        let xs_coord = Context64::lin(
            emitter.x3() + 10.0,
            ctx.units.angstrom_to_au(4.0e4),
            ctx.profile.nx_coord(),
        );
        let snap = SpaceTimeGrid::new(xs_coord, vec![3.0 * ctx.t0])?;
        let (full, out, inc) = contribution_split(
            &emitter,
            &ctx.relax,
            &PumpSchedule::decay(ctx.t0)?,
            &grid,
            &snap,
            norm,
        )?;
        for map in [&full, &out, &inc] {
            write_field_map(
                &ctx.path(&format!(
                    "fig14-17_omega{}_{}.csv",
                    omega_tag(omega),
                    map.selector.label()
                )),
                map,
                &ctx.meta,
            )?;
        }
        if omega == ctx.emitter.omega() && omega == 0.0 {
            break;
        }
    }
    Ok(())
}

/// Pump-duration dependence j(x₃, t₀) and the stationary-limit coordinate
/// curves.
fn scenario_fig18_20(ctx: &Context64) -> Result<()> {
    let norm = Normalization::By(ctx.reference_j);
    for omega in [0.0, ctx.emitter.omega()] {
        let (emitter, grid) = ctx.grid_for_omega(omega)?;
        // j(x3, t0) as a function of t0 is the pump-mode series at x3
        let nt = ctx.profile.nt_fine();
        let ts = Context64::lin(4.0 * ctx.t0 / nt as f64, 4.0 * ctx.t0, nt);
        let map = compute_fields(
            &emitter,
            &ctx.relax,
            &PumpSchedule::pump_on(4.0 * ctx.t0)?,
            &grid,
            &SpaceTimeGrid::new(vec![emitter.x3()], ts)?,
            ctx.selector,
            norm,
        )?;
        write_field_map(
            &ctx.path(&format!("fig18_omega{}.csv", omega_tag(omega))),
            &map,
            &ctx.meta,
        )?;

        // coordinate curves at increasing t0 plus the stationary limit
        let xs = Context64::lin(
            emitter.x3() + 10.0,
            ctx.units.angstrom_to_au(5.0e4),
            ctx.profile.nx_coord(),
        );
        let t0s = vec![ctx.t0, 5.0 * ctx.t0, 10.0 * ctx.t0, 50.0 * ctx.t0];
        let curves = compute_fields(
            &emitter,
            &ctx.relax,
            &PumpSchedule::pump_on(50.0 * ctx.t0)?,
            &grid,
            &SpaceTimeGrid::new(xs.clone(), t0s)?,
            ctx.selector,
            norm,
        )?;
        let name = if omega == 0.0 { "fig20" } else { "fig19" };
        write_field_map(
            &ctx.path(&format!("{name}_omega{}.csv", omega_tag(omega))),
            &curves,
            &ctx.meta,
        )?;
        let stationary = compute_fields(
            &emitter,
            &ctx.relax,
            &PumpSchedule::saturation(),
            &grid,
            &SpaceTimeGrid::new(xs, vec![ctx.t0])?,
            ctx.selector,
            norm,
        )?;
        write_field_map(
            &ctx.path(&format!("{name}_stationary_omega{}.csv", omega_tag(omega))),
            &stationary,
            &ctx.meta,
        )?;
        if omega == ctx.emitter.omega() && omega == 0.0 {
            break;
        }
    }
    Ok(())
}

/// `map` subcommand: one field map on exactly the configured space-time
/// grid, with the configured pump mode and the chosen selector.
pub fn run_map(cfg: &RunConfig, out_dir: &Path, overrides: &Overrides) -> Result<()> {
    std::fs::create_dir_all(out_dir)?;
    let ctx = Context64::build(cfg, out_dir, overrides)?;
    let domain = apply_overrides(cfg, overrides).to_domain()?;
    let (emitter, grid) = ctx.grid_for_omega(ctx.emitter.omega())?;
    let stgrid = SpaceTimeGrid::new(domain.x_nodes_au, domain.t_nodes_au)?;
    let map = compute_fields(
        &emitter,
        &ctx.relax,
        &domain.pump,
        &grid,
        &stgrid,
        ctx.selector,
        Normalization::By(ctx.reference_j),
    )?;
    write_field_map(&out_dir.join("map.csv"), &map, &ctx.meta)?;
    Ok(())
}

/// `doublets` subcommand: scan a window and emit the doublet table.
pub fn run_doublets(
    cfg: &RunConfig,
    out_dir: &Path,
    overrides: &Overrides,
    scan_lo_ev: f64,
    scan_hi_ev: f64,
) -> Result<()> {
    std::fs::create_dir_all(out_dir)?;
    let ctx = Context64::build(cfg, out_dir, overrides)?;
    let lo = ctx.units.ev_to_au(scan_lo_ev.max(1e-4));
    let hi = ctx.units.ev_to_au(scan_hi_ev);
    let band = EnergyBand::new(lo, hi)?;
    let n_scan = ((scan_hi_ev - scan_lo_ev) / 0.95 * 12000.0).ceil() as usize;
    let poles = find_poles(&ctx.emitter, &band, n_scan.max(2000))?;
    let doublets = pair_into_doublets(&poles);
    let rows: Vec<(f64, f64, Doublet<f64>)> = doublets
        .into_iter()
        .map(|d| (scan_lo_ev, scan_hi_ev, d))
        .collect();
    write_doublet_table(&out_dir.join("doublets.csv"), &rows, &ctx.meta)?;
    Ok(())
}

/// `compare` subcommand: doublet-predicted beat observables against values
/// fitted from computed decay-mode slices.
pub fn run_compare(cfg: &RunConfig, out_dir: &Path, overrides: &Overrides) -> Result<()> {
    std::fs::create_dir_all(out_dir)?;
    let ctx = Context64::build(cfg, out_dir, overrides)?;
    let doublet = wellpulse::resonances::find_doublet(&ctx.emitter, &ctx.band)?;
    let (emitter, grid) = ctx.grid_for_omega(ctx.emitter.omega())?;
    let norm = Normalization::By(ctx.reference_j);

    // time slice at x4 in decay mode
    let nt = 160;
    let ts = Context64::lin(ctx.t0 * 1.05, ctx.t0 + 11.0 * doublet.t12, nt);
    let tmap = compute_fields(
        &emitter,
        &ctx.relax,
        &PumpSchedule::decay(ctx.t0)?,
        &grid,
        &SpaceTimeGrid::new(vec![ctx.x4_au()], ts.clone())?,
        ContributionSelector::Full,
        norm,
    )?;
    let tfit = extract_wave_params(&ts, &tmap.j_series_at_x(0), SliceAxis::Time, &doublet)?;

    // spatial slice at t = 3 t0 in decay mode
    let nx = 220;
    let xs = Context64::lin(
        emitter.x3() + 500.0,
        emitter.x3() + 10.5 * doublet.lambda12,
        nx,
    );
    let xmap = compute_fields(
        &emitter,
        &ctx.relax,
        &PumpSchedule::decay(ctx.t0)?,
        &grid,
        &SpaceTimeGrid::new(xs.clone(), vec![3.0 * ctx.t0])?,
        ContributionSelector::Full,
        norm,
    )?;
    let xfit = extract_wave_params(&xs, &xmap.j_slice_at_t(0), SliceAxis::Space, &doublet)?;

    let rows = vec![
        ("t12_au".to_string(), doublet.t12, tfit.period),
        (
            "lambda12_angstrom".to_string(),
            ctx.units.au_to_angstrom(doublet.lambda12),
            ctx.units.au_to_angstrom(xfit.period),
        ),
        (
            "time_decay_rate_au".to_string(),
            doublet.p1.e_im.abs() + doublet.p2.e_im.abs(),
            tfit.kappa,
        ),
        (
            "space_decay_rate_au".to_string(),
            doublet.p1.k_im.abs() + doublet.p2.k_im.abs(),
            xfit.kappa,
        ),
    ];
    write_comparison(&out_dir.join("compare.csv"), &rows, &ctx.meta)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_tags() {
        assert_eq!(omega_tag(10.0), "10");
        assert_eq!(omega_tag(0.0), "0");
        assert_eq!(omega_tag(0.5), "0p5");
    }

    #[test]
    fn scenario_names_are_known() {
        for n in SCENARIOS {
            assert!(!n.is_empty());
        }
    }
}
