//! Contraction of the density-matrix kernel against wave-function matrix
//! elements over the 2D energy quadrature, producing n(x,t) and j(x,t) maps
//! with contribution splitting and a continuity diagnostic.
//!
//! Per cell, with u_i = ψ(E_i, x) and v_i = dψ/dx(E_i, x):
//!
//!   n(x,t) = Σ_ij w_i w_j ρ(E_j, E_i, t) ū_i u_j
//!   j(x,t) = Σ_ij w_i w_j ρ(E_j, E_i, t) (i/2)(v̄_i u_j − ū_i v_j)
//!
//! The ij reduction runs in a fixed row-major order, so results do not
//! depend on the worker count.

use rayon::prelude::*;

use crate::density_matrix::RhoKernel;
use crate::error::{Error, Result};
use crate::model::{EmitterConfig, PumpMode, PumpSchedule, RelaxationParams};
use crate::quadrature::EnergyGrid;
use crate::scalar::{cplx, Cplx, Real};
use crate::scattering::{amplitudes, ContributionSelector};

/// Positions and times of the output map, in atomic units.
#[derive(Debug, Clone)]
pub struct SpaceTimeGrid<T> {
    x_nodes: Vec<T>,
    t_nodes: Vec<T>,
}

impl<T: Real> SpaceTimeGrid<T> {
    pub fn new(x_nodes: Vec<T>, t_nodes: Vec<T>) -> Result<Self> {
        if x_nodes.is_empty() || t_nodes.is_empty() {
            return Err(Error::Config("space-time grid must be non-empty".into()));
        }
        let ok_x = x_nodes[0] >= T::zero()
            && x_nodes.windows(2).all(|w| w[0] < w[1])
            && x_nodes.iter().all(|x| x.is_finite());
        let ok_t = t_nodes[0] >= T::zero()
            && t_nodes.windows(2).all(|w| w[0] < w[1])
            && t_nodes.iter().all(|t| t.is_finite());
        if !ok_x || !ok_t {
            return Err(Error::Config(
                "grid nodes must be finite, non-negative, strictly increasing".into(),
            ));
        }
        Ok(Self { x_nodes, t_nodes })
    }

    pub fn uniform(x_lo: T, x_hi: T, nx: usize, t_lo: T, t_hi: T, nt: usize) -> Result<Self> {
        let lin = |lo: T, hi: T, n: usize| -> Vec<T> {
            if n == 1 {
                return vec![lo];
            }
            (0..n)
                .map(|i| lo + (hi - lo) * T::from_usize(i).unwrap() / T::from_usize(n - 1).unwrap())
                .collect()
        };
        Self::new(lin(x_lo, x_hi, nx), lin(t_lo, t_hi, nt))
    }

    pub fn x_nodes(&self) -> &[T] {
        &self.x_nodes
    }

    pub fn t_nodes(&self) -> &[T] {
        &self.t_nodes
    }
}

/// (ψ, dψ/dx) tabulated for every (energy node, x node), evaluated once.
/// Storage is x-major so a cell's energy sweep is contiguous.
#[derive(Debug, Clone)]
pub struct WaveTable<T> {
    pub n_energy: usize,
    pub n_x: usize,
    values: Vec<Cplx<T>>,
    derivs: Vec<Cplx<T>>,
}

impl<T: Real> WaveTable<T> {
    #[inline]
    pub fn value(&self, ie: usize, ix: usize) -> Cplx<T> {
        self.values[ix * self.n_energy + ie]
    }

    #[inline]
    pub fn derivative(&self, ie: usize, ix: usize) -> Cplx<T> {
        self.derivs[ix * self.n_energy + ie]
    }

    fn column(&self, ix: usize) -> (&[Cplx<T>], &[Cplx<T>]) {
        let s = ix * self.n_energy;
        (
            &self.values[s..s + self.n_energy],
            &self.derivs[s..s + self.n_energy],
        )
    }
}

/// Evaluates ψ and dψ/dx for every (energy node, x node) pair.
pub fn precompute_wave_table<T: Real>(
    grid: &EnergyGrid<T>,
    x_nodes: &[T],
    config: &EmitterConfig<T>,
    selector: ContributionSelector,
) -> Result<WaveTable<T>> {
    let ne = grid.len();
    let nx = x_nodes.len();
    let mut values = vec![Cplx::new(T::zero(), T::zero()); ne * nx];
    let mut derivs = vec![Cplx::new(T::zero(), T::zero()); ne * nx];
    for (ie, &e) in grid.nodes.iter().enumerate() {
        let amps = amplitudes(cplx(e), config)?;
        for (ix, &x) in x_nodes.iter().enumerate() {
            let w = amps.wave(x, config, selector)?;
            values[ix * ne + ie] = w.value;
            derivs[ix * ne + ie] = w.derivative;
        }
    }
    assert_eq!(values.len(), ne * nx);
    assert_eq!(derivs.len(), ne * nx);
    Ok(WaveTable {
        n_energy: ne,
        n_x: nx,
        values,
        derivs,
    })
}

/// Whether the output map is divided by a reference current.
#[derive(Debug, Clone, Copy)]
pub enum Normalization<T> {
    /// Values stay in raw atomic units; `reference_j` records 1.
    Raw,
    /// Values divided by the given raw reference current.
    By(T),
}

/// n(x,t) and j(x,t) over a space-time grid, tagged by contribution selector.
/// Layout is row-major with x outer, t inner.
#[derive(Debug, Clone)]
pub struct FieldMap<T> {
    pub x_nodes: Vec<T>,
    pub t_nodes: Vec<T>,
    pub n: Vec<T>,
    pub j: Vec<T>,
    pub selector: ContributionSelector,
    /// Raw j(x₃, t₀) used for normalization (1 for raw maps), a.u.
    pub reference_j: T,
    /// max |Im| / max |Re| over all accumulated cells (realness diagnostic).
    pub max_im_ratio: T,
}

impl<T: Real> FieldMap<T> {
    #[inline]
    pub fn idx(&self, ix: usize, it: usize) -> usize {
        ix * self.t_nodes.len() + it
    }

    pub fn n_at(&self, ix: usize, it: usize) -> T {
        self.n[self.idx(ix, it)]
    }

    pub fn j_at(&self, ix: usize, it: usize) -> T {
        self.j[self.idx(ix, it)]
    }

    /// j(x, ·) time series at one position.
    pub fn j_series_at_x(&self, ix: usize) -> Vec<T> {
        let nt = self.t_nodes.len();
        (0..nt).map(|it| self.j[ix * nt + it]).collect()
    }

    /// j(·, t) spatial slice at one time.
    pub fn j_slice_at_t(&self, it: usize) -> Vec<T> {
        (0..self.x_nodes.len())
            .map(|ix| self.j[self.idx(ix, it)])
            .collect()
    }

    pub fn n_series_at_x(&self, ix: usize) -> Vec<T> {
        let nt = self.t_nodes.len();
        (0..nt).map(|it| self.n[ix * nt + it]).collect()
    }

    pub fn n_slice_at_t(&self, it: usize) -> Vec<T> {
        (0..self.x_nodes.len())
            .map(|ix| self.n[self.idx(ix, it)])
            .collect()
    }

    /// Cell-wise difference (same grids required).
    pub fn difference(&self, other: &Self) -> Self {
        assert_eq!(self.n.len(), other.n.len(), "grid mismatch");
        let mut out = self.clone();
        for (a, b) in out.n.iter_mut().zip(&other.n) {
            *a = *a - *b;
        }
        for (a, b) in out.j.iter_mut().zip(&other.j) {
            *a = *a - *b;
        }
        out
    }
}

struct CellAccum<T> {
    n_re: T,
    n_im: T,
    j_re: T,
    j_im: T,
}

/// One cell's double sum, row-major over (i, j).
#[inline]
fn contract_cell<T: Real>(
    pw: &[Cplx<T>],
    ne: usize,
    u: &[Cplx<T>],
    v: &[Cplx<T>],
    mode: PumpMode,
    z_pump: &[Cplx<T>],
    z0: &[Cplx<T>],
    y_decay: &[Cplx<T>],
) -> CellAccum<T> {
    let one = cplx(T::one());
    let mut acc_n = Cplx::new(T::zero(), T::zero());
    let mut acc_j = Cplx::new(T::zero(), T::zero());
    for i in 0..ne {
        let cu = u[i].conj();
        let cv = v[i].conj();
        let row = &pw[i * ne..(i + 1) * ne];
        match mode {
            PumpMode::PumpOn => {
                let zi = z_pump[i];
                for jj in 0..ne {
                    let bracket = one - zi * z_pump[jj].conj();
                    let f = row[jj] * bracket;
                    acc_n += f * (cu * u[jj]);
                    acc_j += f * (cv * u[jj] - cu * v[jj]);
                }
            }
            PumpMode::Saturation => {
                for jj in 0..ne {
                    let f = row[jj];
                    acc_n += f * (cu * u[jj]);
                    acc_j += f * (cv * u[jj] - cu * v[jj]);
                }
            }
            PumpMode::Decay => {
                let z0i = z0[i];
                let yi = y_decay[i];
                for jj in 0..ne {
                    let bracket = (one - z0i * z0[jj].conj()) * (yi * y_decay[jj].conj());
                    let f = row[jj] * bracket;
                    acc_n += f * (cu * u[jj]);
                    acc_j += f * (cv * u[jj] - cu * v[jj]);
                }
            }
        }
    }
    // j carries the (i/2)[...] factor: Re[(i/2) z] = −Im(z)/2
    CellAccum {
        n_re: acc_n.re,
        n_im: acc_n.im,
        j_re: -acc_j.im * T::half(),
        j_im: acc_j.re * T::half(),
    }
}

/// Phase vector e^{iEt} per node. Half of the pair damping e^{−γt} is folded
/// into each factor so the z_i·z̄_j products carry it exactly once.
fn phase_vector<T: Real>(nodes: &[T], t: T, pair_damping: T) -> Vec<Cplx<T>> {
    let half_damping = pair_damping * T::half();
    let amp = if half_damping > T::lit(700.0) {
        T::zero()
    } else {
        (-half_damping).exp()
    };
    nodes
        .iter()
        .map(|&e| Cplx::from_polar(amp, e * t))
        .collect()
}

/// Computes the field map for one selector.
///
/// `pump.mode()` picks the kernel; Decay requires every t node ≥ t₀.
pub fn compute_fields<T: Real>(
    config: &EmitterConfig<T>,
    relax: &RelaxationParams<T>,
    pump: &PumpSchedule<T>,
    egrid: &EnergyGrid<T>,
    stgrid: &SpaceTimeGrid<T>,
    selector: ContributionSelector,
    normalization: Normalization<T>,
) -> Result<FieldMap<T>> {
    if pump.mode() == PumpMode::Decay {
        if let Some(&t) = stgrid.t_nodes().iter().find(|&&t| t < pump.t0()) {
            return Err(Error::Domain(format!(
                "decay mode requires t >= t0 = {}, got t = {t}",
                pump.t0()
            )));
        }
    }
    let kernel = RhoKernel::new(config, relax, pump, egrid)?;
    let table = precompute_wave_table(egrid, stgrid.x_nodes(), config, selector)?;
    contract(&kernel, egrid, &table, stgrid, selector, normalization)
}

/// Contraction over a prepared kernel and wave table.
fn contract<T: Real>(
    kernel: &RhoKernel<T>,
    egrid: &EnergyGrid<T>,
    table: &WaveTable<T>,
    stgrid: &SpaceTimeGrid<T>,
    selector: ContributionSelector,
    normalization: Normalization<T>,
) -> Result<FieldMap<T>> {
    let ne = egrid.len();
    let nodes = &egrid.nodes;
    let gamma = kernel.gamma();
    let t0 = kernel.t0();
    let mode = kernel.mode();

    // weight-folded prefactor matrix:
    //   pw[i][j] = w_i w_j · 2πiD/((E_i − E_j) + iγ) / (m̄_r(E_j) m_r(E_i))
    let mut pw = vec![Cplx::new(T::zero(), T::zero()); ne * ne];
    for i in 0..ne {
        let mr_i = kernel.m_r_at(i);
        for j in 0..ne {
            let p = kernel.prefactor(nodes[j], nodes[i], kernel.m_r_at(j), mr_i);
            pw[i * ne + j] = p * cplx(egrid.weights[i] * egrid.weights[j]);
        }
    }

    // pump switch-on phases at t0 shared by all decay cells (damping folded in)
    let z0 = if mode == PumpMode::Decay {
        phase_vector(nodes, t0, gamma * t0)
    } else {
        Vec::new()
    };

    let nt = stgrid.t_nodes().len();
    let nx = stgrid.x_nodes().len();

    // per-time phase vectors
    let per_t: Vec<Vec<Cplx<T>>> = stgrid
        .t_nodes()
        .iter()
        .map(|&t| match mode {
            PumpMode::PumpOn => phase_vector(nodes, t, gamma * t),
            PumpMode::Saturation => Vec::new(),
            PumpMode::Decay => phase_vector(nodes, t - t0, gamma * (t - t0)),
        })
        .collect();

    let cells: Vec<CellAccum<T>> = (0..nx * nt)
        .into_par_iter()
        .map(|cell| {
            let ix = cell / nt;
            let it = cell % nt;
            let (u, v) = table.column(ix);
            let empty: &[Cplx<T>] = &[];
            let (zp, yd): (&[Cplx<T>], &[Cplx<T>]) = match mode {
                PumpMode::PumpOn => (&per_t[it], empty),
                PumpMode::Saturation => (empty, empty),
                PumpMode::Decay => (empty, &per_t[it]),
            };
            contract_cell(&pw, ne, u, v, mode, zp, &z0, yd)
        })
        .collect();

    let mut max_re = T::zero();
    let mut max_im = T::zero();
    for c in &cells {
        max_re = max_re.max(c.n_re.abs()).max(c.j_re.abs());
        max_im = max_im.max(c.n_im.abs()).max(c.j_im.abs());
    }
    if let Some(bad) = cells
        .iter()
        .position(|c| !(c.n_re.is_finite() && c.j_re.is_finite()))
    {
        let ix = bad / nt;
        let it = bad % nt;
        // locate the first offending energy pair for the diagnostic
        let (u, v) = table.column(ix);
        let (mut e_bad, mut ep_bad) = (T::nan(), T::nan());
        'outer: for i in 0..ne {
            for j in 0..ne {
                let term = pw[i * ne + j] * (u[i].conj() * u[j] - u[i].conj() * v[j] + v[i].conj() * u[j]);
                if !term.re.is_finite() || !term.im.is_finite() {
                    e_bad = nodes[j];
                    ep_bad = nodes[i];
                    break 'outer;
                }
            }
        }
        return Err(Error::Numerical {
            x: stgrid.x_nodes()[ix].to_f64().unwrap_or(f64::NAN),
            t: stgrid.t_nodes()[it].to_f64().unwrap_or(f64::NAN),
            e: e_bad.to_f64().unwrap_or(f64::NAN),
            e_prime: ep_bad.to_f64().unwrap_or(f64::NAN),
        });
    }

    let (scale, reference_j) = match normalization {
        Normalization::Raw => (T::one(), T::one()),
        Normalization::By(r) => (r.recip(), r),
    };
    let n: Vec<T> = cells.iter().map(|c| c.n_re * scale).collect();
    let j: Vec<T> = cells.iter().map(|c| c.j_re * scale).collect();
    Ok(FieldMap {
        x_nodes: stgrid.x_nodes().to_vec(),
        t_nodes: stgrid.t_nodes().to_vec(),
        n,
        j,
        selector,
        reference_j,
        max_im_ratio: if max_re > T::zero() {
            max_im / max_re
        } else {
            T::zero()
        },
    })
}

/// Raw surface current j(x₃, t₀) of the full pump-mode run; the relative
/// unit every published number is quoted in.
pub fn reference_current<T: Real>(
    config: &EmitterConfig<T>,
    relax: &RelaxationParams<T>,
    t0: T,
    egrid: &EnergyGrid<T>,
) -> Result<T> {
    let pump = PumpSchedule::pump_on(t0)?;
    let stgrid = SpaceTimeGrid::new(vec![config.x3()], vec![t0])?;
    let map = compute_fields(
        config,
        relax,
        &pump,
        egrid,
        &stgrid,
        ContributionSelector::Full,
        Normalization::Raw,
    )?;
    Ok(map.j[0])
}

/// Full, outgoing-only, and incoming-only maps sharing one normalization.
pub fn contribution_split<T: Real>(
    config: &EmitterConfig<T>,
    relax: &RelaxationParams<T>,
    pump: &PumpSchedule<T>,
    egrid: &EnergyGrid<T>,
    stgrid: &SpaceTimeGrid<T>,
    normalization: Normalization<T>,
) -> Result<(FieldMap<T>, FieldMap<T>, FieldMap<T>)> {
    let full = compute_fields(
        config,
        relax,
        pump,
        egrid,
        stgrid,
        ContributionSelector::Full,
        normalization,
    )?;
    let out = compute_fields(
        config,
        relax,
        pump,
        egrid,
        stgrid,
        ContributionSelector::OutgoingOnly,
        normalization,
    )?;
    let inc = compute_fields(
        config,
        relax,
        pump,
        egrid,
        stgrid,
        ContributionSelector::IncomingOnly,
        normalization,
    )?;
    Ok((full, out, inc))
}

/// Continuity diagnostic r = ∂j/∂x + ∂n/∂t by central differences.
#[derive(Debug, Clone)]
pub struct ContinuityReport<T> {
    /// Residual on interior cells, same layout as the map interior.
    pub residual: Vec<T>,
    pub median_abs_residual: T,
    pub median_abs_dndt: T,
    /// median |r| / median |∂n/∂t|; None when ∂n/∂t vanishes identically.
    pub ratio: Option<T>,
}

fn median<T: Real>(mut v: Vec<T>) -> T {
    if v.is_empty() {
        return T::zero();
    }
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v[v.len() / 2]
}

/// Central-difference derivative on a possibly non-uniform axis. The
/// subtract-first form cancels exactly for constant data.
#[inline]
fn central<T: Real>(f_m: T, f_0: T, f_p: T, h_l: T, h_r: T) -> T {
    (h_l * h_l * (f_p - f_0) + h_r * h_r * (f_0 - f_m)) / (h_l * h_r * (h_l + h_r))
}

/// Evaluates the continuity residual over the interior of a map; edge cells
/// are excluded from the summary statistics.
pub fn continuity_residual<T: Real>(map: &FieldMap<T>) -> Result<ContinuityReport<T>> {
    let nx = map.x_nodes.len();
    let nt = map.t_nodes.len();
    if nx < 3 || nt < 3 {
        return Err(Error::GridTooCoarse(
            "continuity diagnostic needs >= 3 nodes per axis".into(),
        ));
    }
    let mut residual = Vec::with_capacity((nx - 2) * (nt - 2));
    let mut dndts = Vec::with_capacity((nx - 2) * (nt - 2));
    for ix in 1..nx - 1 {
        let hxl = map.x_nodes[ix] - map.x_nodes[ix - 1];
        let hxr = map.x_nodes[ix + 1] - map.x_nodes[ix];
        for it in 1..nt - 1 {
            let htl = map.t_nodes[it] - map.t_nodes[it - 1];
            let htr = map.t_nodes[it + 1] - map.t_nodes[it];
            let djdx = central(
                map.j_at(ix - 1, it),
                map.j_at(ix, it),
                map.j_at(ix + 1, it),
                hxl,
                hxr,
            );
            let dndt = central(
                map.n_at(ix, it - 1),
                map.n_at(ix, it),
                map.n_at(ix, it + 1),
                htl,
                htr,
            );
            residual.push(djdx + dndt);
            dndts.push(dndt.abs());
        }
    }
    let med_r = median(residual.iter().map(|r| r.abs()).collect());
    let med_d = median(dndts);
    let ratio = if med_d > T::zero() {
        Some(med_r / med_d)
    } else {
        None
    };
    Ok(ContinuityReport {
        residual,
        median_abs_residual: med_r,
        median_abs_dndt: med_d,
        ratio,
    })
}
