//! Composite Gauss-Legendre quadrature with panels clustered around the
//! resonance poles, so the Lorentzian cores of 1/|m_r|² are resolved by a
//! fixed, parallel-friendly node set.

use crate::error::{Error, Result};
use crate::model::EnergyBand;
use crate::resonances::ResonancePole;
use crate::scalar::Real;

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n >= 1);
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let nf = T::from_usize(n).unwrap();
    for i in 0..(n + 1) / 2 {
        // Chebyshev-like initial guess
        let theta = T::PI() * (T::from_usize(i).unwrap() + T::lit(0.75))
            / (nf + T::half());
        let mut x = theta.cos();
        let mut pp = T::zero();
        for _ in 0..100 {
            // evaluate P_n(x) and P'_n(x)
            let mut p0 = T::one();
            let mut p1 = x;
            for k in 2..=n {
                let kf = T::from_usize(k).unwrap();
                let p2 = ((T::two() * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            // P'_n from P_n and P_{n-1}
            pp = nf * (x * p1 - p0) / (x * x - T::one());
            let dx = p1 / pp;
            x = x - dx;
            if dx.abs() <= T::epsilon() * x.abs().max(T::one()) {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = T::two() / ((T::one() - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = T::zero();
    }
    (nodes, weights)
}

fn map_panel<T: Real>(a: T, b: T, n: usize, nodes: &mut Vec<T>, weights: &mut Vec<T>) {
    let (x, w) = gauss_legendre::<T>(n);
    let half_width = (b - a) * T::half();
    let mid = (a + b) * T::half();
    for (xi, wi) in x.into_iter().zip(w) {
        nodes.push(mid + half_width * xi);
        weights.push(half_width * wi);
    }
}

/// Energy quadrature: nodes, weights, and the panel boundaries they came from.
#[derive(Debug, Clone)]
pub struct EnergyGrid<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    /// Panel boundaries (clustering metadata), ascending.
    pub panels: Vec<T>,
}

impl<T: Real> EnergyGrid<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn weight_sum(&self) -> T {
        self.weights.iter().copied().sum()
    }
}

/// Offsets (in units of |Im E_R|) at which cluster-panel boundaries are
/// placed on both sides of each pole.
const CLUSTER_OFFSETS: [f64; 5] = [1.0, 3.0, 10.0, 30.0, 100.0];

/// Builds the composite grid: cluster panels with boundaries at
/// E′_R ± {1,3,10,30,100}·|E″_R| (clipped to the band) plus uniform backbone
/// panels carrying `n_base` nodes distributed by width. Total nodes stay
/// below 4·n_base. With no poles this degenerates to a plain composite rule.
pub fn build_energy_grid<T: Real>(
    band: &EnergyBand<T>,
    poles: &[ResonancePole<T>],
    n_base: usize,
) -> Result<EnergyGrid<T>> {
    if n_base < 100 {
        return Err(Error::Config(format!(
            "n_base must be >= 100, got {n_base}"
        )));
    }
    let mut bounds: Vec<T> = vec![band.e_min(), band.e_max()];
    for p in poles {
        for f in CLUSTER_OFFSETS {
            for sign in [-T::one(), T::one()] {
                let v = p.e_re + sign * T::lit(f) * p.e_im.abs();
                if band.e_min() < v && v < band.e_max() {
                    bounds.push(v);
                }
            }
        }
    }
    bounds.sort_by(|a, b| a.partial_cmp(b).unwrap());
    bounds.dedup_by(|a, b| (*a - *b).abs() <= T::epsilon() * band.width());

    let in_cluster = |mid: T| {
        poles
            .iter()
            .any(|p| (mid - p.e_re).abs() <= T::lit(100.0) * p.e_im.abs())
    };

    let mut backbone_width = T::zero();
    let mut kinds = Vec::with_capacity(bounds.len() - 1);
    for w in bounds.windows(2) {
        let mid = (w[0] + w[1]) * T::half();
        let cluster = !poles.is_empty() && in_cluster(mid);
        if !cluster {
            backbone_width += w[1] - w[0];
        }
        kinds.push(cluster);
    }

    let n_pole = (n_base / 25).max(6);
    let max_per_panel = 24;
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for (w, &cluster) in bounds.windows(2).zip(&kinds) {
        let n = if cluster {
            n_pole
        } else {
            let frac = (w[1] - w[0]) / backbone_width;
            (T::from_usize(n_base).unwrap() * frac)
                .round()
                .to_usize()
                .unwrap_or(8)
                .max(8)
        };
        // split wide allocations into subpanels of moderate order
        let n_sub = (n + max_per_panel - 1) / max_per_panel;
        let width = w[1] - w[0];
        let per = (n + n_sub - 1) / n_sub;
        for s in 0..n_sub {
            let a = w[0] + width * T::from_usize(s).unwrap() / T::from_usize(n_sub).unwrap();
            let b = w[0] + width * T::from_usize(s + 1).unwrap() / T::from_usize(n_sub).unwrap();
            map_panel(a, b, per, &mut nodes, &mut weights);
        }
    }

    // sort node/weight pairs by energy for deterministic contraction order
    let mut idx: Vec<usize> = (0..nodes.len()).collect();
    idx.sort_by(|&a, &b| nodes[a].partial_cmp(&nodes[b]).unwrap());
    let nodes: Vec<T> = idx.iter().map(|&i| nodes[i]).collect();
    let weights: Vec<T> = idx.iter().map(|&i| weights[i]).collect();

    debug_assert!(nodes.len() <= 4 * n_base, "node budget exceeded: {}", nodes.len());
    Ok(EnergyGrid {
        nodes,
        weights,
        panels: bounds,
    })
}
