//! Closed-form asymptotic difference-wave model for the region beyond the
//! emitter, the incoming-wave width estimate, and a damped-sinusoid fitter
//! that extracts wave parameters from computed field slices.

use crate::error::{Error, Result};
use crate::resonances::Doublet;
use crate::scalar::Real;

/// Amplitudes and relative phase of the two pole contributions entering the
/// asymptotic difference-wave expressions.
#[derive(Debug, Clone)]
pub struct DifferenceWaveParams<T> {
    pub amp1: T,
    pub amp2: T,
    /// Δα₁₂ ∈ (−π, π].
    pub phase12: T,
    pub doublet: Doublet<T>,
}

impl<T: Real> DifferenceWaveParams<T> {
    pub fn new(amp1: T, amp2: T, phase12: T, doublet: Doublet<T>) -> Result<Self> {
        if amp1 < T::zero() || amp2 < T::zero() {
            return Err(Error::Config("amplitudes must be >= 0".into()));
        }
        if phase12 <= -T::PI() || phase12 > T::PI() {
            return Err(Error::Config("phase12 must lie in (-pi, pi]".into()));
        }
        Ok(Self {
            amp1,
            amp2,
            phase12,
            doublet,
        })
    }
}

/// Two-exponential-plus-beat model for (Δn, Δj) at offset position x̃ ≥ 0 and
/// offset time t̃ ≥ 0: each pole contributes e^{−2|k″|x̃ − 2|E″|t̃}, and the
/// cross term oscillates as cos(ω₁₂t̃ − k₁₂x̃ + Δα₁₂) with the summed decay
/// rates; the current carries the k′ factors (ℏ = m = 1).
pub fn difference_wave_model<T: Real>(
    params: &DifferenceWaveParams<T>,
    x_offset: T,
    t_offset: T,
) -> (T, T) {
    let d = &params.doublet;
    let two = T::two();
    let a1sq = params.amp1 * params.amp1;
    let a2sq = params.amp2 * params.amp2;
    let e1 = (-(two * d.p1.k_im.abs() * x_offset + two * d.p1.e_im.abs() * t_offset)).exp();
    let e2 = (-(two * d.p2.k_im.abs() * x_offset + two * d.p2.e_im.abs() * t_offset)).exp();
    let cross_decay = (-((d.p1.k_im.abs() + d.p2.k_im.abs()) * x_offset
        + (d.p1.e_im.abs() + d.p2.e_im.abs()) * t_offset))
        .exp();
    let phase = d.omega12 * t_offset - d.k12 * x_offset + params.phase12;
    let cross_amp = params.amp1 * params.amp2 * phase.cos() * cross_decay;

    let n = a1sq * e1 + a2sq * e2 + two * cross_amp;
    let j = d.p1.k_re * a1sq * e1
        + d.p2.k_re * a2sq * e2
        + (d.p1.k_re + d.p2.k_re) * cross_amp;
    (n, j)
}

/// Axis of a field-map slice handed to the fitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SliceAxis {
    /// s is a position; beats have wave number k₁₂ and decay |k″₁|+|k″₂|.
    Space,
    /// s is a time; beats have frequency ω₁₂ and decay |E″₁|+|E″₂|.
    Time,
}

/// Result of fitting A·e^{−κs}(c₀ + c₁cos(qs + φ)) to a slice.
#[derive(Debug, Clone, Copy)]
pub struct WaveFit<T> {
    /// Fitted angular frequency / wave number q.
    pub q: T,
    /// 2π/q: beat period (time slices) or wavelength (space slices).
    pub period: T,
    /// Fitted decay constant κ.
    pub kappa: T,
    /// Constant term c₀ (baseline amplitude at s = s₀).
    pub offset: T,
    /// Oscillation amplitude c₁.
    pub amplitude: T,
    /// Phase φ at s = s₀.
    pub phase: T,
    /// RMS residual of the fit.
    pub residual_rms: T,
    /// RMS of the data slice.
    pub slice_rms: T,
}

#[derive(Clone, Copy)]
struct FitParams<T> {
    c0: T,
    c1: T,
    kappa: T,
    q: T,
    phi: T,
}

fn model_value<T: Real>(p: &FitParams<T>, s: T) -> T {
    (-p.kappa * s).exp() * (p.c0 + p.c1 * (p.q * s + p.phi).cos())
}

/// Residuals and 5-column Jacobian of the damped-cosine model.
fn residuals_jacobian<T: Real>(
    p: &FitParams<T>,
    s: &[T],
    y: &[T],
    r: &mut [T],
    jac: &mut [[T; 5]],
) {
    for (k, (&sk, &yk)) in s.iter().zip(y).enumerate() {
        let e = (-p.kappa * sk).exp();
        let c = (p.q * sk + p.phi).cos();
        let sn = (p.q * sk + p.phi).sin();
        let m = e * (p.c0 + p.c1 * c);
        r[k] = yk - m;
        jac[k][0] = e;
        jac[k][1] = e * c;
        jac[k][2] = -sk * m;
        jac[k][3] = -e * p.c1 * sn * sk;
        jac[k][4] = -e * p.c1 * sn;
    }
}

/// Solves the 5×5 system a·x = b by Gaussian elimination with partial
/// pivoting; returns None when singular.
fn solve5<T: Real>(mut a: [[T; 5]; 5], mut b: [T; 5]) -> Option<[T; 5]> {
    for col in 0..5 {
        let mut piv = col;
        for row in col + 1..5 {
            if a[row][col].abs() > a[piv][col].abs() {
                piv = row;
            }
        }
        if a[piv][col].abs() < T::lit(1e-300) {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..5 {
            let f = a[row][col] / a[col][col];
            for c2 in col..5 {
                a[row][c2] = a[row][c2] - f * a[col][c2];
            }
            b[row] = b[row] - f * b[col];
        }
    }
    let mut x = [T::zero(); 5];
    for col in (0..5).rev() {
        let mut acc = b[col];
        for c2 in col + 1..5 {
            acc = acc - a[col][c2] * x[c2];
        }
        x[col] = acc / a[col][col];
    }
    Some(x)
}

/// Best damped-harmonic start over a q scan: with κ frozen, the model is
/// linear in (c0, c1·cosφ, c1·sinφ), so each trial q costs one 3×3 solve.
fn harmonic_regression_start<T: Real>(
    ss: &[T],
    y: &[T],
    q0: T,
    kappa0: T,
) -> Option<FitParams<T>> {
    let n_scan = 64;
    let mut best: Option<(T, FitParams<T>)> = None;
    for i in 0..n_scan {
        let q = q0
            * (T::lit(0.75)
                + T::lit(0.55) * T::from_usize(i).unwrap() / T::from_usize(n_scan - 1).unwrap());
        let mut m = [[T::zero(); 3]; 3];
        let mut rhs = [T::zero(); 3];
        for (&sk, &yk) in ss.iter().zip(y) {
            let e = (-kappa0 * sk).exp();
            let basis = [e, e * (q * sk).cos(), e * (q * sk).sin()];
            for a in 0..3 {
                rhs[a] += basis[a] * yk;
                for b in 0..3 {
                    m[a][b] += basis[a] * basis[b];
                }
            }
        }
        // 3×3 solve with partial pivoting
        let mut a = m;
        let mut b = rhs;
        let mut singular = false;
        for col in 0..3 {
            let mut piv = col;
            for row in col + 1..3 {
                if a[row][col].abs() > a[piv][col].abs() {
                    piv = row;
                }
            }
            if a[piv][col].abs() < T::lit(1e-300) {
                singular = true;
                break;
            }
            a.swap(col, piv);
            b.swap(col, piv);
            for row in col + 1..3 {
                let f = a[row][col] / a[col][col];
                for c2 in col..3 {
                    a[row][c2] = a[row][c2] - f * a[col][c2];
                }
                b[row] = b[row] - f * b[col];
            }
        }
        if singular {
            continue;
        }
        let mut coef = [T::zero(); 3];
        for col in (0..3).rev() {
            let mut acc = b[col];
            for c2 in col + 1..3 {
                acc = acc - a[col][c2] * coef[c2];
            }
            coef[col] = acc / a[col][col];
        }
        // y ≈ e^{−κs}(c0 + a_c cos(qs) + a_s sin(qs))
        let c1 = (coef[1] * coef[1] + coef[2] * coef[2]).sqrt();
        let phi = (-coef[2]).atan2(coef[1]);
        let p = FitParams {
            c0: coef[0],
            c1,
            kappa: kappa0,
            q,
            phi,
        };
        let c = cost(&p, ss, y);
        if best.as_ref().map_or(true, |(bc, _)| c < *bc) {
            best = Some((c, p));
        }
    }
    best.map(|(_, p)| p)
}

fn cost<T: Real>(p: &FitParams<T>, s: &[T], y: &[T]) -> T {
    s.iter()
        .zip(y)
        .map(|(&sk, &yk)| {
            let d = yk - model_value(p, sk);
            d * d
        })
        .sum()
}

/// Damped least squares from one start; returns the refined params and cost.
fn levenberg_marquardt<T: Real>(
    mut p: FitParams<T>,
    s: &[T],
    y: &[T],
) -> (FitParams<T>, T) {
    let n = s.len();
    let mut r = vec![T::zero(); n];
    let mut jac = vec![[T::zero(); 5]; n];
    let mut lambda = T::lit(1e-3);
    let mut best_cost = cost(&p, s, y);
    for _ in 0..200 {
        residuals_jacobian(&p, s, y, &mut r, &mut jac);
        // normal equations JᵀJ + λ diag(JᵀJ)
        let mut jtj = [[T::zero(); 5]; 5];
        let mut jtr = [T::zero(); 5];
        for k in 0..n {
            for a in 0..5 {
                jtr[a] += jac[k][a] * r[k];
                for b in a..5 {
                    jtj[a][b] += jac[k][a] * jac[k][b];
                }
            }
        }
        for a in 0..5 {
            for b in 0..a {
                jtj[a][b] = jtj[b][a];
            }
        }
        let mut damped = jtj;
        for a in 0..5 {
            damped[a][a] += lambda * jtj[a][a].max(T::lit(1e-30));
        }
        let Some(step) = solve5(damped, jtr) else { break };
        let trial = FitParams {
            c0: p.c0 + step[0],
            c1: p.c1 + step[1],
            kappa: p.kappa + step[2],
            q: p.q + step[3],
            phi: p.phi + step[4],
        };
        let trial_cost = cost(&trial, s, y);
        if trial_cost.is_finite() && trial_cost < best_cost {
            let rel = (best_cost - trial_cost) / best_cost.max(T::lit(1e-300));
            p = trial;
            best_cost = trial_cost;
            lambda = (lambda * T::lit(0.3)).max(T::lit(1e-12));
            if rel < T::lit(1e-14) {
                break;
            }
        } else {
            lambda = lambda * T::lit(10.0);
            if lambda > T::lit(1e10) {
                break;
            }
        }
    }
    (p, best_cost)
}

/// Fits A·e^{−κs}(c₀ + c₁cos(qs + φ)) to a slice of a field map.
///
/// The doublet supplies the initial beat scale (ω₁₂ or k₁₂ depending on the
/// axis); four phase starts are tried and the best residual wins. The slice
/// must span at least 3 beat periods; a relative residual above 20% of the
/// slice RMS is a poor-fit error.
pub fn extract_wave_params<T: Real>(
    s: &[T],
    y: &[T],
    axis: SliceAxis,
    doublet: &Doublet<T>,
) -> Result<WaveFit<T>> {
    if s.len() != y.len() || s.len() < 12 {
        return Err(Error::Domain(format!(
            "slice needs matching s/y with >= 12 samples, got {}/{}",
            s.len(),
            y.len()
        )));
    }
    let q0 = match axis {
        SliceAxis::Space => doublet.k12.abs(),
        SliceAxis::Time => doublet.omega12,
    };
    let kappa0 = match axis {
        SliceAxis::Space => doublet.p1.k_im.abs() + doublet.p2.k_im.abs(),
        SliceAxis::Time => doublet.p1.e_im.abs() + doublet.p2.e_im.abs(),
    };
    let span = *s.last().unwrap() - s[0];
    let periods = span * q0 / T::TAU();
    if periods < T::lit(3.0) {
        return Err(Error::Domain(format!(
            "slice covers {periods} beat periods, need >= 3"
        )));
    }

    // shift the coordinate so exponentials stay tame
    let s0 = s[0];
    let ss: Vec<T> = s.iter().map(|&v| v - s0).collect();
    let mean = y.iter().copied().sum::<T>() / T::from_usize(y.len()).unwrap();
    let spread = y
        .iter()
        .map(|&v| (v - mean) * (v - mean))
        .sum::<T>()
        .sqrt()
        / T::from_usize(y.len()).unwrap().sqrt();

    let mut best: Option<(FitParams<T>, T)> = None;
    let consider = |start: FitParams<T>, best: &mut Option<(FitParams<T>, T)>| {
        let (p, c) = levenberg_marquardt(start, &ss, y);
        if best.as_ref().map_or(true, |(_, bc)| c < *bc) {
            *best = Some((p, c));
        }
    };
    // harmonic-regression start: scan q near the doublet prediction with the
    // decay frozen at kappa0; (c0, c1, phi) then follow from linear least
    // squares, which keeps LM out of slow-period local minima
    if let Some(start) = harmonic_regression_start(&ss, y, q0, kappa0) {
        consider(start, &mut best);
    }
    // plus fixed quarter-phase starts
    for quarter in 0..4 {
        let phi0 = T::from_usize(quarter).unwrap() * T::FRAC_PI_2();
        let start = FitParams {
            c0: mean,
            c1: spread * T::lit(1.4142135623730951),
            kappa: kappa0,
            q: q0,
            phi: phi0,
        };
        consider(start, &mut best);
    }
    let (p, best_cost) = best.unwrap();
    let nf = T::from_usize(y.len()).unwrap();
    let residual_rms = (best_cost / nf).sqrt();
    let slice_rms = (y.iter().map(|&v| v * v).sum::<T>() / nf).sqrt();
    let rel = residual_rms / slice_rms.max(T::lit(1e-300));
    let q = p.q.abs();
    if rel > T::lit(0.20) {
        return Err(Error::PoorFit {
            rel_residual: rel.to_f64().unwrap_or(f64::NAN),
            threshold: 0.20,
            period: (T::TAU() / q).to_f64().unwrap_or(f64::NAN),
            kappa: p.kappa.to_f64().unwrap_or(f64::NAN),
        });
    }
    // fold a negative oscillation amplitude into the phase
    let (c1, phi) = if p.c1 < T::zero() {
        (-p.c1, p.phi + T::PI())
    } else {
        (p.c1, p.phi)
    };
    let phi = phi - (phi / T::TAU()).floor() * T::TAU();
    Ok(WaveFit {
        q,
        period: T::TAU() / q,
        kappa: p.kappa,
        offset: p.c0,
        amplitude: c1,
        phase: phi,
        residual_rms,
        slice_rms,
    })
}

/// Dominant oscillation period of a slice by a detrended periodogram scan
/// over [p_lo, p_hi]. The trend removed is the least-squares quadratic.
pub fn dominant_period<T: Real>(s: &[T], y: &[T], p_lo: T, p_hi: T, n_scan: usize) -> T {
    assert!(s.len() == y.len() && s.len() >= 8);
    // quadratic detrend via normal equations on (1, s, s²)
    let n = T::from_usize(s.len()).unwrap();
    let mut m = [[T::zero(); 3]; 3];
    let mut rhs = [T::zero(); 3];
    for (&sk, &yk) in s.iter().zip(y) {
        let basis = [T::one(), sk, sk * sk];
        for a in 0..3 {
            rhs[a] += basis[a] * yk;
            for b in 0..3 {
                m[a][b] += basis[a] * basis[b];
            }
        }
    }
    let _ = n;
    // 3×3 solve, partial pivoting
    let mut a = m;
    let mut b = rhs;
    for col in 0..3 {
        let mut piv = col;
        for row in col + 1..3 {
            if a[row][col].abs() > a[piv][col].abs() {
                piv = row;
            }
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            for c2 in col..3 {
                a[row][c2] = a[row][c2] - f * a[col][c2];
            }
            b[row] = b[row] - f * b[col];
        }
    }
    let mut coef = [T::zero(); 3];
    for col in (0..3).rev() {
        let mut acc = b[col];
        for c2 in col + 1..3 {
            acc = acc - a[col][c2] * coef[c2];
        }
        coef[col] = acc / a[col][col];
    }
    let detrended: Vec<T> = s
        .iter()
        .zip(y)
        .map(|(&sk, &yk)| yk - (coef[0] + coef[1] * sk + coef[2] * sk * sk))
        .collect();

    let mut best = (p_lo, T::zero());
    for i in 0..n_scan {
        let period = p_lo
            + (p_hi - p_lo) * T::from_usize(i).unwrap() / T::from_usize(n_scan - 1).unwrap();
        let w = T::TAU() / period;
        let mut re = T::zero();
        let mut im = T::zero();
        for (&sk, &dk) in s.iter().zip(&detrended) {
            re += dk * (w * sk).cos();
            im += dk * (w * sk).sin();
        }
        let power = re * re + im * im;
        if power > best.1 {
            best = (period, power);
        }
    }
    best.0
}

/// Energy width ΔE = π/(t̃ + x/k) of the band slice feeding the incoming
/// waves at (x, t̃); in a.u. with ℏ = m = 1.
pub fn incoming_width_estimate<T: Real>(x: T, t_offset: T, k: T) -> Result<T> {
    if x < T::zero() || t_offset < T::zero() || k <= T::zero() {
        return Err(Error::Domain(
            "incoming width needs x >= 0, t >= 0, k > 0".into(),
        ));
    }
    if x == T::zero() && t_offset == T::zero() {
        return Err(Error::Domain(
            "incoming width undefined at x = t = 0".into(),
        ));
    }
    Ok(T::PI() / (t_offset + x / k))
}

/// Time for an initial packet of width `dx` to double by dispersion:
/// Δt_C ≈ 2·dx² in a.u.
pub fn spreading_time<T: Real>(dx: T) -> Result<T> {
    if dx <= T::zero() {
        return Err(Error::Domain(format!("dx must be > 0, got {dx}")));
    }
    Ok(T::two() * dx * dx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{EmitterConfig, EnergyBand, BOHR_ANGSTROM, HARTREE_EV};
    use crate::resonances::find_doublet;
    use approx::assert_relative_eq;

    fn doublet() -> Doublet<f64> {
        let cfg = EmitterConfig::new(125.0 / BOHR_ANGSTROM, 10.0, 4.0 / HARTREE_EV).unwrap();
        let band = EnergyBand::new(0.640 / HARTREE_EV, 0.680 / HARTREE_EV).unwrap();
        find_doublet(&cfg, &band).unwrap()
    }

    #[test]
    fn single_pole_is_pure_decay() {
        let d = doublet();
        let p = DifferenceWaveParams::new(1.3, 0.0, 0.0, d).unwrap();
        let (n0, j0) = difference_wave_model(&p, 0.0, 0.0);
        let (n1, j1) = difference_wave_model(&p, 0.0, d.t12);
        // no oscillation, strictly decaying with t
        assert!(n1 < n0 && j1 < j0);
        assert_relative_eq!(n1 / n0, (-2.0 * d.p1.e_im.abs() * d.t12).exp(), max_relative = 1e-12);
        // single-mode current/charge ratio is the mode velocity
        assert_relative_eq!(j0 / n0, d.p1.k_re, max_relative = 1e-12);
    }

    #[test]
    fn beat_period_at_fixed_position() {
        let d = doublet();
        let p = DifferenceWaveParams::new(1.0, 0.8, 0.4, d).unwrap();
        // the cross term at x̃=0 has period exactly t12: strip the decaying
        // envelopes and compare phases one period apart
        let cross = |t: f64| {
            let (n, _) = difference_wave_model(&p, 0.0, t);
            let e1 = (-2.0 * d.p1.e_im.abs() * t).exp();
            let e2 = (-2.0 * d.p2.e_im.abs() * t).exp();
            let env = (-(d.p1.e_im.abs() + d.p2.e_im.abs()) * t).exp();
            (n - e1 - 0.64 * e2) / (2.0 * 0.8 * env)
        };
        for t in [0.0, 0.3 * d.t12, 0.7 * d.t12] {
            assert_relative_eq!(cross(t), cross(t + d.t12), epsilon = 1e-9);
        }
    }

    #[test]
    fn fit_round_trip_recovers_model() {
        // data synthesized by the fitter's own model: exact recovery
        let d = doublet();
        let kappa0 = d.p1.e_im.abs() + d.p2.e_im.abs();
        let t_nodes: Vec<f64> = (0..160).map(|i| i as f64 * d.t12 * 4.0 / 159.0).collect();
        let y: Vec<f64> = t_nodes
            .iter()
            .map(|&t| (-kappa0 * t).exp() * (1.1 + 0.6 * (d.omega12 * t + 0.3).cos()))
            .collect();
        let fit = extract_wave_params(&t_nodes, &y, SliceAxis::Time, &d).unwrap();
        assert_relative_eq!(fit.q, d.omega12, max_relative = 1e-6);
        assert_relative_eq!(fit.period, d.t12, max_relative = 1e-6);
        assert_relative_eq!(fit.kappa, kappa0, max_relative = 1e-6);
        assert_relative_eq!(fit.amplitude, 0.6, max_relative = 1e-6);
        assert_relative_eq!(fit.phase, 0.3, max_relative = 1e-5);
        assert!(fit.residual_rms / fit.slice_rms < 1e-8);
    }

    #[test]
    fn fit_difference_wave_series() {
        // the asymptotic two-pole series has three decay rates, so the
        // single-κ fit recovers the beat scale approximately
        let d = doublet();
        let p = DifferenceWaveParams::new(0.9, 0.7, 0.3, d).unwrap();
        let t_nodes: Vec<f64> = (0..160).map(|i| i as f64 * d.t12 * 4.0 / 159.0).collect();
        let y: Vec<f64> = t_nodes
            .iter()
            .map(|&t| difference_wave_model(&p, 0.0, t).1)
            .collect();
        let fit = extract_wave_params(&t_nodes, &y, SliceAxis::Time, &d).unwrap();
        assert_relative_eq!(fit.period, d.t12, max_relative = 1e-3);
        assert_relative_eq!(fit.kappa, d.p1.e_im.abs() + d.p2.e_im.abs(), max_relative = 0.5);
        assert!(fit.residual_rms / fit.slice_rms < 0.05);
    }

    #[test]
    fn fit_rejects_short_slices() {
        let d = doublet();
        let t_nodes: Vec<f64> = (0..50).map(|i| i as f64 * d.t12 / 49.0).collect();
        let y: Vec<f64> = t_nodes.iter().map(|&t| (d.omega12 * t).cos()).collect();
        assert!(matches!(
            extract_wave_params(&t_nodes, &y, SliceAxis::Time, &d),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn fit_flags_non_oscillatory_data() {
        let d = doublet();
        let t_nodes: Vec<f64> = (0..200).map(|i| i as f64 * d.t12 * 5.0 / 199.0).collect();
        // noise-like sawtooth that no damped cosine matches
        let y: Vec<f64> = (0..200)
            .map(|i| if i % 7 < 3 { 1.0 } else { -0.8 } * (1.0 + 0.3 * ((i * 13 % 11) as f64)))
            .collect();
        let r = extract_wave_params(&t_nodes, &y, SliceAxis::Time, &d);
        assert!(matches!(r, Err(Error::PoorFit { .. })));
    }

    #[test]
    fn periodogram_finds_planted_period() {
        let period = 1.95e4;
        let s: Vec<f64> = (0..300).map(|i| i as f64 * 400.0).collect();
        let y: Vec<f64> = s
            .iter()
            .map(|&t| 3.0 + 1e-5 * t + 0.8 * (std::f64::consts::TAU * t / period).cos())
            .collect();
        let found = dominant_period(&s, &y, 5e3, 6e4, 600);
        assert_relative_eq!(found, period, max_relative = 0.02);
    }

    #[test]
    fn incoming_width_limits() {
        // long-time branch: ΔE ≈ π/t̃
        let w = incoming_width_estimate(1.0, 1e6, 0.219).unwrap();
        assert_relative_eq!(w, std::f64::consts::PI / (1e6 + 1.0 / 0.219), max_relative = 1e-12);
        // instantaneous branch: ΔE = πk/x
        let w = incoming_width_estimate(47244.0, 0.0, 0.219).unwrap();
        assert_relative_eq!(w, std::f64::consts::PI * 0.219 / 47244.0, max_relative = 1e-12);
        // doubling t̃ at x = 0 halves ΔE
        let w1 = incoming_width_estimate(0.0, 2e5, 0.219).unwrap();
        let w2 = incoming_width_estimate(0.0, 4e5, 0.219).unwrap();
        assert_relative_eq!(w1 / w2, 2.0, max_relative = 1e-12);
        assert!(incoming_width_estimate::<f64>(0.0, 0.0, 0.219).is_err());
    }

    #[test]
    fn spreading_time_values() {
        assert_relative_eq!(spreading_time(1.0).unwrap(), 2.0, max_relative = 1e-15);
        let dx = 0.219 * 1e5;
        assert_relative_eq!(spreading_time(dx).unwrap(), 9.6e8, max_relative = 2e-2);
        assert_relative_eq!(
            spreading_time(2.0 * dx).unwrap() / spreading_time(dx).unwrap(),
            4.0,
            max_relative = 1e-14
        );
        assert!(spreading_time(0.0_f64).is_err());
    }
}
