//! Shared test-only oracle: Runge-Kutta shooting across the smoothed
//! (piecewise-rectangular) potential, independent of the transfer-matrix
//! route it checks.

use num_complex::Complex64 as C64;
use wellpulse::model::EmitterConfig;

/// One RK4 step of ψ″ = 2(U − E)ψ at constant potential U.
fn rk4_step(u: f64, e: f64, h: f64, y: (C64, C64)) -> (C64, C64) {
    let f = |y: (C64, C64)| -> (C64, C64) { (y.1, C64::from(2.0 * (u - e)) * y.0) };
    let k1 = f(y);
    let k2 = f((y.0 + k1.0 * 0.5 * h, y.1 + k1.1 * 0.5 * h));
    let k3 = f((y.0 + k2.0 * 0.5 * h, y.1 + k2.1 * 0.5 * h));
    let k4 = f((y.0 + k3.0 * h, y.1 + k3.1 * h));
    (
        y.0 + (k1.0 + (k2.0 + k3.0) * 2.0 + k4.0) * (h / 6.0),
        y.1 + (k1.1 + (k2.1 + k3.1) * 2.0 + k4.1) * (h / 6.0),
    )
}

/// Integrates one constant-potential segment; (ψ, ψ′) stay continuous across
/// segment boundaries, realizing the piecewise-rectangular potential exactly.
fn integrate_segment(u: f64, e: f64, length: f64, h_target: f64, mut y: (C64, C64)) -> (C64, C64) {
    let n = ((length / h_target).ceil() as usize).max(1);
    let h = length / n as f64;
    for _ in 0..n {
        y = rk4_step(u, e, h, y);
    }
    y
}

/// m_r by shooting across the smoothed potential: the delta barriers become
/// rectangles of height Ω/(2w) and width w (equal integral), the second one
/// straddling the potential step at 2d. Integrate from the hard wall with
/// ψ(0) = 0, ψ′(0) = 1 (so A₁ = 1/(2ik₁)), decompose into exterior plane
/// waves past the last barrier, and form a₃/A₁.
pub fn m_r_shooting(e: f64, config: &EmitterConfig<f64>, width: f64) -> C64 {
    let d = config.d();
    let chi = config.chi();
    let spike = config.omega() / (2.0 * width);
    let h_coarse = 0.004;
    let h_fine = width / 40.0;
    let w2 = width / 2.0;
    let mut y = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
    // (potential, length, step) per segment, left to right
    let segments = [
        (-chi, d - w2, h_coarse),
        (-chi + spike, width, h_fine),
        (-chi, d - width, h_coarse),
        (-chi + spike, w2, h_fine),
        (spike, w2, h_fine),
        (0.0, 5.0, h_coarse),
    ];
    for (u, len, h) in segments {
        y = integrate_segment(u, e, len, h, y);
    }
    let x_end = 2.0 * d + w2 + 5.0;

    let k3 = (2.0 * e).sqrt();
    let k1 = (2.0 * (e + chi)).sqrt();
    let ik3 = C64::new(0.0, k3);
    let phase = C64::new(0.0, -k3 * (x_end - 2.0 * d)).exp();
    let a3 = (y.0 + y.1 / ik3) * 0.5 * phase;
    // ψ(0) = 0, ψ′(0) = 1 corresponds to A₁ = 1/(2ik₁)
    let a1 = C64::new(0.0, 2.0 * k1).inv();
    a3 / a1
}
