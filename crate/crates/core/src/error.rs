//! Error type shared by all simulation modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid configuration value (non-finite, out of range, unknown tag).
    #[error("configuration error: {0}")]
    Config(String),

    /// Wave number vanishes at this energy; transfer matrices are singular.
    #[error("singular energy: {reason}")]
    SingularEnergy { reason: String },

    /// Amplitude evaluation requested exactly at a pole of 1/m_r.
    #[error("pole evaluation: |m_r| = {m_r_abs:.3e} at E = {energy_re:.6e} + {energy_im:.3e}i a.u.")]
    PoleEvaluation {
        energy_re: f64,
        energy_im: f64,
        m_r_abs: f64,
    },

    /// Root refinement did not converge within the iteration budget.
    #[error("pole refinement did not converge: last E = {last_re:.9e} + {last_im:.3e}i a.u., residual {residual:.3e} after {iterations} iterations")]
    NonConvergence {
        last_re: f64,
        last_im: f64,
        residual: f64,
        iterations: usize,
    },

    /// Scan+refine did not produce exactly two poles in the window.
    #[error("doublet structure error: found {count} pole(s) in the band, expected 2")]
    DoubletStructure { count: usize },

    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Non-finite value produced during field contraction.
    #[error("numerical error at x = {x:.6e}, t = {t:.6e} (E = {e:.6e}, E' = {e_prime:.6e} a.u.)")]
    Numerical { x: f64, t: f64, e: f64, e_prime: f64 },

    /// Least-squares fit residual exceeded the acceptance threshold.
    #[error("poor fit: relative residual {rel_residual:.3} > {threshold:.3} (period {period:.6e}, decay {kappa:.3e})")]
    PoorFit {
        rel_residual: f64,
        threshold: f64,
        period: f64,
        kappa: f64,
    },

    /// Space-time grid too coarse for the requested diagnostic.
    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
