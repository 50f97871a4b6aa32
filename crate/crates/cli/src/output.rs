//! CSV and metadata-sidecar writers. Floats are printed with 12 significant
//! digits; every CSV gets a `.meta` sidecar with the resolved parameters and
//! a checksum, so no output is orphaned.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use sha2::{Digest, Sha256};
use wellpulse::field_solver::FieldMap;
use wellpulse::model::{UnitSystem, BOHR_ANGSTROM};
use wellpulse::resonances::Doublet;

/// 12 significant digits.
pub fn fmt_sig(v: f64) -> String {
    format!("{v:.11e}")
}

/// Rows of resolved-parameter metadata shared by all files of one run.
#[derive(Debug, Clone, Default)]
pub struct RunMetadata {
    pub entries: Vec<(String, String)>,
}

impl RunMetadata {
    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.entries.push((key.to_string(), value.to_string()));
    }
}

fn write_with_sidecar(path: &Path, csv: &str, meta: &RunMetadata) -> Result<()> {
    fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?;
    let digest = Sha256::digest(csv.as_bytes());
    let mut side = String::new();
    let _ = writeln!(side, "[file]");
    let _ = writeln!(
        side,
        "name = {}",
        path.file_name().unwrap().to_string_lossy()
    );
    let _ = writeln!(side, "sha256 = {digest:x}");
    let _ = writeln!(side, "code_version = {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(side, "\n[parameters]");
    for (k, v) in &meta.entries {
        let _ = writeln!(side, "{k} = {v}");
    }
    let mut meta_path = path.as_os_str().to_owned();
    meta_path.push(".meta");
    let meta_path = PathBuf::from(meta_path);
    fs::write(&meta_path, side).with_context(|| format!("writing {}", meta_path.display()))?;
    Ok(())
}

/// Field map CSV: `x_angstrom,t_au,n_rel,j_rel`, row-major (x outer, t inner).
pub fn write_field_map(path: &Path, map: &FieldMap<f64>, meta: &RunMetadata) -> Result<()> {
    let mut csv = String::from("x_angstrom,t_au,n_rel,j_rel\n");
    for (ix, &x) in map.x_nodes.iter().enumerate() {
        let x_ang = x * BOHR_ANGSTROM;
        for (it, &t) in map.t_nodes.iter().enumerate() {
            let _ = writeln!(
                csv,
                "{},{},{},{}",
                fmt_sig(x_ang),
                fmt_sig(t),
                fmt_sig(map.n_at(ix, it)),
                fmt_sig(map.j_at(ix, it))
            );
        }
    }
    let mut meta = meta.clone();
    meta.push("selector", map.selector.label());
    meta.push("reference_j_au", fmt_sig(map.reference_j));
    meta.push("max_im_ratio", format!("{:.3e}", map.max_im_ratio));
    write_with_sidecar(path, &csv, &meta)
}

/// Doublet table CSV (one row per doublet found in a scan window).
pub fn write_doublet_table(
    path: &Path,
    rows: &[(f64, f64, Doublet<f64>)],
    meta: &RunMetadata,
) -> Result<()> {
    let u = UnitSystem::<f64>::default();
    let mut csv = String::from(
        "band_lo_ev,band_hi_ev,e_re1_ev,e_im1_ev,e_re2_ev,e_im2_ev,\
         t12_au,t12_s,lambda12_angstrom,v12_m_per_s,decay_time_au,decay_length_au\n",
    );
    for (lo_ev, hi_ev, d) in rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            fmt_sig(*lo_ev),
            fmt_sig(*hi_ev),
            fmt_sig(u.au_to_ev(d.p1.e_re)),
            fmt_sig(u.au_to_ev(d.p1.e_im)),
            fmt_sig(u.au_to_ev(d.p2.e_re)),
            fmt_sig(u.au_to_ev(d.p2.e_im)),
            fmt_sig(d.t12),
            fmt_sig(u.au_time_to_seconds(d.t12)),
            fmt_sig(u.au_to_angstrom(d.lambda12)),
            fmt_sig(u.au_velocity_to_m_per_s(d.v12)),
            fmt_sig(d.decay_time),
            fmt_sig(d.decay_length)
        );
    }
    let mut meta = meta.clone();
    meta.push(
        "im_sign_convention",
        "e_im recorded as found by the root finder (upper half-plane); observables use |e_im|",
    );
    write_with_sidecar(path, &csv, &meta)
}

/// Resonance-denominator profile CSV: `e_ev,inv_abs_m_r`.
pub fn write_profile(path: &Path, rows: &[(f64, f64)], meta: &RunMetadata) -> Result<()> {
    let mut csv = String::from("e_ev,inv_abs_m_r\n");
    for (e_ev, v) in rows {
        let _ = writeln!(csv, "{},{}", fmt_sig(*e_ev), fmt_sig(*v));
    }
    write_with_sidecar(path, &csv, meta)
}

/// Predicted-vs-fitted comparison table.
pub fn write_comparison(
    path: &Path,
    rows: &[(String, f64, f64)],
    meta: &RunMetadata,
) -> Result<()> {
    let mut csv = String::from("quantity,predicted,fitted,rel_error\n");
    for (name, pred, fit) in rows {
        let rel = (fit - pred) / pred;
        let _ = writeln!(
            csv,
            "{name},{},{},{}",
            fmt_sig(*pred),
            fmt_sig(*fit),
            fmt_sig(rel)
        );
    }
    write_with_sidecar(path, &csv, meta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig_digit_format() {
        assert_eq!(fmt_sig(3.31e-3), "3.31000000000e-3");
        assert_eq!(fmt_sig(-1.0), "-1.00000000000e0");
    }
}
