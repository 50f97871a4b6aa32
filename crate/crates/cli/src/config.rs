//! Sectioned key/value configuration files and their conversion into the
//! simulation's atomic-unit domain types.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use wellpulse::model::{
    EmitterConfig, EnergyBand, PumpMode, PumpSchedule, RelaxationParams, UnitSystem,
};

/// Raw parsed file: section -> key -> (value string, line number).
#[derive(Debug, Default)]
pub struct RawConfig {
    sections: BTreeMap<String, BTreeMap<String, (String, usize)>>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RawConfig::default();
        let mut section = String::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw_line.find('#') {
                Some(p) => &raw_line[..p],
                None => raw_line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            if line.starts_with('[') {
                if !line.ends_with(']') || line.len() < 3 {
                    bail!("line {line_no}: malformed section header `{raw_line}`");
                }
                section = line[1..line.len() - 1].trim().to_string();
                cfg.sections.entry(section.clone()).or_default();
                continue;
            }
            let Some(eq) = line.find('=') else {
                bail!("line {line_no}: expected `key = value`, got `{raw_line}`");
            };
            let key = line[..eq].trim().to_string();
            let value = line[eq + 1..].trim().to_string();
            if key.is_empty() || value.is_empty() {
                bail!("line {line_no}: empty key or value in `{raw_line}`");
            }
            if section.is_empty() {
                bail!("line {line_no}: `{key}` appears before any [section]");
            }
            let entry = cfg.sections.get_mut(&section).unwrap();
            if entry.insert(key.clone(), (value, line_no)).is_some() {
                bail!("line {line_no}: duplicate key `{key}` in [{section}]");
            }
        }
        Ok(cfg)
    }

    fn get(&self, section: &str, key: &str) -> Result<&str> {
        self.sections
            .get(section)
            .and_then(|s| s.get(key))
            .map(|(v, _)| v.as_str())
            .ok_or_else(|| anyhow!("missing `{key}` in [{section}]"))
    }

    fn get_opt(&self, section: &str, key: &str) -> Option<&str> {
        self.sections
            .get(section)
            .and_then(|s| s.get(key))
            .map(|(v, _)| v.as_str())
    }

    fn get_f64(&self, section: &str, key: &str) -> Result<f64> {
        let v = self.get(section, key)?;
        let line = self.sections[section][key].1;
        v.parse::<f64>()
            .with_context(|| format!("line {line}: `{key} = {v}` is not a number"))
    }
}

/// `lo:hi:n` axis specification.
#[derive(Debug, Clone, Copy)]
pub struct AxisRange {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl AxisRange {
    fn parse(text: &str, what: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            bail!("{what}: expected lo:hi:n, got `{text}`");
        }
        let lo: f64 = parts[0].trim().parse().context("range lo")?;
        let hi: f64 = parts[1].trim().parse().context("range hi")?;
        let n: usize = parts[2].trim().parse().context("range n")?;
        if !(lo.is_finite() && hi.is_finite()) || hi <= lo || n < 2 {
            bail!("{what}: need finite lo < hi and n >= 2, got `{text}`");
        }
        Ok(Self { lo, hi, n })
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (self.n - 1) as f64)
            .collect()
    }
}

/// Spatial axis: explicit list or a range.
#[derive(Debug, Clone)]
pub enum XSpec {
    List(Vec<f64>),
    Range(AxisRange),
}

impl XSpec {
    pub fn nodes_angstrom(&self) -> Vec<f64> {
        match self {
            XSpec::List(v) => v.clone(),
            XSpec::Range(r) => r.nodes(),
        }
    }
}

/// I/O-unit run configuration (eV, Å, a.u.-time), as read from disk.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub d_angstrom: f64,
    pub omega_au: f64,
    pub chi_ev: f64,
    pub e_min_ev: f64,
    pub e_max_ev: f64,
    pub gamma_ev: f64,
    pub t0_au: f64,
    pub mode: PumpMode,
    pub x_spec: XSpec,
    pub t_range: AxisRange,
    pub n_energy: usize,
}

/// Atomic-unit domain objects assembled from a [`RunConfig`].
pub struct Domain {
    pub emitter: EmitterConfig<f64>,
    pub band: EnergyBand<f64>,
    pub relax: RelaxationParams<f64>,
    pub pump: PumpSchedule<f64>,
    pub x_nodes_au: Vec<f64>,
    pub t_nodes_au: Vec<f64>,
    pub n_energy: usize,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("config not found: {}", path.display()))?;
        Self::from_text(&text)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let raw = RawConfig::parse(text)?;
        let mode = match raw.get_opt("pump", "mode").unwrap_or("pump") {
            "pump" => PumpMode::PumpOn,
            "saturation" => PumpMode::Saturation,
            "decay" => PumpMode::Decay,
            other => bail!("[pump] mode must be pump|saturation|decay, got `{other}`"),
        };
        let x_spec = match (
            raw.get_opt("grid", "x_angstrom_list"),
            raw.get_opt("grid", "x_angstrom_range"),
        ) {
            (Some(list), None) => {
                let mut v = Vec::new();
                for part in list.split(',') {
                    v.push(
                        part.trim()
                            .parse::<f64>()
                            .with_context(|| format!("x_angstrom_list entry `{part}`"))?,
                    );
                }
                if v.is_empty() {
                    bail!("[grid] x_angstrom_list is empty");
                }
                XSpec::List(v)
            }
            (None, Some(range)) => XSpec::Range(AxisRange::parse(range, "[grid] x_angstrom_range")?),
            (Some(_), Some(_)) => {
                bail!("[grid] give either x_angstrom_list or x_angstrom_range, not both")
            }
            (None, None) => bail!("[grid] needs x_angstrom_list or x_angstrom_range"),
        };
        let t_range = AxisRange::parse(raw.get("grid", "t_au_range")?, "[grid] t_au_range")?;
        let n_energy = raw.get_f64("grid", "n_energy")? as usize;
        Ok(RunConfig {
            d_angstrom: raw.get_f64("emitter", "d_angstrom")?,
            omega_au: raw.get_f64("emitter", "omega_au")?,
            chi_ev: raw.get_f64("emitter", "chi_ev")?,
            e_min_ev: raw.get_f64("band", "e_min_ev")?,
            e_max_ev: raw.get_f64("band", "e_max_ev")?,
            gamma_ev: raw.get_f64("relax", "gamma_ev")?,
            t0_au: raw.get_f64("pump", "t0_au")?,
            mode,
            x_spec,
            t_range,
            n_energy,
        })
    }

    /// Converts to atomic units and validates every domain invariant.
    pub fn to_domain(&self) -> Result<Domain> {
        let u = UnitSystem::<f64>::default();
        let emitter = EmitterConfig::new(
            u.angstrom_to_au(self.d_angstrom),
            self.omega_au,
            u.ev_to_au(self.chi_ev),
        )?;
        let band = EnergyBand::new(u.ev_to_au(self.e_min_ev), u.ev_to_au(self.e_max_ev))?;
        let relax = RelaxationParams::new(u.ev_to_au(self.gamma_ev))?;
        let pump = PumpSchedule::new(self.t0_au, 1.0, self.mode)?;
        let x_nodes_au: Vec<f64> = self
            .x_spec
            .nodes_angstrom()
            .iter()
            .map(|&x| u.angstrom_to_au(x))
            .collect();
        let t_nodes_au = self.t_range.nodes();
        Ok(Domain {
            emitter,
            band,
            relax,
            pump,
            x_nodes_au,
            t_nodes_au,
            n_energy: self.n_energy,
        })
    }

    /// Validation report: resolved unit-tagged values plus any invariant
    /// violations, without running a scenario.
    pub fn validation_report(&self) -> (String, Vec<String>) {
        let u = UnitSystem::<f64>::default();
        let mut out = String::new();
        let mut violations = Vec::new();
        let _ = writeln!(
            out,
            "d        = {} Angstrom = {:.6} a.u.",
            self.d_angstrom,
            u.angstrom_to_au(self.d_angstrom)
        );
        let _ = writeln!(out, "omega    = {} a.u. (1/length)", self.omega_au);
        let _ = writeln!(
            out,
            "chi      = {} eV = {:.8} a.u.",
            self.chi_ev,
            u.ev_to_au(self.chi_ev)
        );
        let _ = writeln!(
            out,
            "band     = [{}, {}] eV = [{:.8}, {:.8}] a.u.",
            self.e_min_ev,
            self.e_max_ev,
            u.ev_to_au(self.e_min_ev),
            u.ev_to_au(self.e_max_ev)
        );
        let _ = writeln!(
            out,
            "gamma_p  = {} eV = {:.4e} a.u.",
            self.gamma_ev,
            u.ev_to_au(self.gamma_ev)
        );
        let _ = writeln!(out, "t0       = {} a.u.-time", self.t0_au);
        let _ = writeln!(out, "n_energy = {}", self.n_energy);

        if self.d_angstrom <= 0.0 {
            violations.push("d must be > 0".into());
        }
        if self.omega_au < 0.0 {
            violations.push("omega must be >= 0".into());
        }
        if self.chi_ev <= 0.0 {
            violations.push("chi must be > 0".into());
        }
        if !(0.0 < self.e_min_ev && self.e_min_ev < self.e_max_ev) {
            violations.push("band must satisfy 0 < e_min < e_max".into());
        }
        if self.gamma_ev <= 0.0 {
            violations.push("gamma_p must be > 0".into());
        }
        if self.t0_au <= 0.0 && self.mode != PumpMode::Saturation {
            violations.push("t0 must be > 0".into());
        }
        if self.n_energy < 100 {
            violations.push("n_energy must be >= 100".into());
        }
        (out, violations)
    }
}
