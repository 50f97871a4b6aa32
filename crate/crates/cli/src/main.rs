//! Scenario runner for the double-quantum-well photoemission simulator.

mod config;
mod output;
mod scenarios;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use wellpulse::scattering::ContributionSelector;

use config::RunConfig;
use scenarios::{Overrides, Profile};

#[derive(Parser)]
#[command(
    name = "wellpulse",
    version,
    about = "Pulsed photoemission from a double-quantum-well thin film: field maps, \
             resonance tables, and wave-parameter fits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Sectioned key/value configuration file.
    config: PathBuf,

    /// Barrier power override, a.u.
    #[arg(long)]
    omega: Option<f64>,

    /// Pump duration override, a.u. of time.
    #[arg(long)]
    t0: Option<f64>,

    /// Level broadening override, eV.
    #[arg(long, value_name = "EV")]
    gamma_ev: Option<f64>,

    /// Detected band override, `lo:hi` in eV.
    #[arg(long, value_name = "LO:HI")]
    band_ev: Option<String>,

    /// Contribution selector for field products.
    #[arg(long, default_value = "full", value_parser = parse_selector)]
    selector: ContributionSelector,

    /// Grid resolution profile.
    #[arg(long, default_value = "ci", value_parser = Profile::parse)]
    profile: Profile,

    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named reproduction scenario.
    Run {
        #[command(flatten)]
        common: CommonArgs,
        /// Scenario name: fig2, fig3-4, fig5-7, fig8-9, fig10-17, fig18-20.
        scenario: String,
    },
    /// Check a configuration file and echo resolved values without running.
    Validate {
        /// Sectioned key/value configuration file.
        config: PathBuf,
    },
    /// Compute one field map on exactly the configured space-time grid.
    Map {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Scan an energy window and emit the resonance doublet table.
    Doublets {
        #[command(flatten)]
        common: CommonArgs,
        /// Scan window in eV, `lo:hi`.
        #[arg(long, default_value = "0.001:0.95", value_name = "LO:HI")]
        scan_ev: String,
    },
    /// Compare doublet-predicted beat observables with fitted values.
    Compare {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn parse_selector(s: &str) -> Result<ContributionSelector, String> {
    match s {
        "full" => Ok(ContributionSelector::Full),
        "outgoing" => Ok(ContributionSelector::OutgoingOnly),
        "incoming" => Ok(ContributionSelector::IncomingOnly),
        other => Err(format!("unknown selector `{other}` (full|outgoing|incoming)")),
    }
}

fn parse_pair(s: &str, what: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 2 {
        bail!("{what}: expected lo:hi, got `{s}`");
    }
    let lo: f64 = parts[0].trim().parse()?;
    let hi: f64 = parts[1].trim().parse()?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        bail!("{what}: need finite lo < hi, got `{s}`");
    }
    Ok((lo, hi))
}

fn overrides_from(common: &CommonArgs) -> Result<Overrides> {
    let band_ev = match &common.band_ev {
        Some(s) => Some(parse_pair(s, "--band-ev")?),
        None => None,
    };
    Ok(Overrides {
        omega: common.omega,
        t0: common.t0,
        gamma_ev: common.gamma_ev,
        band_ev,
        selector: common.selector,
        profile: common.profile,
    })
}

/// Exit 2 for configuration/usage problems, 3 for numerical failures.
fn classify(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<wellpulse::Error>() {
            return match e {
                wellpulse::Error::Config(_) | wellpulse::Error::Domain(_) => 2,
                _ => 3,
            };
        }
    }
    2
}

fn dispatch() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { common, scenario } => {
            let cfg = RunConfig::from_file(&common.config)?;
            let ov = overrides_from(&common)?;
            scenarios::run_scenario(&scenario, &cfg, &common.out, &ov)?;
            println!("scenario {scenario} written to {}", common.out.display());
            Ok(())
        }
        Command::Validate { config } => {
            let cfg = RunConfig::from_file(&config)?;
            let (report, violations) = cfg.validation_report();
            print!("{report}");
            if violations.is_empty() {
                println!("OK");
                Ok(())
            } else {
                for v in &violations {
                    eprintln!("violation: {v}");
                }
                bail!("{} violation(s)", violations.len());
            }
        }
        Command::Map { common } => {
            let cfg = RunConfig::from_file(&common.config)?;
            let ov = overrides_from(&common)?;
            scenarios::run_map(&cfg, &common.out, &ov)?;
            println!("field map written to {}", common.out.display());
            Ok(())
        }
        Command::Doublets { common, scan_ev } => {
            let cfg = RunConfig::from_file(&common.config)?;
            let ov = overrides_from(&common)?;
            let (lo, hi) = parse_pair(&scan_ev, "--scan-ev")?;
            scenarios::run_doublets(&cfg, &common.out, &ov, lo, hi)?;
            println!("doublet table written to {}", common.out.display());
            Ok(())
        }
        Command::Compare { common } => {
            let cfg = RunConfig::from_file(&common.config)?;
            let ov = overrides_from(&common)?;
            scenarios::run_compare(&cfg, &common.out, &ov)?;
            println!("comparison table written to {}", common.out.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(classify(&err))
        }
    }
}
