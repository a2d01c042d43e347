use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rqi_bundle::scenarios::{parse_rapidities, run_scenario, OutputFormat, ScenarioConfig, ScenarioName};

const EXIT_CONFIG: u8 = 2;
const EXIT_COVERAGE: u8 = 3;

const COLUMNS_HELP: &str = "\
CSV columns (one row per rapidity; every value column c is followed by c_err,
its change when the quadrature order drops to 3/4):
  pst-entropy          rapidity, entropy, tau_uu, tau_dd, tau_ud_re, tau_ud_im, norm
  ga-concurrence       rapidity, concurrence, entanglement, norm
  pl-covariance        rapidity, defect, sigma_trace
  tau-noncovariance    rapidity, defect, entropy
  dirac-fw             rapidity, range_plus, range_minus, closed_forms, metric_forms
  proca-residual       rapidity, divergence, klein_gordon, divergence_fine,
                       klein_gordon_fine, ratio_div, ratio_kg
  position-plancherel  rapidity, dirac_mismatch, proca_mismatch, coverage

Config files hold `key = value` lines (# or ; comments, [sections] ignored):
  scenario, m, twice_s, shell, center, width, axis, rapidities, order, panels,
  box_widths, out, format, seed, samples, grid_n
A JSON report can be passed instead; its provenance.config block is re-run.

Exit codes: 0 success, 2 configuration error, 3 quadrature or grid coverage
failure (the report is still written). RQI_THREADS caps the worker threads.";

#[derive(Parser)]
#[command(name = "rqi-bundle", version, about = "Relativistic spin and entanglement scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write its report.
    #[command(after_help = COLUMNS_HELP)]
    Run(RunArgs),
    /// List the scenario names.
    List,
}

#[derive(clap::Args)]
struct RunArgs {
    /// Scenario name; overrides the config file.
    #[arg(long)]
    scenario: Option<String>,
    /// Rapidities as `a:b:step` or a comma list.
    #[arg(long)]
    rapidity: Option<String>,
    /// Gaussian momentum width (defaults to m).
    #[arg(long)]
    width: Option<f64>,
    /// Gauss-Legendre nodes per panel.
    #[arg(long)]
    order: Option<usize>,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Flat key-value config file.
    config: Option<PathBuf>,
}

fn build_config(args: &RunArgs) -> Result<ScenarioConfig, String> {
    let scenario = match &args.scenario {
        Some(s) => Some(s.parse::<ScenarioName>().map_err(|e| e.to_string())?),
        None => None,
    };
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let mut cfg = ScenarioConfig::parse(&text, scenario.unwrap_or(ScenarioName::PstEntropy))
                .map_err(|e| format!("{}: {e}", path.display()))?;
            if let Some(s) = scenario {
                cfg.scenario = s;
            }
            cfg
        }
        None => ScenarioConfig::new(scenario.ok_or("--scenario or a config file is required")?),
    };
    if let Some(r) = &args.rapidity {
        cfg.rapidities = Some(parse_rapidities(r).map_err(|e| e.to_string())?);
    }
    if let Some(w) = args.width {
        cfg.width = Some(w);
    }
    if let Some(o) = args.order {
        cfg.order = o;
    }
    if let Some(o) = &args.out {
        cfg.out = Some(o.display().to_string());
    }
    if let Some(f) = &args.format {
        cfg.format = f.parse::<OutputFormat>().map_err(|e| e.to_string())?;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("RQI_THREADS") else { return Ok(()) };
    let n: usize = value.trim().parse().map_err(|_| format!("RQI_THREADS must be a positive integer, got '{value}'"))?;
    if n == 0 {
        return Err("RQI_THREADS must be at least 1".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn run(args: RunArgs) -> ExitCode {
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_CONFIG);
    }
    let cfg = match build_config(&args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let report = match run_scenario(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let written = match &cfg.out {
        Some(path) => File::create(path)
            .map_err(|e| rqi_bundle::Error::InvalidParameter(format!("cannot create {path}: {e}")))
            .and_then(|f| report.write(cfg.format, BufWriter::new(f))),
        None => report.write(cfg.format, io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_CONFIG);
    }
    for d in &report.provenance.diagnostics {
        eprintln!("warning: {d}");
    }
    if report.coverage_failure {
        eprintln!("error: numerical coverage failure, see diagnostics");
        return ExitCode::from(EXIT_COVERAGE);
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run(args) => run(args),
        Command::List => {
            let mut out = io::stdout().lock();
            for s in ScenarioName::ALL {
                let _ = writeln!(out, "{s}");
            }
            ExitCode::SUCCESS
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(list: &[&str]) -> RunArgs {
        let mut full = vec!["rqi-bundle", "run"];
        full.extend_from_slice(list);
        match Cli::parse_from(full).command {
            Command::Run(a) => a,
            Command::List => unreachable!(),
        }
    }

    #[test]
    fn flags_override_defaults() {
        let cfg = build_config(&args(&["--scenario", "ga-concurrence", "--rapidity", "0:1:0.5", "--order", "10"])).unwrap();
        assert_eq!(cfg.scenario, ScenarioName::GaConcurrence);
        assert_eq!(cfg.rapidities(), vec![0.0, 0.5, 1.0]);
        assert_eq!(cfg.order, 10);
    }

    #[test]
    fn scenario_is_required() {
        assert!(build_config(&args(&[])).is_err());
        assert!(build_config(&args(&["--scenario", "pst-entropy", "--format", "xml"])).is_err());
    }
}
