use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use poisson_mech_cli::config::{ConfigError, Model, OutputKind, ScenarioConfig};
use poisson_mech_cli::run::{certificate_report, run, write_outputs, Format};
use poisson_mech_cli::sweep::{sweep, workers_from_env, WORKERS_ENV};
use poisson_mech_cli::models::execute;

/// Runs poisson-mech scenarios and certificates.
#[derive(Debug, Parser)]
#[command(name = "pmech", version)]
struct Cli {
    /// Encoding of tabular artifacts.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Execute a scenario config and write its artifacts and manifest.
    Run {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-run a scenario once per value of one parameter.
    #[command(after_help = format!("Worker count: set {WORKERS_ENV}."))]
    Sweep {
        config: PathBuf,
        #[arg(long)]
        param: String,
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        values: Vec<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run only the certificates of a model with default parameters.
    Certify {
        /// minkowski2d, kappa or su2
        model: String,
        #[arg(long, allow_negative_numbers = true)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the manifest here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<ConfigError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}

/// `Ok(false)` when a certificate or sweep row failed.
fn dispatch(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Run { config, out } => {
            let cfg = ScenarioConfig::load(&config)?;
            let manifest = run(&cfg, &out, cli.format)?;
            print!("{}", certificate_report(&manifest.certificates));
            println!("wrote {} files to {}", manifest.files.len(), out.display());
            Ok(manifest.certificates_pass)
        }
        Command::Sweep { config, param, values, out } => {
            let cfg = ScenarioConfig::load(&config)?;
            let manifest = sweep(&cfg, &param, &values, &out, cli.format, workers_from_env()?)?;
            for row in &manifest.rows {
                let detail = row.error.as_deref().unwrap_or("");
                println!("{param}={:e} {} {detail}", row.value, row.status.name());
            }
            if let Some(slope) = manifest.convergence_slope {
                println!("convergence slope {slope:.4}");
            }
            Ok(manifest.all_ok)
        }
        Command::Certify { model, epsilon, seed, out } => {
            let model = Model::parse(&model).ok_or_else(|| ConfigError::Invalid {
                path: "model".into(),
                message: format!("unknown model {model}; expected minkowski2d, kappa or su2"),
            })?;
            let mut cfg = ScenarioConfig::default_for(model, seed, vec![OutputKind::Certificate]);
            cfg.params.insert("epsilon".into(), epsilon);
            cfg.validate()?;
            let output = execute(&cfg)?;
            if let Some(dir) = out {
                write_outputs(&cfg, &output, &dir, cli.format)?;
            }
            print!("{}", certificate_report(&output.checks));
            Ok(output.certificates_pass())
        }
    }
}
