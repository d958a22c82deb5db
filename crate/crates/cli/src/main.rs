use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use otto_harness::config::Format;
use otto_harness::output::{write_report, write_sweep};
use otto_harness::{
    emit_figures, parse_config, run_scenario, run_sweep, HarnessError, ScenarioConfig,
};

#[derive(Parser)]
#[command(
    name = "qotto",
    version,
    about = "Quantum Otto engine scenarios, sweeps and figure data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(clap::Args)]
struct Common {
    /// Scenario configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (defaults to [output].dir, then the current directory).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format (defaults to [output].format, then json).
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one scenario.
    Run(Common),
    /// Evaluate a 1-D or 2-D parameter grid.
    Sweep(Common),
    /// Write T-S, population and photon-distribution CSVs.
    Figures(Common),
}

fn load(path: &Path) -> Result<ScenarioConfig, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(HarnessError::io(path))?;
    Ok(parse_config(&text)?)
}

fn resolve(common: &Common, cfg: &ScenarioConfig) -> (PathBuf, Format) {
    let dir = common
        .out
        .clone()
        .or_else(|| cfg.output.dir.clone())
        .unwrap_or_else(|| PathBuf::from("."));
    let format = match common.format {
        Some(FormatArg::Json) => Format::Json,
        Some(FormatArg::Csv) => Format::Csv,
        None => cfg.output.format.unwrap_or_default(),
    };
    (dir, format)
}

fn execute(command: Command) -> Result<Vec<PathBuf>, HarnessError> {
    match command {
        Command::Run(common) => {
            let cfg = load(&common.config)?;
            let (dir, format) = resolve(&common, &cfg);
            let report = run_scenario(&cfg)?;
            println!(
                "eta0 = {}  eta_qo = {}  enhanced = {}",
                report.classical.eta0, report.afterburner.eta_qo, report.afterburner.enhanced
            );
            Ok(vec![write_report(&report, &dir, format)?])
        }
        Command::Sweep(common) => {
            let cfg = load(&common.config)?;
            let (dir, format) = resolve(&common, &cfg);
            let table = run_sweep(&cfg)?;
            match &table.argmax {
                Some(best) => println!(
                    "{} rows; max gain {} at row {} {:?}",
                    table.rows.len(),
                    best.gain,
                    best.index,
                    best.params
                ),
                None => println!("{} rows; no valid grid point", table.rows.len()),
            }
            write_sweep(&table, &dir, format)
        }
        Command::Figures(common) => {
            let cfg = load(&common.config)?;
            let (dir, _) = resolve(&common, &cfg);
            emit_figures(&cfg, &dir)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(paths) => {
            for p in paths {
                println!("wrote {}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
