use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use deltap_cli::commands::{cmd_analyze, cmd_report, cmd_simulate};
use deltap_cli::config::{resolve_config, Overrides};
use deltap_cli::error::{CliError, Result};
use deltap_cli::ingest::InputFormat;
use deltap_core::SamplerKind;

/// Bayesian association analysis for binary variables: posterior added
/// values, credible intervals, and significance screening.
#[derive(Parser)]
#[command(name = "deltap", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze observed data: per-pair posteriors, edges, distances.
    Analyze(AnalyzeArgs),
    /// Generate synthetic pairs and validate the pipeline on them.
    Simulate(SimulateArgs),
    /// Render report artifacts (bar chart, Venn counts) from a results
    /// table.
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    /// CSV of instances: header row of variable names, cells 0/1.
    Instances,
    /// CSV with header n00,n01,n10,n11 and one data row.
    Contingency,
}

#[derive(Clone, Copy, ValueEnum)]
enum SamplerArg {
    /// Exact conjugate sampling (default; fast).
    Direct,
    /// Random-walk Metropolis in log-ratio coordinates.
    Mcmc,
}

#[derive(Args)]
struct RunSettings {
    /// Configuration file (TOML).
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Master seed; overrides the config file.
    #[arg(long)]
    seed: Option<u64>,

    /// Posterior sampler; overrides the config file.
    #[arg(long, value_enum)]
    sampler: Option<SamplerArg>,

    /// MCMC chain count; overrides the config file.
    #[arg(long)]
    chains: Option<usize>,

    /// MCMC steps per chain after burn-in; overrides the config file.
    #[arg(long)]
    steps: Option<usize>,

    /// MCMC burn-in steps per chain; overrides the config file.
    #[arg(long = "burn-in")]
    burn_in: Option<usize>,

    /// Output directory.
    #[arg(long = "out-dir", env = "DELTAP_OUT_DIR", default_value = "deltap-out")]
    out_dir: PathBuf,
}

impl RunSettings {
    fn overrides(&self) -> Overrides {
        Overrides {
            seed: self.seed,
            sampler: self.sampler.map(|s| match s {
                SamplerArg::Direct => SamplerKind::Direct,
                SamplerArg::Mcmc => SamplerKind::Mcmc,
            }),
            chains: self.chains,
            steps: self.steps,
            burn_in: self.burn_in,
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input data file.
    #[arg(long, value_name = "FILE")]
    input: PathBuf,

    /// Input schema.
    #[arg(long, value_enum, default_value = "instances")]
    format: FormatArg,

    #[command(flatten)]
    run: RunSettings,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    run: RunSettings,
}

#[derive(Args)]
struct ReportArgs {
    /// Results table produced by `analyze`.
    #[arg(long, value_name = "FILE")]
    input: PathBuf,

    /// Emit Venn counts for one pair, e.g. --pair grief,sadness.
    #[arg(long, value_name = "A,B")]
    pair: Option<String>,

    /// Output directory.
    #[arg(long = "out-dir", env = "DELTAP_OUT_DIR", default_value = "deltap-out")]
    out_dir: PathBuf,
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze(args) => {
            let (_, config) = resolve_config(args.run.config.as_deref(), &args.run.overrides())?;
            let format = match args.format {
                FormatArg::Instances => InputFormat::Instances,
                FormatArg::Contingency => InputFormat::Contingency,
            };
            let outcome = cmd_analyze(&args.input, format, &config, &args.run.out_dir)?;
            println!(
                "analyzed {} pair(s); run {}",
                outcome.pairs, outcome.run_id
            );
            println!("  results:   {}", outcome.results.display());
            println!("  edges:     {}", outcome.edges.display());
            println!("  distances: {}", outcome.distances.display());
            println!("  manifest:  {}", outcome.manifest.display());
            Ok(())
        }
        Command::Simulate(args) => {
            let (file, config) =
                resolve_config(args.run.config.as_deref(), &args.run.overrides())?;
            let specs = file.simulation_specs(config.seed);
            let outcome = cmd_simulate(&specs, &config, &args.run.out_dir)?;
            println!(
                "simulated {} spec(s); run {}",
                outcome.data_files.len(),
                outcome.run_id
            );
            println!("  summary:  {}", outcome.summary.display());
            println!("  manifest: {}", outcome.manifest.display());
            Ok(())
        }
        Command::Report(args) => {
            let pair = match &args.pair {
                Some(raw) => Some(parse_pair(raw)?),
                None => None,
            };
            let outcome = cmd_report(
                &args.input,
                pair.as_ref().map(|(a, b)| (a.as_str(), b.as_str())),
                &args.out_dir,
            )?;
            println!("chart: {}", outcome.chart.display());
            if let (Some(path), Some((a_only, b_only, both))) =
                (&outcome.venn, outcome.venn_counts)
            {
                println!("venn:  {} (a_only={a_only}, b_only={b_only}, both={both})", path.display());
            }
            Ok(())
        }
    }
}

fn parse_pair(raw: &str) -> Result<(String, String)> {
    match raw.split_once(',') {
        Some((a, b)) if !a.trim().is_empty() && !b.trim().is_empty() => {
            Ok((a.trim().to_string(), b.trim().to_string()))
        }
        _ => Err(CliError::Config(format!(
            "--pair expects two comma-separated labels, got '{raw}'"
        ))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
