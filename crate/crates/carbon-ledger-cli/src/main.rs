//! `carbon-ledger`: CO2 accounting for model training from the command line.
//!
//! Exit codes: 0 success, 2 input validation, 3 unknown hardware, 4 I/O.
//! Every command is deterministic given its arguments, config file, and
//! input files; nothing touches the network.

mod commands;
mod config;

use std::fmt;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use carbon_ledger::report::RenderFormat;

#[derive(Debug)]
pub enum CliError {
    Lib(carbon_ledger::Error),
    Config {
        path: PathBuf,
        message: String,
    },
    Usage(String),
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(err) => write!(f, "{err}"),
            CliError::Config { path, message } => {
                write!(f, "bad config {}: {message}", path.display())
            }
            CliError::Usage(message) => write!(f, "{message}"),
            CliError::Io { path, source } => {
                write!(f, "I/O error on {}: {source}", path.display())
            }
        }
    }
}

impl From<carbon_ledger::Error> for CliError {
    fn from(err: carbon_ledger::Error) -> Self {
        CliError::Lib(err)
    }
}

impl CliError {
    /// 2 input validation, 3 unknown hardware, 4 I/O.
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(carbon_ledger::Error::UnknownHardware { .. }) => 3,
            CliError::Lib(carbon_ledger::Error::Io { .. }) | CliError::Io { .. } => 4,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Md,
}

impl From<OutputFormat> for RenderFormat {
    fn from(format: OutputFormat) -> Self {
        match format {
            OutputFormat::Csv => RenderFormat::Csv,
            OutputFormat::Json => RenderFormat::Json,
            OutputFormat::Md => RenderFormat::Markdown,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegistryFormatArg {
    Csv,
    Json,
}

impl From<RegistryFormatArg> for carbon_ledger::registry::RegistryFormat {
    fn from(format: RegistryFormatArg) -> Self {
        match format {
            RegistryFormatArg::Csv => Self::Csv,
            RegistryFormatArg::Json => Self::Json,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Config file (TOML); falls back to $CARBON_LEDGER_CONFIG
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Output format for report-producing commands
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,

    /// Write report output to this file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Hardware override file (JSON array of specs)
    #[arg(long, global = true, value_name = "PATH")]
    pub hardware: Option<PathBuf>,

    /// Power Usage Effectiveness override (dimensionless, >= 1)
    #[arg(long, global = true, value_name = "PUE")]
    pub pue: Option<f64>,

    /// Grid emission factor override, kg CO2 per kWh
    #[arg(long, global = true, value_name = "KG_PER_KWH")]
    pub ef_kg_per_kwh: Option<f64>,

    /// Equivalency override: tonnes CO2 per car driven for one year
    #[arg(long, global = true, value_name = "TONNES")]
    pub tonnes_per_car_year: Option<f64>,

    /// Equivalency override: tonnes CO2 per home powered for one year
    #[arg(long, global = true, value_name = "TONNES")]
    pub tonnes_per_home_year: Option<f64>,

    /// Trainings attributed to each citation (default 50)
    #[arg(long, global = true, value_name = "COUNT")]
    pub trainings_per_citation: Option<u64>,

    /// Also scale evaluation-phase energy by PUE (default false)
    #[arg(long, global = true, value_name = "BOOL")]
    pub apply_pue_to_eval: Option<bool>,
}

#[derive(Debug, Parser)]
#[command(
    name = "carbon-ledger",
    version,
    about = "Two-phase CO2 accounting for model training: one-time search cost, \
             recurring evaluation cost, lifetime totals, and human-scale equivalents.",
    after_help = "Units: durations in GPU hours (device-hours), model complexity in \
                  GFLOPs per forward pass, energy in Wh, CO2 in kg.\n\
                  Exit codes: 0 success, 2 input validation, 3 unknown hardware, 4 I/O."
)]
struct Cli {
    #[command(flatten)]
    globals: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Search-phase estimate: energy (Wh) and CO2 (kg) for a given number
    /// of search GPU hours
    EstimateSearch {
        /// Search duration in GPU hours (device-hours: 4 GPUs for 1 h = 4)
        #[arg(long, value_name = "HOURS", allow_negative_numbers = true)]
        gpu_hours: f64,

        /// GPU id (defaults to nvidia-v100 when omitted)
        #[arg(long, value_name = "ID")]
        gpu: Option<String>,

        /// CPU id (defaults to intel-i7-10750h when omitted)
        #[arg(long, value_name = "ID")]
        cpu: Option<String>,
    },

    /// Evaluation-phase estimate: energy (Wh) and CO2 (kg) for one training
    /// of a model with the given complexity
    #[command(group(ArgGroup::new("duration").required(true).args(["gpu_hours", "epochs"])))]
    EstimateEval {
        /// Model complexity in GFLOPs per forward pass
        #[arg(long, value_name = "GFLOPS")]
        gflops: f64,

        /// Training duration in GPU hours (alternative to a schedule)
        #[arg(
            long,
            value_name = "HOURS",
            allow_negative_numbers = true,
            conflicts_with_all = ["epochs", "min_per_epoch"]
        )]
        gpu_hours: Option<f64>,

        /// Schedule: number of epochs (use with --min-per-epoch)
        #[arg(long, value_name = "COUNT", requires = "min_per_epoch")]
        epochs: Option<u32>,

        /// Schedule: minutes per epoch (use with --epochs)
        #[arg(long, value_name = "MINUTES", requires = "epochs")]
        min_per_epoch: Option<f64>,

        /// GPU id (defaults to nvidia-v100 when omitted)
        #[arg(long, value_name = "ID")]
        gpu: Option<String>,

        /// CPU id (defaults to intel-i7-10750h when omitted)
        #[arg(long, value_name = "ID")]
        cpu: Option<String>,
    },

    /// Lifetime table for a registry: per-training CO2 (kg), lifetime CO2
    /// at a training count, and car/home equivalents
    #[command(group(ArgGroup::new("n_source").required(true).args(["n", "from_citations"])))]
    Lifetime {
        /// Registry file (CSV or JSON)
        #[arg(value_name = "REGISTRY")]
        registry: PathBuf,

        /// Fixed number of trainings applied to every record
        #[arg(long, value_name = "COUNT")]
        n: Option<u64>,

        /// Derive each record's trainings from citations x trainings-per-citation
        #[arg(long)]
        from_citations: bool,

        /// Registry format (inferred from the extension when omitted)
        #[arg(long, value_enum, value_name = "FORMAT")]
        registry_format: Option<RegistryFormatArg>,
    },

    /// Convert a CO2 mass in kilograms to cars-driven and homes-powered
    /// equivalents
    Equivalents {
        /// CO2 mass in kilograms
        #[arg(value_name = "CO2_KG", allow_negative_numbers = true)]
        co2_kg: f64,
    },

    /// Figure-ready reports from a registry: search scatter, lifetime
    /// table, or lifetime-vs-trainings series
    Report {
        /// Registry file (CSV or JSON)
        #[arg(value_name = "REGISTRY")]
        registry: PathBuf,

        /// Which report to produce
        #[arg(long, value_enum, value_name = "KIND")]
        kind: ReportKind,

        /// Table only: fixed training count (default: from citations)
        #[arg(long, value_name = "COUNT")]
        n: Option<u64>,

        /// Series only: largest training count on the grid
        #[arg(long, value_name = "COUNT", default_value_t = 1_000_000)]
        n_max: u64,

        /// Series only: training-count grid step
        #[arg(long, value_name = "COUNT", default_value_t = 100_000)]
        step: u64,

        /// Registry format (inferred from the extension when omitted)
        #[arg(long, value_enum, value_name = "FORMAT")]
        registry_format: Option<RegistryFormatArg>,
    },

    /// Validate a registry file (complexity in GFLOPs, search cost in
    /// device-hours) and print an ingest summary
    Ingest {
        /// Registry file (CSV or JSON)
        #[arg(value_name = "REGISTRY")]
        path: PathBuf,

        /// Registry format (inferred from the extension when omitted)
        #[arg(long, value_enum, value_name = "FORMAT")]
        registry_format: Option<RegistryFormatArg>,
    },

    /// Inspect the hardware database
    Hardware {
        #[command(subcommand)]
        command: HardwareCommand,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportKind {
    /// One row per record with a search cost: name, top1, GFLOPs, search CO2 (kg)
    Scatter,
    /// Lifetime accounting rows with car/home equivalents
    Table,
    /// Cumulative CO2 (kg) vs number of trainings, eval-only and total columns
    Series,
}

#[derive(Debug, Subcommand)]
enum HardwareCommand {
    /// List every known device: power draw (W), peak throughput (GFLOP/s)
    List,
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let settings = config::load(&cli.globals)?;
    match cli.command {
        Command::EstimateSearch {
            gpu_hours,
            gpu,
            cpu,
        } => commands::estimate_search(&settings, gpu_hours, gpu.as_deref(), cpu.as_deref()),
        Command::EstimateEval {
            gflops,
            gpu_hours,
            epochs,
            min_per_epoch,
            gpu,
            cpu,
        } => commands::estimate_eval(
            &settings,
            gflops,
            gpu_hours,
            epochs.zip(min_per_epoch),
            gpu.as_deref(),
            cpu.as_deref(),
        ),
        Command::Lifetime {
            registry,
            n,
            from_citations: _,
            registry_format,
        } => commands::lifetime(&settings, &cli.globals, &registry, n, registry_format),
        Command::Equivalents { co2_kg } => commands::equivalents(&settings, co2_kg),
        Command::Report {
            registry,
            kind,
            n,
            n_max,
            step,
            registry_format,
        } => commands::report(
            &settings,
            &cli.globals,
            &registry,
            kind,
            n,
            n_max,
            step,
            registry_format,
        ),
        Command::Ingest {
            path,
            registry_format,
        } => commands::ingest_summary(&path, registry_format),
        Command::Hardware {
            command: HardwareCommand::List,
        } => commands::hardware_list(&settings),
    }
}
