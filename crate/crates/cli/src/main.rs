//! `boolnet`: analysis, decomposition, counting, extension and assembly of
//! Boolean networks from the command line.

mod commands;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "boolnet", version, about = "Modular construction of Boolean networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
pub struct Output {
    /// Write the result here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Canalization report for each node (or one node).
    Analyze {
        /// Rule or table file; `-` or nothing reads stdin.
        file: Option<PathBuf>,
        #[arg(long)]
        node: Option<String>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[command(flatten)]
        out: Output,
    },
    /// Split a network into its simple networks.
    Decompose {
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = PolicyArg::Zeros)]
        policy: PolicyArg,
        /// Values for `--policy map`, e.g. `x1=0,x4=1`.
        #[arg(long)]
        map: Option<String>,
        /// Family for `--policy graphical`.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, value_enum, default_value_t = DocFormat::Text)]
        format: DocFormat,
        #[command(flatten)]
        out: Output,
    },
    /// Exact extension counts.
    Count(commands::CountArgs),
    /// List or apply nested canalizing placements of a new input.
    Extend {
        file: Option<PathBuf>,
        #[arg(long)]
        node: String,
        #[arg(long, conflicts_with = "placement")]
        list: bool,
        #[arg(long, requires = "new_var")]
        placement: Option<String>,
        /// Node read by the new input; created as a constant-0 node if absent.
        #[arg(long)]
        new_var: Option<String>,
        #[arg(long, value_enum, default_value_t = NetworkFormat::Rules)]
        format: NetworkFormat,
        #[command(flatten)]
        out: Output,
    },
    /// Assemble simple networks along an acyclic component graph.
    Compose {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Component edges, 1-based: `1-2,2-3`; empty for none.
        #[arg(long, default_value = "")]
        q: String,
        /// One per edge. Graphical: `1-2=1,0;1,1`. NCF: `source->target@placement`.
        #[arg(long = "connections")]
        connections: Vec<String>,
        /// linear, conjunctive, disjunctive, and-not, or-not, or ncf.
        #[arg(long)]
        family: String,
        #[arg(long, value_enum, default_value_t = NetworkFormat::Rules)]
        format: NetworkFormat,
        #[command(flatten)]
        out: Output,
    },
    /// Formula-versus-enumeration checks.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::Oracles)]
        suite: Suite,
        #[arg(long)]
        only: Option<String>,
        #[arg(long, hide = true)]
        inject_fault: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum DocFormat {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum NetworkFormat {
    Rules,
    Tables,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum PolicyArg {
    Zeros,
    Ncf,
    Map,
    Graphical,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Oracles,
}

/// Failure with its exit status: 1 for domain errors, 2 for bad usage or input.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(boolnet::Error),
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Domain(boolnet::Error::Parse(_)) => 2,
            CliError::Domain(_) | CliError::Failed(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Failed(msg) => f.write_str(msg),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<boolnet::Error> for CliError {
    fn from(e: boolnet::Error) -> Self {
        CliError::Domain(e)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze { file, node, format, out } => commands::analyze(file, node, format, &out),
        Command::Decompose { file, policy, map, family, format, out } => {
            commands::decompose(file, policy, map, family, format, &out)
        }
        Command::Count(args) => commands::count(args),
        Command::Extend { file, node, list, placement, new_var, format, out } => {
            commands::extend(file, &node, list, placement, new_var, format, &out)
        }
        Command::Compose { files, q, connections, family, format, out } => {
            commands::compose(&files, &q, &connections, &family, format, &out)
        }
        Command::Verify { suite: Suite::Oracles, only, inject_fault, out } => {
            commands::verify(only, inject_fault, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
