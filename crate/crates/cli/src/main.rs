use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heavyseg::{render, run, CliError, Command, InputFormat, OutputMode, Query, ScoringTable, ThresholdArg};
use heavyseg_core::{LengthBounds, TopKRegime};

/// Heaviest segments of a sequence under length bounds.
#[derive(Debug, Parser)]
#[command(name = "heavyseg", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Feasible segment with the largest sum.
    MaxSum(Flags),
    /// Feasible segment with the largest density (sum / width).
    MaxDensity(Flags),
    /// The k feasible segments with the largest sums.
    TopkSum(Flags),
    /// The k feasible segments with the largest densities.
    TopkDensity(Flags),
    /// Every feasible segment whose sum meets the threshold.
    AboveSum(Flags),
    /// Every feasible segment whose density meets the threshold.
    AboveDensity(Flags),
    /// Subarray of a matrix with the largest sum; bounds apply to columns.
    Matrix2dSum(Flags),
    /// Subarray of a matrix with the largest sum per unit area.
    Matrix2dDensity(Flags),
    /// Number of feasible segments.
    Count(Flags),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Regime {
    Auto,
    SmallK,
    LargeK,
}

#[derive(Debug, Args)]
struct Flags {
    /// Smallest admissible segment width.
    #[arg(long = "L", value_name = "L")]
    lower: f64,
    /// Largest admissible segment width.
    #[arg(long = "U", value_name = "U")]
    upper: f64,
    /// Number of segments for the top-k commands.
    #[arg(long)]
    k: Option<usize>,
    /// Threshold for the above-* commands, as a number or NUM/DEN.
    #[arg(long, allow_hyphen_values = true)]
    threshold: Option<ThresholdArg>,
    /// Keep only segments strictly above the threshold.
    #[arg(long)]
    strict: bool,
    /// Candidate strategy for topk-density.
    #[arg(long, value_enum, default_value_t = Regime::Auto)]
    regime: Regime,
    #[arg(long, value_enum, default_value_t = InputFormat::Numbers)]
    format: InputFormat,
    /// FASTA scoring table, e.g. C=1,G=1,A=0,T=0.
    #[arg(long)]
    scoring: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputMode::Json)]
    output: OutputMode,
    /// Consume the input element by element instead of loading it first.
    #[arg(long)]
    stream: bool,
    /// Worker threads for the matrix commands (0: one per core).
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Input file; standard input when absent or "-".
    input: Option<PathBuf>,
}

fn split(cmd: Cmd) -> (Command, Flags) {
    match cmd {
        Cmd::MaxSum(f) => (Command::MaxSum, f),
        Cmd::MaxDensity(f) => (Command::MaxDensity, f),
        Cmd::TopkSum(f) => (Command::TopkSum, f),
        Cmd::TopkDensity(f) => (Command::TopkDensity, f),
        Cmd::AboveSum(f) => (Command::AboveSum, f),
        Cmd::AboveDensity(f) => (Command::AboveDensity, f),
        Cmd::Matrix2dSum(f) => (Command::Matrix2dSum, f),
        Cmd::Matrix2dDensity(f) => (Command::Matrix2dDensity, f),
        Cmd::Count(f) => (Command::Count, f),
    }
}

fn query(f: &Flags) -> Result<Query, CliError> {
    let bounds = LengthBounds::new(f.lower, f.upper).map_err(|e| CliError::Usage(format!("--L/--U: {e}")))?;
    let scoring = match &f.scoring {
        Some(s) => ScoringTable::parse(s).map_err(|e| CliError::Usage(format!("--scoring: {e}")))?,
        None => ScoringTable::default(),
    };
    Ok(Query {
        bounds,
        k: f.k,
        threshold: f.threshold,
        strict: f.strict,
        regime: match f.regime {
            Regime::Auto => TopKRegime::Auto,
            Regime::SmallK => TopKRegime::SmallK,
            Regime::LargeK => TopKRegime::LargeK,
        },
        format: f.format,
        scoring,
        stream: f.stream,
        threads: f.threads,
    })
}

fn execute(command: Command, f: &Flags) -> Result<(), CliError> {
    let q = query(f)?;
    let outcome = match f.input.as_deref() {
        Some(p) if p.as_os_str() != "-" => {
            let file = File::open(p).map_err(|e| CliError::Usage(format!("cannot open {}: {e}", p.display())))?;
            run(command, &q, BufReader::new(file))?
        }
        _ => run(command, &q, io::stdin().lock())?,
    };
    let mut out = io::stdout().lock();
    out.write_all(render(&outcome.report, f.output).as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::Usage(format!("cannot write output: {e}")))?;
    if let Some(footer) = outcome.footer(q.format) {
        eprintln!("{footer}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (command, flags) = split(cli.command);
    match execute(command, &flags) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("heavyseg: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
