use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qrepeater::sweep::{
    self, AlphabetClass, OutputFormat, SweepKind, SweepSpec, TradeoffSpec, DEFAULT_TRADEOFF_NS,
};
use qrepeater::verify::{self, MIN_SAMPLES};
use qrepeater::Error;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Optimal quantum repeater sweeps, trade-off curves and self-checks.
///
/// Output files default to $QREPEATER_OUTPUT_DIR (or the current directory)
/// when --output is not given.
#[derive(Parser)]
#[command(name = "qrepeater", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate F, G and the bound residual over the probe angle θ₂.
    Sweep {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Qudit dimension (--kind qudit).
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// Alphabet class (--kind alphabet).
        #[arg(long = "class", value_enum, default_value_t = Class::A)]
        class: Class,
        /// Alphabet size N (--kind alphabet).
        #[arg(long = "n", default_value_t = 5)]
        n: usize,
        /// Number of θ₂ grid points, endpoints included.
        #[arg(long, default_value_t = 181)]
        steps: usize,
        /// Probe phase φ₂ in radians (--kind qubit).
        #[arg(long, default_value_t = 0.0)]
        phi2: f64,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Emit the bound, class-A and class-B F(G) curves as CSV.
    Tradeoff {
        /// Alphabet sizes, comma separated.
        #[arg(long = "n", value_delimiter = ',')]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 181)]
        steps: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run the self-check battery; exit 0 iff every check passes.
    Verify {
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Qubit,
    Qudit,
    Alphabet,
}

#[derive(Clone, Copy, ValueEnum)]
enum Class {
    A,
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Io(_) => EXIT_IO,
                _ => EXIT_USAGE,
            })
        }
    }
}

fn run(command: Command) -> qrepeater::Result<ExitCode> {
    match command {
        Command::Sweep {
            kind,
            d,
            class,
            n,
            steps,
            phi2,
            output,
            format,
        } => {
            let kind = match kind {
                Kind::Qubit => SweepKind::Qubit,
                Kind::Qudit => SweepKind::Qudit { d },
                Kind::Alphabet => SweepKind::Alphabet {
                    class: match class {
                        Class::A => AlphabetClass::A,
                        Class::B => AlphabetClass::B,
                    },
                    n,
                },
            };
            let summary = sweep::run_sweep(&SweepSpec {
                kind,
                theta2_steps: steps,
                phi2,
                output_path: output,
                format: match format {
                    Format::Csv => OutputFormat::Csv,
                    Format::Json => OutputFormat::Json,
                },
            })?;
            eprintln!(
                "wrote {} rows to {} (max |bound residual| = {:.3e})",
                summary.rows,
                summary.path.display(),
                summary.max_abs_residual
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Tradeoff {
            n_list,
            steps,
            output,
        } => {
            let n_list = if n_list.is_empty() {
                DEFAULT_TRADEOFF_NS.to_vec()
            } else {
                n_list
            };
            let (path, rows) = sweep::run_tradeoff(&TradeoffSpec {
                n_list,
                steps,
                output_path: output,
            })?;
            eprintln!("wrote {rows} rows to {}", path.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            samples,
            seed,
            json,
        } => {
            if samples < MIN_SAMPLES {
                return Err(Error::Usage(format!(
                    "--samples must be at least {MIN_SAMPLES}"
                )));
            }
            let report = verify::run_verify(samples, seed);
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!("{report}");
            }
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY_FAILED)
            })
        }
    }
}
