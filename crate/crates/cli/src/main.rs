use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polymin_core::frontend::{build_document, oracle_verify, parse_source, Format, ProblemSource, ResultDocument, VerifyOptions};
use polymin_core::optimizer::{finding_minimum, SolverConfig};
use polymin_core::problem::Problem;
use polymin_core::Error;

#[derive(Parser)]
#[command(name = "polymin", version, about = "Exact minimizers of a polynomial on a basic closed semialgebraic set")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem file and print the minimizers.
    Solve {
        /// Problem file, or `-` for stdin.
        file: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        /// Digits after the decimal point in approximations.
        #[arg(long, default_value_t = 20)]
        precision: usize,
    },
    /// Check a result against the problem by interval arithmetic and sampling.
    Verify {
        file: PathBuf,
        /// JSON result from `solve`; the problem is solved afresh when absent.
        #[arg(long)]
        result: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        /// Sampling box `LO,HI` applied to every coordinate.
        #[arg(long = "box", value_parser = parse_box, allow_hyphen_values = true)]
        bounds: Option<(f64, f64)>,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1 << 15)]
    alpha_bound: i64,
    #[arg(long, default_value_t = 5)]
    max_retries: usize,
    /// Worker threads; 0 uses every core.
    #[arg(long = "parallel", default_value_t = 0)]
    parallelism: usize,
    #[arg(long)]
    dedupe: bool,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            seed: self.seed,
            alpha_bound: self.alpha_bound,
            max_retries: self.max_retries,
            parallelism: self.parallelism,
            dedupe: self.dedupe,
            audit: false,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Text => Format::Text,
        }
    }
}

fn parse_box(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected LO,HI")?;
    let lo: f64 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: f64 = b.trim().parse().map_err(|e| format!("{e}"))?;
    if !(lo < hi) {
        return Err("LO must be below HI".into());
    }
    Ok((lo, hi))
}

fn read_input(path: &Path) -> Result<String, Error> {
    let io = |e: std::io::Error| Error::InvalidInput(format!("{}: {e}", path.display()));
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io)
    }
}

fn load(path: &Path) -> Result<(ProblemSource, Problem), Error> {
    let source = parse_source(&read_input(path)?)?;
    let problem = source.to_problem()?;
    Ok((source, problem))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::InvalidInput(_) => 2,
        Error::RetriesExhausted { .. } | Error::Genericity { .. } => 3,
        Error::NoFeasibleCriticalPoint { .. } => 4,
        _ => 1,
    }
}

/// Writes to stdout; a closed pipe downstream is not an error.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Solve {
            file,
            solver,
            format,
            precision,
        } => {
            let (source, problem) = load(&file)?;
            let fam = finding_minimum(&problem, &solver.config())?;
            let doc = build_document(&fam, &problem, &source, precision)?;
            emit(&format!("{}\n", doc.render(format.into())));
            Ok(true)
        }
        Command::Verify {
            file,
            result,
            solver,
            samples,
            bounds,
            tolerance,
            format,
        } => {
            let (source, problem) = load(&file)?;
            let (fam, claimed) = match result {
                Some(path) => {
                    let doc = ResultDocument::from_json(&read_input(&path)?)?;
                    let claimed: f64 = doc
                        .g_min
                        .parse()
                        .map_err(|_| Error::InvalidInput(format!("bad g_min '{}'", doc.g_min)))?;
                    (doc.to_family(&problem, &source)?, Some(claimed))
                }
                None => (finding_minimum(&problem, &solver.config())?, None),
            };
            let opts = VerifyOptions {
                samples,
                bounds,
                seed: solver.seed,
                claimed_min: claimed,
                tolerance,
            };
            let report = oracle_verify(&problem, &fam, &opts);
            match format {
                OutputFormat::Text => emit(&report.to_text()),
                OutputFormat::Json => emit(&format!("{}\n", serde_json::to_string_pretty(&report).expect("plain data"))),
            }
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("polymin: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
