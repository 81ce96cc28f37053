use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use llvkit_cli::{run_suite, ReportFormat, Scenario};

/// Exact-arithmetic verification toolkit for hyperkähler lattice
/// computations.
#[derive(Parser)]
#[command(name = "llvkit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites from a scenario file.
    Verify {
        /// Scenario file (TOML; rationals as "p/q" strings).
        scenario: PathBuf,
        /// Suites to run (repeatable); overrides the scenario selection.
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Seed override for the randomized draws.
        #[arg(long)]
        seed: Option<u64>,
        /// Bound on random rational numerators/denominators.
        #[arg(long)]
        bound: Option<u32>,
        /// Symmetric powers to exercise (repeatable); 4 and 5 grow fast.
        #[arg(long = "sym-n")]
        sym_n: Vec<u32>,
        /// Output format.
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            scenario,
            suites,
            seed,
            bound,
            sym_n,
            format,
            out,
        } => {
            let mut sc = match Scenario::load(&scenario) {
                Ok(sc) => sc,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            if let Err(e) = sc.apply_overrides(&suites, seed, bound, &sym_n) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            let report = match run_suite(&sc) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let rendered = report.emit(match format {
                FormatArg::Text => ReportFormat::Text,
                FormatArg::Structured => ReportFormat::Structured,
            });
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, rendered) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{rendered}"),
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
