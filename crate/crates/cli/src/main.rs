mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use output::Outcome;

#[derive(Parser, Debug)]
#[command(
    name = "torelli",
    version,
    about = "Exact checks on surface-group graded quotients and Johnson τ"
)]
struct Cli {
    /// Print one JSON object instead of `key: value` lines.
    #[arg(long, global = true)]
    json: bool,

    /// Bound on every truncation degree.
    #[arg(long, global = true, default_value_t = 5)]
    max_degree: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank of the degree-n graded piece of the genus-g surface group.
    Grdim {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
    },
    /// Johnson τ of an endo file, in the sorted Λ³H basis.
    Tau {
        #[arg(long)]
        file: PathBuf,
        /// Validate only modulo degree M+1 instead of exact relator conjugacy.
        #[arg(long, value_name = "M")]
        relaxed: Option<usize>,
    },
    /// Run one of the structural identity checks.
    Check {
        #[arg(value_enum)]
        which: CheckKind,
        #[arg(long)]
        g: usize,
    },
    /// Sp(2g) invariants of H, L or L/H modulo a prime.
    Invariants {
        #[arg(long)]
        g: usize,
        #[arg(long, value_enum)]
        module: ModuleArg,
        #[arg(long)]
        p: u64,
    },
    /// H¹ of a finite group table with coefficients in a finite module.
    H1 {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        module: PathBuf,
    },
    /// Smith normal form divisors of an integer matrix file.
    Snf {
        #[arg(long)]
        file: PathBuf,
    },
    /// Corpus maintenance.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CheckKind {
    Jacobi,
    Ci,
    Decomp,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModuleArg {
    #[value(name = "H")]
    H,
    #[value(name = "L")]
    L,
    #[value(name = "LmodH")]
    LmodH,
}

#[derive(Subcommand, Debug)]
enum CorpusAction {
    /// Recompute every τ and compare with the frozen values.
    Verify {
        #[arg(long)]
        path: PathBuf,
    },
    /// Recompute every τ and list differences; `--write` replaces the file.
    Regenerate {
        #[arg(long)]
        path: PathBuf,
        #[arg(long)]
        write: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = commands::run(&cli.command, cli.max_degree);
    let code = match outcome {
        Ok(out) => {
            print!("{}", if cli.json { out.to_json() } else { out.to_text() });
            out.exit_code()
        }
        Err(err) => {
            let out = Outcome::from_error(commands::name(&cli.command), &err);
            if let Some(out) = out {
                print!("{}", if cli.json { out.to_json() } else { out.to_text() });
                out.exit_code()
            } else {
                eprintln!("error: {err}");
                2
            }
        }
    };
    eprintln!("elapsed_ms: {}", start.elapsed().as_millis());
    ExitCode::from(code)
}
