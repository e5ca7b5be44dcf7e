use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use hecke_core::root_datum::{CartanType, RootDatum};
use hecke_core::verifier::{run_suites, CheckConfig, Status, Suite};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Presentation,
    Morphisms,
    Diagram,
    Display,
    Modules,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Checks the Koszul/Fourier square for affine Hecke algebras over a root datum.
#[derive(Debug, Parser)]
#[command(name = "hecke-verify", version)]
struct Args {
    /// Cartan type letter (A to G).
    #[arg(long = "type", value_name = "LETTER", conflicts_with = "cartan_file", required_unless_present = "cartan_file")]
    kind: Option<String>,

    /// Rank; may be omitted for F and G.
    #[arg(long)]
    rank: Option<usize>,

    /// File holding a Cartan matrix, one row per line.
    #[arg(long, value_name = "PATH")]
    cartan_file: Option<PathBuf>,

    /// Truncation order of the completed graded algebra.
    #[arg(long, default_value_t = 6)]
    order: u32,

    /// Extra working degrees.
    #[arg(long, default_value_t = 2)]
    guard: u32,

    #[arg(long, value_enum, default_value = "all")]
    suite: Vec<SuiteArg>,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long, value_enum, default_value = "text")]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn load_datum(args: &Args) -> Result<RootDatum, String> {
    if let Some(path) = &args.cartan_file {
        return RootDatum::from_cartan_file(path).map_err(|e| e.to_string());
    }
    let letter = args.kind.as_deref().unwrap_or_default();
    let rank = match (args.rank, letter.to_ascii_uppercase().as_str()) {
        (Some(n), _) => n,
        (None, "F") => 4,
        (None, "G") => 2,
        (None, _) => return Err(format!("--rank is required for type {letter}")),
    };
    let ty = CartanType::from_letter(letter, rank).map_err(|e| e.to_string())?;
    RootDatum::from_type(ty).map_err(|e| e.to_string())
}

fn suites(args: &[SuiteArg]) -> Vec<Suite> {
    let mut out = Vec::new();
    for s in args {
        match s {
            SuiteArg::Presentation => out.push(Suite::Presentation),
            SuiteArg::Morphisms => out.push(Suite::Morphisms),
            SuiteArg::Diagram => out.push(Suite::Diagram),
            SuiteArg::Display => out.push(Suite::Display),
            SuiteArg::Modules => out.push(Suite::Modules),
            SuiteArg::All => out.extend(Suite::ALL),
        }
    }
    out
}

fn main() -> ExitCode {
    let args = Args::parse();
    let datum = match load_datum(&args) {
        Ok(d) => Arc::new(d),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cfg = CheckConfig::new(args.order).with_guard(args.guard).with_seed(args.seed);
    let report = run_suites(&datum, &cfg, &suites(&args.suite));
    let rendered = match args.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if report.checks.iter().any(|c| c.status == Status::Error) {
        ExitCode::from(2)
    } else if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
