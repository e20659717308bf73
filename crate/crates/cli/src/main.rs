use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser};
use rootmult::export::Format;
use rootmult_cli::{run, MatrixSource, RunConfig};

/// Root multiplicities of a symmetrizable Kac-Moody algebra up to a height cap.
#[derive(Debug, Parser)]
#[command(name = "rootmult", version)]
#[command(group(ArgGroup::new("source").required(true).args(["matrix", "preset"])))]
struct Args {
    /// JSON file holding the Cartan matrix as a nested integer array.
    #[arg(long, value_name = "FILE")]
    matrix: Option<PathBuf>,
    /// Named matrix: a2, affine-a1, hyp-2-<k>, e10, e11, t-<p>-<q>-<r>.
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
    /// Height cap.
    #[arg(long, short = 'H', value_name = "N")]
    height: u32,
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    format: Format,
    /// Append the chamber Hilbert basis as a JSON line.
    #[arg(long)]
    hilbert_basis: bool,
    /// Append form-evaluation counts as a JSON line.
    #[arg(long)]
    metrics: bool,
    /// Cross-check against the naive full-lattice evaluation.
    #[arg(long)]
    oracle_check: bool,
    /// Allow the oracle check above rank 3 or height 15.
    #[arg(long)]
    force: bool,
    /// Include scaled-real rows (multiplicity 0, nonzero c).
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 1, value_name = "N")]
    workers: usize,
    /// Write the table here instead of standard output.
    #[arg(long, short, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Only report errors.
    #[arg(long, short)]
    quiet: bool,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn main() -> ExitCode {
    let args = Args::parse();
    let level = if args.quiet { "error" } else { "info" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let source = match (args.matrix, args.preset) {
        (Some(path), _) => MatrixSource::File(path),
        (None, Some(name)) => MatrixSource::Preset(name),
        (None, None) => unreachable!("clap enforces one source"),
    };
    let config = RunConfig {
        source,
        cap: args.height,
        format: args.format,
        hilbert_basis: args.hilbert_basis,
        metrics: args.metrics,
        oracle_check: args.oracle_check,
        force: args.force,
        all_rows: args.all,
        workers: args.workers,
        quiet: args.quiet,
    };

    let sink: Box<dyn Write> = match &args.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("rootmult: cannot create {}: {e}", path.display());
                return ExitCode::from(1);
            }
        },
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    };
    match run(&config, sink) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rootmult: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
