//! Batch front end: build a Cartan matrix, run the engine, write the table.

use std::io::Write;
use std::path::PathBuf;

use log::info;
use rootmult::cartan::MatrixFileError;
use rootmult::chamber::hilbert_basis;
use rootmult::export::{oracle_rows, root_rows, table_rows, write_rows, Format};
use rootmult::metrics::counter_snapshot;
use rootmult::oracle::naive_compute;
use rootmult::peterson::compute_all_with;
use rootmult::presets::{preset, NAMES};
use rootmult::{CartanMatrix, EngineOptions, Error, KillingCounter};

/// Largest rank and cap the oracle check accepts without `force`.
pub const ORACLE_MAX_RANK: usize = 3;
pub const ORACLE_MAX_CAP: u32 = 15;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixSource {
    File(PathBuf),
    Preset(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub source: MatrixSource,
    pub cap: u32,
    pub format: Format,
    pub hilbert_basis: bool,
    pub metrics: bool,
    pub oracle_check: bool,
    /// Lift the oracle size limits.
    pub force: bool,
    /// Also write scaled-real rows (`n * alpha`, multiplicity 0).
    pub all_rows: bool,
    pub workers: usize,
    pub quiet: bool,
}

impl RunConfig {
    pub fn new(source: MatrixSource, cap: u32) -> Self {
        RunConfig {
            source,
            cap,
            format: Format::Csv,
            hilbert_basis: false,
            metrics: false,
            oracle_check: false,
            force: false,
            all_rows: false,
            workers: 1,
            quiet: false,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    MatrixFile(#[from] MatrixFileError),
    #[error("unknown preset {0:?} (known: {list})", list = NAMES.join(", "))]
    UnknownPreset(String),
    #[error("height cap must be at least 1")]
    ZeroCap,
    #[error("{0}")]
    InvalidMatrix(Error),
    #[error("oracle disagrees with the engine: {0}")]
    OracleMismatch(String),
    #[error("{0}")]
    Integrality(Error),
    #[error("oracle check refused for rank {rank} and cap {cap} (limits {ORACLE_MAX_RANK} and {ORACLE_MAX_CAP}); pass --force")]
    OracleRefused { rank: usize, cap: u32 },
    #[error("{0}")]
    Engine(Error),
    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::MatrixFile(_) | CliError::UnknownPreset(_) => 2,
            CliError::InvalidMatrix(_) => 3,
            CliError::OracleMismatch(_) => 4,
            CliError::Integrality(_) => 5,
            CliError::ZeroCap
            | CliError::OracleRefused { .. }
            | CliError::Engine(_)
            | CliError::Io(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotGcm(_) | Error::NotSymmetrizable(_) => CliError::InvalidMatrix(e),
            Error::NonIntegerMultiplicity { .. } => CliError::Integrality(e),
            other => CliError::Engine(other),
        }
    }
}

pub fn load_matrix(source: &MatrixSource) -> Result<CartanMatrix, CliError> {
    let rows = match source {
        MatrixSource::File(path) => CartanMatrix::from_file(path)?,
        MatrixSource::Preset(name) => {
            preset(name).ok_or_else(|| CliError::UnknownPreset(name.clone()))?
        }
    };
    Ok(CartanMatrix::build(&rows)?)
}

/// Runs the engine and writes the table, then any requested JSON lines
/// (`{"hilbert_basis": ...}`, `{"metrics": ...}`) to `out`.
pub fn run<W: Write>(config: &RunConfig, mut out: W) -> Result<(), CliError> {
    if config.cap == 0 {
        return Err(CliError::ZeroCap);
    }
    let cm = load_matrix(&config.source)?;
    let d = cm.rank();
    if config.oracle_check && !config.force && (d > ORACLE_MAX_RANK || config.cap > ORACLE_MAX_CAP)
    {
        return Err(CliError::OracleRefused {
            rank: d,
            cap: config.cap,
        });
    }

    let counter = KillingCounter::new();
    let opts = EngineOptions {
        workers: config.workers.max(1),
    };
    let table = compute_all_with(&cm, config.cap, &opts, &counter)?;
    let rows = if config.all_rows {
        table_rows(&table)
    } else {
        root_rows(&table)
    };
    if !config.quiet {
        info!("{} rows up to height {}", rows.len(), config.cap);
    }

    if config.oracle_check {
        let oracle = naive_compute(&cm, config.cap, &counter)?;
        let mine = table_rows(&table);
        let theirs = oracle_rows(&cm, &oracle);
        if mine != theirs {
            return Err(CliError::OracleMismatch(describe_mismatch(&mine, &theirs)));
        }
        if !config.quiet {
            info!("oracle agrees on {} rows", mine.len());
        }
    }

    write_rows(&rows, config.format, &mut out)?;
    if config.hilbert_basis {
        let hb = hilbert_basis(&cm)?;
        writeln!(out, "{{\"hilbert_basis\":{}}}", hb.to_json())?;
    }
    if config.metrics {
        let report = counter_snapshot(&counter, d as u32, config.cap);
        writeln!(out, "{{\"metrics\":{}}}", report.to_json())?;
    }
    out.flush()?;
    Ok(())
}

fn describe_mismatch(mine: &[rootmult::export::Row], theirs: &[rootmult::export::Row]) -> String {
    for (a, b) in mine.iter().zip(theirs) {
        if a != b {
            return format!(
                "engine has {} c={} mult={:?}, oracle has {} c={} mult={:?}",
                a.root, a.c, a.mult, b.root, b.c, b.mult
            );
        }
    }
    format!(
        "engine has {} rows, oracle has {}",
        mine.len(),
        theirs.len()
    )
}
