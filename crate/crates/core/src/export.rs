//! Table export as CSV or JSON lines, one row per recorded vector, sorted by
//! `(height, lex)`.
//!
//! CSV columns are `coords,height,norm,c,mult,kind` with coordinates joined by
//! `;`. JSON lines carry the same fields plus the canonical `(a,b,...)`
//! rendering under `root`. `c` is always written as `p/q`.

use std::io::Write;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use crate::cartan::CartanMatrix;
use crate::lattice::RootVector;
use crate::metrics::Count;
use crate::oracle::OracleTable;
use crate::peterson::{RootKind, RootTable};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?}, expected csv or json")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub root: String,
    pub coords: Vec<i64>,
    pub height: i64,
    pub norm: i64,
    pub c: String,
    pub mult: Count,
    pub kind: &'static str,
}

impl Row {
    fn new(
        cm: &CartanMatrix,
        v: &RootVector,
        c: &Rational,
        mult: &BigUint,
        kind: RootKind,
    ) -> Self {
        Row {
            root: v.to_string(),
            coords: v.coords().to_vec(),
            height: v.height(),
            norm: cm.norm(v).expect("table vectors match the rank"),
            c: format!("{}/{}", c.numer(), c.denom()),
            mult: Count::from(mult),
            kind: kind.name(),
        }
    }

    fn mult_str(&self) -> String {
        match &self.mult {
            Count::Exact(x) => x.to_string(),
            Count::Decimal(s) => s.clone(),
        }
    }
}

pub fn table_rows(table: &RootTable) -> Vec<Row> {
    table
        .sorted()
        .iter()
        .map(|(v, r)| Row::new(table.cm(), v, &r.c, &r.mult, r.kind))
        .collect()
}

/// Rows with positive multiplicity only.
pub fn root_rows(table: &RootTable) -> Vec<Row> {
    let mut rows = table_rows(table);
    rows.retain(|r| r.kind != RootKind::ScaledReal.name());
    rows
}

pub fn oracle_rows(cm: &CartanMatrix, table: &OracleTable) -> Vec<Row> {
    table
        .nonzero_rows(cm)
        .iter()
        .map(|(v, c, m, kind)| Row::new(cm, v, c, m, *kind))
        .collect()
}

pub fn write_rows<W: Write>(rows: &[Row], format: Format, out: W) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["coords", "height", "norm", "c", "mult", "kind"])?;
            for r in rows {
                w.write_record([
                    r.coords
                        .iter()
                        .map(i64::to_string)
                        .collect::<Vec<_>>()
                        .join(";"),
                    r.height.to_string(),
                    r.norm.to_string(),
                    r.c.clone(),
                    r.mult_str(),
                    r.kind.to_string(),
                ])?;
            }
            w.flush()
        }
        Format::Json => {
            let mut out = out;
            for r in rows {
                serde_json::to_writer(&mut out, r)?;
                out.write_all(b"\n")?;
            }
            out.flush()
        }
    }
}
