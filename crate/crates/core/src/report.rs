//! JSONL and CSV encodings of [`CongruenceResult`].

use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::congruences::{CongruenceId, CongruenceResult, Modulus, Value};

pub const CSV_HEADER: [&str; 9] = [
    "id", "p", "a", "extra", "modulus", "lhs", "rhs", "holds", "micros",
];

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// One report line; field order is the wire order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportLine {
    pub id: String,
    pub p: u64,
    pub a: u32,
    pub extra: Vec<i64>,
    pub modulus: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub micros: u64,
}

impl From<&CongruenceResult> for ReportLine {
    fn from(r: &CongruenceResult) -> Self {
        ReportLine {
            id: r.id.name().to_string(),
            p: r.p,
            a: r.a,
            extra: r.extra.clone(),
            modulus: r.modulus.to_string(),
            lhs: r.lhs.to_string(),
            rhs: r.rhs.to_string(),
            holds: r.holds,
            micros: r.micros,
        }
    }
}

impl TryFrom<ReportLine> for CongruenceResult {
    type Error = String;

    fn try_from(l: ReportLine) -> Result<Self, String> {
        let id: CongruenceId = l.id.parse().map_err(|e| format!("{e}"))?;
        let modulus: Modulus = l.modulus.parse().map_err(|e| format!("modulus: {e}"))?;
        let lhs: Value = l.lhs.parse().map_err(|e| format!("lhs: {e}"))?;
        let rhs: Value = l.rhs.parse().map_err(|e| format!("rhs: {e}"))?;
        Ok(CongruenceResult {
            id,
            p: l.p,
            a: l.a,
            extra: l.extra,
            modulus,
            lhs,
            rhs,
            holds: l.holds,
            micros: l.micros,
        })
    }
}

pub fn to_jsonl_line(r: &CongruenceResult) -> String {
    serde_json::to_string(&ReportLine::from(r)).expect("report line serializes")
}

pub fn write_jsonl<W: Write>(mut out: W, results: &[CongruenceResult]) -> io::Result<()> {
    for r in results {
        writeln!(out, "{}", to_jsonl_line(r))?;
    }
    Ok(())
}

pub fn read_jsonl<R: BufRead>(input: R) -> Result<Vec<CongruenceResult>, ReportError> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parse = |reason: String| ReportError::Parse {
            line: i + 1,
            reason,
        };
        let raw: ReportLine = serde_json::from_str(&line).map_err(|e| parse(e.to_string()))?;
        out.push(CongruenceResult::try_from(raw).map_err(parse)?);
    }
    Ok(out)
}

/// `extra` is written as `;`-separated integers.
pub fn write_csv<W: Write>(out: W, results: &[CongruenceResult]) -> Result<(), ReportError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in results {
        let extra: Vec<String> = r.extra.iter().map(i64::to_string).collect();
        w.write_record([
            r.id.name().to_string(),
            r.p.to_string(),
            r.a.to_string(),
            extra.join(";"),
            r.modulus.to_string(),
            r.lhs.to_string(),
            r.rhs.to_string(),
            r.holds.to_string(),
            r.micros.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
