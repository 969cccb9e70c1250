//! JSONL and CSV persistence for catalog records.
//!
//! CSV layout (`;`-delimited, fixed column order):
//!
//! ```text
//! canon;p1;s;p2;curvature;new_example;reps
//! 7 1 1 -3 -3 -3;39;11;8;QP;true;7 1 1 -3 -3|3 3 3 -1 -1|3 3 3 -1 -7
//! ```

use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::catalog::CatalogRecord;
use crate::curvature::CurvatureClass;
use crate::equivalence::CanonicalClass;
use crate::error::{Error, Result};
use crate::tuple::{FiveTuple, SixTuple};

const CSV_HEADER: [&str; 7] = ["canon", "p1", "s", "p2", "curvature", "new_example", "reps"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Jsonl,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "jsonl" => Ok(Format::Jsonl),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::InvalidInput(format!(
                "unknown format {s:?} (expected jsonl or csv)"
            ))),
        }
    }
}

pub fn export_records<W: Write>(
    records: &[CatalogRecord],
    format: Format,
    mut out: W,
) -> Result<()> {
    match format {
        Format::Jsonl => {
            for r in records {
                serde_json::to_writer(&mut out, r).map_err(std::io::Error::from)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .delimiter(b';')
                .from_writer(&mut out);
            w.write_record(CSV_HEADER).map_err(csv_io)?;
            for r in records {
                w.write_record(csv_row(r)).map_err(csv_io)?;
            }
            w.flush()?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Loads records, choosing the format from the first non-empty line.
pub fn load_records<R: BufRead>(mut input: R) -> Result<Vec<CatalogRecord>> {
    let mut text = String::new();
    input.read_to_string(&mut text)?;
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    let format = if first.trim_start().starts_with('{') {
        Format::Jsonl
    } else {
        Format::Csv
    };
    load_str(&text, format)
}

pub fn load_records_as<R: BufRead>(mut input: R, format: Format) -> Result<Vec<CatalogRecord>> {
    let mut text = String::new();
    input.read_to_string(&mut text)?;
    load_str(&text, format)
}

fn load_str(text: &str, format: Format) -> Result<Vec<CatalogRecord>> {
    match format {
        Format::Jsonl => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                let rec: CatalogRecord =
                    serde_json::from_str(l).map_err(|e| parse_err(i + 1, e))?;
                rec.validate().map_err(|e| parse_err(i + 1, e))?;
                Ok(rec)
            })
            .collect(),
        Format::Csv => {
            let mut rdr = csv::ReaderBuilder::new()
                .delimiter(b';')
                .has_headers(false)
                .flexible(true)
                .from_reader(text.as_bytes());
            let mut records = vec![];
            let mut saw_header = false;
            for row in rdr.records() {
                let row = row.map_err(|e| {
                    let line = e.position().map_or(0, |p| p.line() as usize);
                    parse_err(line, e)
                })?;
                let line = row.position().map_or(0, |p| p.line() as usize);
                if !saw_header {
                    if row.iter().ne(CSV_HEADER) {
                        return Err(parse_err(line, "missing or unexpected CSV header"));
                    }
                    saw_header = true;
                    continue;
                }
                let rec = parse_row(&row).map_err(|e| parse_err(line, e))?;
                rec.validate().map_err(|e| parse_err(line, e))?;
                records.push(rec);
            }
            Ok(records)
        }
    }
}

fn csv_row(r: &CatalogRecord) -> [String; 7] {
    [
        r.canon.to_spaced(),
        r.p1.to_string(),
        r.s.to_string(),
        r.p2.to_string(),
        r.curvature.code().to_string(),
        r.new_example.to_string(),
        r.reps
            .iter()
            .map(|q| q.entries().map(|x| x.to_string()).join(" "))
            .collect::<Vec<_>>()
            .join("|"),
    ]
}

fn parse_row(row: &csv::StringRecord) -> Result<CatalogRecord> {
    if row.len() != CSV_HEADER.len() {
        return Err(Error::InvalidInput(format!(
            "expected 7 fields, got {}",
            row.len()
        )));
    }
    let int = |i: usize| -> Result<i64> {
        row[i].trim().parse().map_err(|_| {
            Error::InvalidInput(format!(
                "{} is not an integer: {:?}",
                CSV_HEADER[i], &row[i]
            ))
        })
    };
    let canon = CanonicalClass::from_canonical(SixTuple::new(spaced::<6>(&row[0])?)?)?;
    let new_example = match row[5].trim() {
        "true" => true,
        "false" => false,
        other => {
            return Err(Error::InvalidInput(format!(
                "new_example must be true or false, got {other:?}"
            )))
        }
    };
    let reps = row[6]
        .split('|')
        .map(|g| FiveTuple::new(spaced::<5>(g)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(CatalogRecord {
        canon,
        p1: int(1)?,
        s: int(2)?,
        p2: int(3)?,
        curvature: row[4].trim().parse::<CurvatureClass>()?,
        new_example,
        reps,
    })
}

fn spaced<const N: usize>(s: &str) -> Result<[i64; N]> {
    let xs: Vec<i64> = s
        .split_whitespace()
        .map(|x| {
            x.parse()
                .map_err(|_| Error::InvalidInput(format!("not an integer: {x:?}")))
        })
        .collect::<Result<_>>()?;
    xs.try_into().map_err(|v: Vec<i64>| {
        Error::InvalidInput(format!("expected {N} integers, got {}", v.len()))
    })
}

fn parse_err(line: usize, e: impl std::fmt::Display) -> Error {
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

fn csv_io(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}
