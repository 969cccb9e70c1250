//! Argument parsing and dispatch for the `bazaikin` binary.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use bazaikin::catalog::load_records_as;
use bazaikin::curvature::witness_ordering;
use bazaikin::numeric::open_set::entry_bound;
use bazaikin::numeric::{
    eq1_residual, find_zero_plane, minimize_g, open_set_ordering, verify_open_set_with_tol,
    verify_zero_planes, UnitaryMatrix5,
};
use bazaikin::{
    best_curvature, canonical_class, classify, enumerate_classes, export_records, find_collisions,
    invariants, load_records, representatives, summarize_counts, with_threads, CatalogRecord,
    CollisionKey, Error, FiveTuple, Format,
};
use clap::{Args, Parser, Subcommand};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Preferred angle for the open-set base point.
const DEFAULT_THETA: f64 = 0.02;

#[derive(Debug, Parser)]
#[command(
    name = "bazaikin",
    version,
    about = "Curvature and topology of 13-dimensional Bazaikin spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the curvature type of the natural metric (NN, QP, AP or PC).
    Classify(TupleArg),
    /// Print p1, the order s of H^8 and p2.
    Invariants(TupleArg),
    /// Print the canonical class, its representatives and best curvature.
    Canon(TupleArg),
    /// Enumerate every class up to a bound on p1.
    Enumerate(EnumerateArgs),
    /// Group classes sharing invariants.
    Collisions(CollisionArgs),
    /// Find zero-curvature planes at Haar-random points.
    VerifyZeroPlanes(ZeroPlaneArgs),
    /// Show that no zero-curvature plane exists at the identity.
    VerifyQp(ZeroPlaneArgs),
    /// Check the open set of points with zero-curvature planes.
    VerifyOpenSet(OpenSetArgs),
    /// Convert a catalog between formats, or write a fresh census.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
pub struct TupleArg {
    /// Five odd integers, comma-separated.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_tuple)]
    pub q: FiveTuple,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub p1_max: i64,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "jsonl", value_parser = parse_format)]
    pub format: Format,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CollisionArgs {
    /// Census bound; ignored when `--input` is given.
    #[arg(long, required_unless_present = "input")]
    pub p1_max: Option<i64>,
    /// Existing catalog (JSONL or CSV).
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value = "p1sp2", value_parser = parse_key)]
    pub key: CollisionKey,
    /// Write the groups as JSONL, one array of classes per line.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ZeroPlaneArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_tuple)]
    pub q: FiveTuple,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct OpenSetArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_tuple)]
    pub q: FiveTuple,
    /// Angle of the base point; defaults to 0.02 when admissible, otherwise
    /// half the largest admissible angle.
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// Catalog to convert; a census up to `--p1-max` is computed otherwise.
    #[arg(long, required_unless_present = "p1_max")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub p1_max: Option<i64>,
    #[arg(long, default_value = "jsonl", value_parser = parse_format)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
}

fn parse_tuple(s: &str) -> Result<FiveTuple, String> {
    s.parse::<FiveTuple>().map_err(|e| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse::<Format>().map_err(|e| e.to_string())
}

fn parse_key(s: &str) -> Result<CollisionKey, String> {
    s.parse::<CollisionKey>().map_err(|e| e.to_string())
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::VerificationFailure { .. } => EXIT_VERIFICATION,
                _ => EXIT_INVALID,
            }
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> bazaikin::Result<i32> {
    match command {
        Command::Classify(a) => {
            writeln!(out, "{}", classify(&a.q)?)?;
        }
        Command::Invariants(a) => {
            let inv = invariants(&a.q)?;
            writeln!(out, "p1 = {}", inv.p1)?;
            writeln!(out, "s = {}", inv.s)?;
            writeln!(out, "p2 = {} (mod {})", inv.p2, inv.s)?;
        }
        Command::Canon(a) => {
            let c = canonical_class(&a.q)?;
            writeln!(out, "canon = {}", c.to_spaced())?;
            for r in representatives(&c)? {
                writeln!(out, "rep = {r} ({})", classify(&r)?)?;
            }
            writeln!(out, "best = {}", best_curvature(&c)?)?;
        }
        Command::Enumerate(a) => {
            let records = enumerate_classes(a.p1_max, a.threads)?;
            write_records(&records, a.format, a.out.as_deref(), out)?;
            if a.out.is_some() {
                print_summary(&records, out)?;
            }
        }
        Command::Collisions(a) => {
            let records = match &a.input {
                Some(path) => load_records(BufReader::new(File::open(path)?))?,
                None => enumerate_classes(a.p1_max.expect("required by clap"), a.threads)?,
            };
            let groups = find_collisions(&records, a.key);
            let mixed = groups
                .iter()
                .filter(|g| g.iter().any(|r| r.new_example) && g.iter().any(|r| !r.new_example))
                .count();
            writeln!(out, "classes: {}", records.len())?;
            writeln!(out, "groups: {}", groups.len())?;
            writeln!(out, "groups mixing new and known examples: {mixed}")?;
            if let Some(path) = &a.out {
                let mut w = BufWriter::new(File::create(path)?);
                for g in &groups {
                    serde_json::to_writer(&mut w, g).map_err(std::io::Error::from)?;
                    writeln!(w)?;
                }
                w.flush()?;
            }
        }
        Command::VerifyZeroPlanes(a) => {
            let batch = with_threads(a.threads, || {
                verify_zero_planes(&a.q, a.samples, a.seed, a.tol)
            })??;
            writeln!(out, "q = {}", a.q)?;
            writeln!(
                out,
                "points with a zero-curvature plane: {}/{}",
                batch.eq1_certified + batch.witnesses,
                batch.samples
            )?;
            writeln!(out, "  by condition (1): {}", batch.eq1_certified)?;
            writeln!(
                out,
                "  by a zero of g: {} (max |g| = {:e})",
                batch.witnesses, batch.max_abs_g
            )?;
            if let Some((i, m)) = batch.first_failure {
                return Err(Error::VerificationFailure {
                    reason: format!("no zero-curvature plane found at sample {i}"),
                    matrix: m,
                });
            }
        }
        Command::VerifyQp(a) => verify_qp(&a, out)?,
        Command::VerifyOpenSet(a) => {
            // keep the given order when it already meets the preconditions
            let q = match bazaikin::build_a0(&a.q, 1e-9) {
                Ok(_) => a.q,
                Err(_) => open_set_ordering(&a.q)?,
            };
            let theta = a.theta.unwrap_or_else(|| {
                let max = entry_bound(&q).asin();
                if DEFAULT_THETA < max {
                    DEFAULT_THETA
                } else {
                    max / 2.0
                }
            });
            let r = with_threads(a.threads, || {
                verify_open_set_with_tol(&q, theta, a.samples, a.seed, a.tol)
            })??;
            writeln!(out, "q = {q}, theta = {theta}")?;
            writeln!(out, "base point in V: {}", r.a0.holds())?;
            writeln!(out, "samples in V: {} ({} redrawn)", r.samples, r.rejected)?;
            writeln!(out, "min f_B(I) = {:.6e}", r.min_f_identity)?;
            writeln!(out, "max f_B(h0) = {:.6e}", r.max_f_h0)?;
            writeln!(out, "max |g| at witnesses = {:.3e}", r.max_abs_witness_g)?;
            writeln!(
                out,
                "max row weight minus |s_l|^2 = {:.3e}",
                r.max_row_bound_gap
            )?;
            writeln!(out, "max |B_5j|/|s5| = {:.6e}", r.max_row5_ratio)?;
            writeln!(out, "max middle term = {:.6e}", r.max_middle_term)?;
            writeln!(out, "max q1, q5 partial sum = {:.6e}", r.max_outer_sum)?;
        }
        Command::Export(a) => {
            let records = match &a.input {
                Some(path) => {
                    let text = BufReader::new(File::open(path)?);
                    match path.extension().and_then(|e| e.to_str()) {
                        Some("csv") => load_records_as(text, Format::Csv)?,
                        Some("jsonl") => load_records_as(text, Format::Jsonl)?,
                        _ => load_records(text)?,
                    }
                }
                None => enumerate_classes(a.p1_max.expect("required by clap"), a.threads)?,
            };
            write_records(&records, a.format, a.out.as_deref(), out)?;
        }
    }
    Ok(EXIT_OK)
}

fn verify_qp(a: &ZeroPlaneArgs, out: &mut dyn Write) -> bazaikin::Result<()> {
    let q = witness_ordering(&a.q).ok_or_else(|| {
        Error::InvalidInput(format!(
            "{} has no two disjoint pair sums of the same sign",
            a.q
        ))
    })?;
    let id = UnitaryMatrix5::identity();
    writeln!(
        out,
        "q = {q} (reordered so that q1 + q3 and q2 + q4 share a sign)"
    )?;
    writeln!(out, "eq1 residual at A = I: {}", eq1_residual(&q, &id))?;
    let report = find_zero_plane(&q, &id, a.tol)?;
    if report.has_zero_plane() {
        return Err(Error::VerificationFailure {
            reason: "a zero-curvature plane exists at A = I".into(),
            matrix: id.serialize(),
        });
    }
    let (_, min) = with_threads(a.threads, || minimize_g(&q, &id, a.samples, a.seed))?;
    writeln!(
        out,
        "minimum of g over {} restarts at A = I: {min:.12}",
        a.samples
    )?;
    if min <= a.tol {
        return Err(Error::VerificationFailure {
            reason: format!("minimum {min} of g is not positive"),
            matrix: id.serialize(),
        });
    }
    writeln!(out, "positive minimum: no zero-curvature plane at A = I")?;
    Ok(())
}

fn write_records(
    records: &[CatalogRecord],
    format: Format,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> bazaikin::Result<()> {
    match path {
        Some(p) => export_records(records, format, BufWriter::new(File::create(p)?)),
        None => export_records(records, format, out),
    }
}

fn print_summary(records: &[CatalogRecord], out: &mut dyn Write) -> bazaikin::Result<()> {
    let s = summarize_counts(records);
    writeln!(out, "classes: {}", s.total)?;
    writeln!(out, "new examples: {}", s.new_qp)?;
    for (class, n) in &s.by_class {
        writeln!(out, "  {class}: {n}")?;
    }
    Ok(())
}
