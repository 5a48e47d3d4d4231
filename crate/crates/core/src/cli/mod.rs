//! Command-line front end: `construct`, `verify`, `table` and `spread`.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid parameters or a failed
//! construction precondition, 3 malformed input file.

pub mod codefile;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::arith::{divisors, gcd};
use crate::construct::{
    build_full_type_context, build_spread_context, full_type_max_odfc, full_type_orbit_odfc, spread_type_max_odfc,
    spread_type_orbit_odfc, table_row, FullTypeParams, SpreadContext, TableRow,
};
use crate::error::Error;
use crate::field::{make_field, FiniteField};
use crate::flag::{
    critical_indices, flag_code_distance, flag_distance_bound, is_disjoint, is_odfc_by_characterization,
    is_odfc_by_definition, projected_code, FlagCode,
};
use crate::subspace::{code_distance, is_partial_spread, is_spread, max_distance_bound, SubspaceCode};
use codefile::{Body, CodeFile};

#[derive(Debug, Parser)]
#[command(
    name = "flagcodes",
    version,
    about = "Optimum distance flag codes from spreads and Singer groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a flag code and print a JSON summary.
    #[command(subcommand)]
    Construct(ConstructKind),
    /// Check a code file and print a JSON report.
    Verify { file: PathBuf },
    /// Print an orbit-size table for GF(3)^6 (1) or GF(4)^9 (2).
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
    },
    /// Build the Desarguesian spread of GF(q)^{ks} and its hyperplane code.
    Spread {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
        /// Write the hyperplane code instead of the spread.
        #[arg(long)]
        hyperplanes: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConstructKind {
    /// Orbit of an admissible flag under a subgroup of the embedded Singer group.
    SpreadType {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
        /// Order of the acting subgroup.
        #[arg(long)]
        t: u64,
        /// Union of orbits reaching the spread size.
        #[arg(long)]
        max_size: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full-type code on GF(q)^{2k+1}.
    FullType {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: usize,
        /// Add the two completion flags.
        #[arg(long)]
        max_size: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    e: usize,
    /// Field order, checked against p^e.
    #[arg(long)]
    q: Option<u64>,
}

#[derive(Debug)]
pub enum CliError {
    Io(PathBuf, std::io::Error),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(..) => 1,
            CliError::Lib(Error::Parse { .. }) => 3,
            CliError::Lib(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CliResult<()> {
    match cmd {
        Command::Construct(ConstructKind::SpreadType {
            field,
            k,
            s,
            t,
            max_size,
            out: path,
        }) => {
            let start = Instant::now();
            let f = field.build()?;
            let ctx = build_spread_context(&f, k, s)?;
            let code = if max_size {
                spread_type_max_odfc(&ctx, t)?
            } else {
                spread_type_orbit_odfc(&ctx, t, true)?.code
            };
            let file = CodeFile::flags(field.p, field.e, Some((k, s)), code);
            finish_construct(&file, start, path.as_deref(), out)
        }
        Command::Construct(ConstructKind::FullType {
            field,
            k,
            max_size,
            out: path,
        }) => {
            let start = Instant::now();
            let f = field.build()?;
            let file = if k == 1 {
                // the full type of GF(q)^3 is (1,2), a spread-type case
                let ctx = build_spread_context(&f, 1, 3)?;
                let t = ctx.group.order();
                let code = spread_type_orbit_odfc(&ctx, t, true)?.code;
                CodeFile::flags(field.p, field.e, Some((1, 3)), code)
            } else {
                let ctx = build_full_type_context(&f, k)?;
                let params = FullTypeParams::default_for(&ctx);
                let code = if max_size {
                    full_type_max_odfc(&ctx, &params)?
                } else {
                    full_type_orbit_odfc(&ctx, &params)?.code
                };
                CodeFile::flags(field.p, field.e, None, code)
            };
            finish_construct(&file, start, path.as_deref(), out)
        }
        Command::Verify { file } => {
            let text = std::fs::read_to_string(&file).map_err(|e| CliError::Io(file.clone(), e))?;
            let parsed = CodeFile::parse(&text)?;
            let report = match &parsed.body {
                Body::Flags(c) => serde_json::to_value(verify_flag_code(c)),
                Body::Subspaces(c) => serde_json::to_value(verify_subspace_code(c)),
            }
            .expect("report serializes");
            emit(out, &report)
        }
        Command::Table { which } => {
            let (p, e, k, s) = if which == 1 { (3, 1, 3, 2) } else { (2, 2, 3, 3) };
            let f = make_field(p, e, None)?;
            let ctx = build_spread_context(&f, k, s)?;
            let rows = table(&ctx)?;
            let mut text = format!("{:>8} {:>12} {:>8}\n", "t", "orbit_size", "m");
            for r in &rows {
                text.push_str(&format!("{:>8} {:>12} {:>8}\n", r.t, r.orbit_size, r.m));
            }
            write_out(out, &text)?;
            emit(out, &serde_json::to_value(&rows).expect("rows serialize"))
        }
        Command::Spread {
            field,
            k,
            s,
            hyperplanes,
            out: path,
        } => {
            let f = field.build()?;
            let ctx = build_spread_context(&f, k, s)?;
            let code = if hyperplanes { &ctx.hyperplanes } else { &ctx.spread };
            if let Some(path) = &path {
                let file = CodeFile::subspaces(field.p, field.e, Some((k, s)), code.clone());
                write_file(path, &file.to_text())?;
            }
            emit(
                out,
                &json!({
                    "size": code.len(),
                    "dim": code.dim(),
                    "ambient": code.ambient(),
                    "is_spread": is_spread(code),
                    "stabilizer_order": ctx.q().pow(k as u32) - 1,
                }),
            )
        }
    }
}

impl FieldArgs {
    fn build(&self) -> CliResult<Arc<FiniteField>> {
        let f = make_field(self.p, self.e, None)?;
        if let Some(q) = self.q {
            if q != f.order() {
                return Err(Error::InvalidParameter(format!("--q {q} does not equal p^e = {}", f.order())).into());
            }
        }
        Ok(f)
    }
}

/// Rows for every divisor `t` of `q^n - 1` with `gcd(t, q^k - 1) = gcd(t, q - 1)`.
pub fn table(ctx: &SpreadContext) -> crate::Result<Vec<TableRow>> {
    let q = ctx.q();
    let qk = q.pow(ctx.k as u32) - 1;
    divisors(ctx.group.order())
        .into_iter()
        .filter(|&t| gcd(t, qk) == gcd(t, q - 1))
        .map(|t| table_row(ctx, t))
        .collect()
}

#[derive(Debug, Serialize)]
pub struct ConstructSummary {
    pub size: usize,
    pub distance: usize,
    pub bound: usize,
    pub is_odfc: bool,
    pub runtime_ms: u128,
}

/// Distance is the bound for an ODFC and computed pairwise otherwise.
pub fn summarize(code: &FlagCode, runtime_ms: u128) -> ConstructSummary {
    let bound = flag_distance_bound(code.type_vector());
    let is_odfc = is_odfc_by_characterization(code);
    let distance = if is_odfc { bound } else { flag_code_distance(code) };
    ConstructSummary {
        size: code.len(),
        distance,
        bound,
        is_odfc,
        runtime_ms,
    }
}

fn finish_construct(file: &CodeFile, start: Instant, path: Option<&Path>, out: &mut dyn Write) -> CliResult<()> {
    let Body::Flags(code) = &file.body else {
        unreachable!("constructions produce flag codes")
    };
    if let Some(path) = path {
        write_file(path, &file.to_text())?;
    }
    let summary = summarize(code, start.elapsed().as_millis());
    emit(out, &serde_json::to_value(summary).expect("summary serializes"))
}

#[derive(Debug, Serialize)]
pub struct ProjectedReport {
    pub index: usize,
    pub dim: usize,
    pub size: usize,
    pub distance: usize,
    pub max_distance: usize,
}

#[derive(Debug, Serialize)]
pub struct FlagVerifyReport {
    pub size: usize,
    pub type_vector: Vec<usize>,
    pub ambient: usize,
    pub distance: usize,
    pub bound: usize,
    pub projected: Vec<ProjectedReport>,
    pub disjoint: bool,
    pub index_a: Option<usize>,
    pub index_b: Option<usize>,
    pub odfc_by_definition: bool,
    pub odfc_by_characterization: bool,
    pub agree: bool,
}

pub fn verify_flag_code(c: &FlagCode) -> FlagVerifyReport {
    let ty = c.type_vector();
    let (a, b) = critical_indices(ty);
    let projected = (1..=ty.len())
        .map(|i| {
            let p = projected_code(c, i).expect("index in range");
            ProjectedReport {
                index: i,
                dim: ty.dim_at(i),
                size: p.len(),
                distance: code_distance(&p),
                max_distance: max_distance_bound(ty.ambient(), ty.dim_at(i)).expect("valid dims"),
            }
        })
        .collect();
    let def = is_odfc_by_definition(c);
    let chr = is_odfc_by_characterization(c);
    FlagVerifyReport {
        size: c.len(),
        type_vector: ty.dims().to_vec(),
        ambient: ty.ambient(),
        distance: flag_code_distance(c),
        bound: flag_distance_bound(ty),
        projected,
        disjoint: is_disjoint(c),
        index_a: a,
        index_b: b,
        odfc_by_definition: def,
        odfc_by_characterization: chr,
        agree: def == chr,
    }
}

#[derive(Debug, Serialize)]
pub struct SubspaceVerifyReport {
    pub size: usize,
    pub dim: usize,
    pub ambient: usize,
    pub distance: usize,
    pub max_distance: usize,
    pub is_partial_spread: bool,
    pub is_spread: bool,
}

pub fn verify_subspace_code(c: &SubspaceCode) -> SubspaceVerifyReport {
    SubspaceVerifyReport {
        size: c.len(),
        dim: c.dim(),
        ambient: c.ambient(),
        distance: code_distance(c),
        max_distance: max_distance_bound(c.ambient(), c.dim()).expect("valid dims"),
        is_partial_spread: is_partial_spread(c),
        is_spread: is_spread(c),
    }
}

fn emit(out: &mut dyn Write, value: &serde_json::Value) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).expect("json serializes");
    write_out(out, &format!("{text}\n"))
}

fn write_out(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Io(PathBuf::from("<stdout>"), e))
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
}
