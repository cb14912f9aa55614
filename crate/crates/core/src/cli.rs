//! The `inscribed` command-line front end.
//!
//! [`run`] parses arguments, executes one subcommand and writes its report to
//! the given sinks, returning the process exit code:
//! 0 success, 1 verification mismatch (or a numerical failure),
//! 2 usage or validation error, 3 enumeration cap exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use crate::counting::{big_json, CountBreakdown, OrbitCounter, PartitionDiagnosis};
use crate::exec::Exec;
use crate::geometry::{
    audit_realizability, banach_iterate, solve_all, solve_periodic_orbit, BanachResult,
    OrbitPolyline, PolygonGeometry, RealizabilityRow, Tolerances, CLOSURE_TOL, FEASIBILITY_EPS,
};
use crate::oracle::{Oracle, SideWord, DEFAULT_ENUMERATION_CAP};
use crate::svg::{self, Layout, SvgOptions};
use crate::transition::TransitionSystem;
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

const DEFAULT_BANACH_TOL: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(
    name = "inscribed",
    version,
    about = "Count, enumerate and construct periodic orbits of the perpendicular side-to-side map in odd-sided regular polygons"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of n-periodic orbits through side 1 of the (2k+1)-gon.
    Count(CountArgs),
    /// Closed walks, pure blocks and orbit counts for n = 2..=max-n.
    Table(TableArgs),
    /// Canonical side words of all n-periodic orbits, one per line.
    Sequences(SequencesArgs),
    /// Solve a single side word for its periodic orbit.
    Construct(ConstructArgs),
    /// Solve and draw every n-periodic orbit.
    Gallery(GalleryArgs),
    /// Compare the counting formula against exhaustive enumeration.
    Verify(VerifyArgs),
    /// Check which canonical side words are realizable as orbits.
    Audit(AuditArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LayoutArg {
    Grid,
    Overlay,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Polygon parameter; the polygon has 2k+1 sides.
    #[arg(short = 'k', long = "k")]
    pub k: u32,
    /// Period.
    #[arg(short = 'n', long = "n")]
    pub n: u64,
    /// Include every term of the formula.
    #[arg(long)]
    pub breakdown: bool,
    /// Also count by exhaustive enumeration and compare.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub max_oracle_n: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(short = 'k', long = "k")]
    pub k: u32,
    #[arg(long)]
    pub max_n: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SequencesArgs {
    #[arg(short = 'k', long = "k")]
    pub k: u32,
    #[arg(short = 'n', long = "n")]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub max_oracle_n: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct GeometryTolArgs {
    /// Side parameters must lie in [eps, 1 - eps].
    #[arg(long, default_value_t = FEASIBILITY_EPS)]
    pub feasibility_tol: f64,
    #[arg(long, default_value_t = CLOSURE_TOL)]
    pub closure_tol: f64,
}

impl GeometryTolArgs {
    fn tolerances(&self) -> Result<Tolerances, CliError> {
        for (name, v) in [
            ("feasibility-tol", self.feasibility_tol),
            ("closure-tol", self.closure_tol),
        ] {
            if !(v > 0.0 && v < 0.5) {
                return Err(CliError::Usage(format!(
                    "--{name} must lie in (0, 0.5), got {v}"
                )));
            }
        }
        Ok(Tolerances {
            feasibility: self.feasibility_tol,
            closure: self.closure_tol,
        })
    }
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(short = 'k', long = "k")]
    pub k: u32,
    /// Comma-separated 1-based side labels, e.g. 1,2,3.
    #[arg(long)]
    pub word: String,
    /// Write a figure of the orbit here.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[command(flatten)]
    pub tol: GeometryTolArgs,
    /// Stopping gap for the backward iteration.
    #[arg(long, default_value_t = DEFAULT_BANACH_TOL)]
    pub banach_tol: f64,
    #[arg(long, default_value_t = 10_000)]
    pub max_iter: usize,
    #[arg(long)]
    pub no_labels: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct GalleryArgs {
    #[arg(short = 'k', long = "k")]
    pub k: u32,
    #[arg(short = 'n', long = "n")]
    pub n: usize,
    /// Output figure.
    #[arg(long)]
    pub svg: PathBuf,
    #[arg(long, value_enum, default_value = "grid")]
    pub layout: LayoutArg,
    /// Panels per row for the grid layout (default: about the square root).
    #[arg(long)]
    pub columns: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub max_oracle_n: usize,
    #[command(flatten)]
    pub tol: GeometryTolArgs,
    #[arg(long)]
    pub no_labels: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(short = 'k', long = "k")]
    pub k: u32,
    #[arg(long)]
    pub max_n: usize,
    #[arg(long, default_value_t = 3)]
    pub min_n: usize,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub max_oracle_n: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(short = 'k', long = "k")]
    pub k: u32,
    #[arg(long)]
    pub max_n: usize,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub max_oracle_n: usize,
    #[command(flatten)]
    pub tol: GeometryTolArgs,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Resource(String),
    Failure(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Inadmissible { .. } => CliError::Usage(e.to_string()),
            Error::ResourceCap { .. } => CliError::Resource(e.to_string()),
            Error::SingularMap { .. } | Error::NoConvergence { .. } => {
                CliError::Failure(e.to_string())
            }
        }
    }
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Resource(_) => EXIT_RESOURCE,
            CliError::Failure(_) | CliError::Io(_) => EXIT_MISMATCH,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Resource(m) | CliError::Failure(m) | CliError::Io(m) => {
                m
            }
        }
    }
}

/// What a command produced: the report text, its exit code, and warnings.
struct Outcome {
    report: String,
    code: i32,
    warnings: Vec<String>,
}

impl Outcome {
    fn ok(report: String) -> Self {
        Outcome {
            report,
            code: EXIT_OK,
            warnings: Vec::new(),
        }
    }
}

struct Style {
    color: bool,
}

impl Style {
    fn status(&self, ok: bool) -> String {
        match (ok, self.color) {
            (true, true) => "\x1b[32mOK\x1b[0m".to_string(),
            (false, true) => "\x1b[31mMISMATCH\x1b[0m".to_string(),
            (true, false) => "OK".to_string(),
            (false, false) => "MISMATCH".to_string(),
        }
    }
}

/// Runs the CLI without colored output.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_color(args, stdout, stderr, false)
}

pub fn run_with_color<I, T>(
    args: I,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    color: bool,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    let style = Style { color };
    let (result, out_path) = match &config.command {
        Command::Count(a) => (cmd_count(a), a.common.out.clone()),
        Command::Table(a) => (cmd_table(a), a.common.out.clone()),
        Command::Sequences(a) => (cmd_sequences(a), a.common.out.clone()),
        Command::Construct(a) => (cmd_construct(a), a.common.out.clone()),
        Command::Gallery(a) => (cmd_gallery(a), None),
        Command::Verify(a) => (cmd_verify(a, &style), a.common.out.clone()),
        Command::Audit(a) => (cmd_audit(a), a.common.out.clone()),
    };
    match result {
        Ok(outcome) => {
            for w in &outcome.warnings {
                let _ = writeln!(stderr, "{w}");
            }
            let written = match out_path {
                Some(path) => write_file(&path, &outcome.report),
                None => stdout
                    .write_all(outcome.report.as_bytes())
                    .map_err(|e| CliError::Io(e.to_string())),
            };
            match written {
                Ok(()) => outcome.code,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {}", e.message());
                    e.code()
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            e.code()
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Fixed-point decimal without a negative zero.
fn fixed(v: f64, digits: usize) -> String {
    let s = format!("{v:.digits$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn csv_text(rows: Vec<Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(&row)
            .map_err(|e| CliError::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

fn json_text<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

const CONVENTION_NOTE: &str = "n = 2 is the base value of the counting recursion: the two side \
sequences alternating between side 1 and one other side converge to a polygon vertex, so no \
genuine 2-periodic orbit exists and exhaustive enumeration reports 0";

fn breakdown_formula_line(b: &CountBreakdown) -> String {
    let join = |v: Vec<String>| {
        if v.len() == 1 {
            v[0].clone()
        } else {
            format!("({})", v.join(" + "))
        }
    };
    let mut line = String::new();
    let mixed: Vec<String> = b
        .mixed_terms
        .iter()
        .map(|t| t.contribution.to_string())
        .collect();
    let equal: Vec<String> = b
        .equal_part_terms
        .iter()
        .map(|t| t.contribution.to_string())
        .collect();
    if !mixed.is_empty() {
        let _ = write!(line, "{} + ", join(mixed));
    }
    line.push_str(&join(equal));
    if !b.subtraction_terms.is_empty() {
        let subs: Vec<String> = b
            .subtraction_terms
            .iter()
            .map(|t| t.orbits.to_string())
            .collect();
        let _ = write!(line, " - {}", join(subs));
    }
    let _ = write!(line, " = {}", b.total);
    line
}

fn breakdown_text(b: &CountBreakdown) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "mixed partitions (at least two distinct block sizes):");
    if b.mixed_terms.is_empty() {
        let _ = writeln!(s, "  (none)");
    }
    for t in &b.mixed_terms {
        let _ = writeln!(
            s,
            "  {:<14} arrangements {:>6}  pure product {:>8}  contribution {}",
            t.partition.to_string(),
            t.necklaces.to_string(),
            t.pure_product.to_string(),
            t.contribution
        );
    }
    let _ = writeln!(s, "  subtotal {}", b.mixed_total());
    let _ = writeln!(s, "equal blocks (divisor d, n/d blocks of length d):");
    for t in &b.equal_part_terms {
        let _ = writeln!(
            s,
            "  d = {:<4} pure blocks {:>6}  contribution {}",
            t.divisor,
            t.pure_kinds.to_string(),
            t.contribution
        );
    }
    let _ = writeln!(s, "  subtotal {}", b.equal_part_total());
    let _ = writeln!(s, "subtracted shorter periods (1 < d < n):");
    if b.subtraction_terms.is_empty() {
        let _ = writeln!(s, "  (none)");
    }
    for t in &b.subtraction_terms {
        let _ = writeln!(s, "  d = {:<4} orbits {}", t.divisor, t.orbits);
    }
    let _ = writeln!(s, "  subtotal {}", b.subtraction_total());
    let _ = writeln!(s, "formula: {}", breakdown_formula_line(b));
    s
}

#[derive(Serialize)]
struct CountJson<'a> {
    k: u32,
    sides: u32,
    n: u64,
    #[serde(with = "big_json")]
    count: BigUint,
    #[serde(skip_serializing_if = "Option::is_none")]
    breakdown: Option<&'a CountBreakdown>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<u64>,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    matches: Option<bool>,
}

fn cmd_count(a: &CountArgs) -> Result<Outcome, CliError> {
    let mut counter = OrbitCounter::new(a.k)?;
    let sides = counter.system().sides();
    if a.n < 2 {
        return Err(CliError::Usage(format!(
            "period n must be at least 2, got {}",
            a.n
        )));
    }
    if a.breakdown && a.common.format == Format::Csv {
        return Err(CliError::Usage(
            "--breakdown is available in text and json formats only".into(),
        ));
    }
    let oracle = if a.oracle {
        let n = usize::try_from(a.n).map_err(|_| CliError::Usage("n is too large".into()))?;
        Some(Oracle::new(a.k)?.with_cap(a.max_oracle_n).count(n)?)
    } else {
        None
    };
    let count = counter.count(a.n)?.count;
    let breakdown = if a.breakdown && a.n >= 3 {
        Some(counter.breakdown(a.n)?)
    } else {
        None
    };
    let convention = a.n == 2;
    let matches = match oracle {
        Some(o) if !convention => Some(BigUint::from(o) == count),
        _ => None,
    };
    // text reports carry the note inline; structured formats keep their schema
    let warnings = if convention && a.common.format != Format::Text {
        vec![format!("note: {CONVENTION_NOTE}")]
    } else {
        Vec::new()
    };

    let report = match a.common.format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "sides: {sides} (k = {})", a.k);
            let _ = writeln!(s, "period: {}", a.n);
            let _ = writeln!(s, "orbits: {count}");
            if let Some(b) = &breakdown {
                s.push_str(&breakdown_text(b));
            }
            if let Some(o) = oracle {
                let verdict = match matches {
                    Some(true) => "match",
                    Some(false) => "MISMATCH",
                    None => "not compared (base convention)",
                };
                let _ = writeln!(s, "oracle: {o} ({verdict})");
            }
            if convention {
                let _ = writeln!(s, "note: {CONVENTION_NOTE}");
            }
            s
        }
        Format::Json => json_text(&CountJson {
            k: a.k,
            sides,
            n: a.n,
            count,
            breakdown: breakdown.as_ref(),
            oracle,
            matches,
        })?,
        Format::Csv => csv_text(vec![
            vec![
                "k".into(),
                "sides".into(),
                "n".into(),
                "count".into(),
                "oracle".into(),
                "match".into(),
            ],
            vec![
                a.k.to_string(),
                sides.to_string(),
                a.n.to_string(),
                count.to_string(),
                oracle.map(|o| o.to_string()).unwrap_or_default(),
                matches.map(|m| m.to_string()).unwrap_or_default(),
            ],
        ])?,
    };
    Ok(Outcome {
        report,
        code: if matches == Some(false) {
            EXIT_MISMATCH
        } else {
            EXIT_OK
        },
        warnings,
    })
}

#[derive(Serialize)]
struct TableRow {
    n: u64,
    #[serde(with = "big_json")]
    closed_walks: BigUint,
    #[serde(with = "big_json")]
    pure_orbits: BigUint,
    #[serde(with = "big_json")]
    orbits: BigUint,
}

#[derive(Serialize)]
struct TableJson {
    k: u32,
    sides: u32,
    rows: Vec<TableRow>,
}

fn cmd_table(a: &TableArgs) -> Result<Outcome, CliError> {
    let system = TransitionSystem::new(a.k)?;
    if a.max_n < 2 {
        return Err(CliError::Usage(format!(
            "--max-n must be at least 2, got {}",
            a.max_n
        )));
    }
    let mut counter = OrbitCounter::new(a.k)?;
    let adjacency = system.adjacency_matrix();
    let mut power = adjacency.clone();
    let mut rows = Vec::new();
    for n in 1..=a.max_n {
        if n >= 2 {
            rows.push(TableRow {
                n,
                closed_walks: power[(0, 0)].clone(),
                pure_orbits: counter.pure_orbits(n),
                orbits: counter.count(n)?.count,
            });
        }
        if n < a.max_n {
            power = power.mul(&adjacency);
        }
    }
    let report = match a.common.format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "sides: {} (k = {})", system.sides(), a.k);
            let cells: Vec<[String; 4]> = rows
                .iter()
                .map(|r| {
                    [
                        r.n.to_string(),
                        r.closed_walks.to_string(),
                        r.pure_orbits.to_string(),
                        r.orbits.to_string(),
                    ]
                })
                .collect();
            let headers = ["n", "closed_walks", "pure_orbits", "orbits"];
            let widths: Vec<usize> = (0..4)
                .map(|c| {
                    cells
                        .iter()
                        .map(|r| r[c].len())
                        .chain([headers[c].len()])
                        .max()
                        .unwrap()
                })
                .collect();
            let line = |cols: [&str; 4]| {
                let parts: Vec<String> = cols
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect();
                parts.join("  ")
            };
            let _ = writeln!(s, "{}", line(headers));
            for r in &cells {
                let _ = writeln!(s, "{}", line([&r[0], &r[1], &r[2], &r[3]]));
            }
            s
        }
        Format::Json => json_text(&TableJson {
            k: a.k,
            sides: system.sides(),
            rows,
        })?,
        Format::Csv => {
            let mut out = vec![vec![
                "n".to_string(),
                "closed_walks".to_string(),
                "pure_orbits".to_string(),
                "orbits".to_string(),
            ]];
            out.extend(rows.iter().map(|r| {
                vec![
                    r.n.to_string(),
                    r.closed_walks.to_string(),
                    r.pure_orbits.to_string(),
                    r.orbits.to_string(),
                ]
            }));
            csv_text(out)?
        }
    };
    Ok(Outcome::ok(report))
}

#[derive(Serialize)]
struct SequencesJson {
    k: u32,
    sides: u32,
    n: usize,
    count: usize,
    words: Vec<Vec<u32>>,
}

fn cmd_sequences(a: &SequencesArgs) -> Result<Outcome, CliError> {
    let oracle = Oracle::new(a.k)?.with_cap(a.max_oracle_n);
    let words = oracle.canonical_orbits(a.n)?;
    let report = match a.common.format {
        Format::Text => words.iter().map(|w| format!("{w}\n")).collect(),
        Format::Json => json_text(&SequencesJson {
            k: a.k,
            sides: oracle.system().sides(),
            n: a.n,
            count: words.len(),
            words: words.iter().map(|w| w.labels().to_vec()).collect(),
        })?,
        Format::Csv => {
            let mut rows = vec![vec!["index".to_string(), "word".to_string()]];
            rows.extend(
                words
                    .iter()
                    .enumerate()
                    .map(|(i, w)| vec![(i + 1).to_string(), w.to_string()]),
            );
            csv_text(rows)?
        }
    };
    Ok(Outcome::ok(report))
}

#[derive(Serialize)]
struct ConstructJson<'a> {
    k: u32,
    sides: u32,
    word: Vec<u32>,
    fixed_point: f64,
    return_slope: f64,
    expected_slope_magnitude: f64,
    banach: Option<BanachResult>,
    params: &'a [f64],
    points: &'a [crate::geometry::Point],
    closure_residual: f64,
    feasible: bool,
    degenerate_vertex: bool,
    tolerances: Tolerances,
    banach_tol: f64,
}

fn svg_options(no_labels: bool) -> SvgOptions {
    SvgOptions {
        show_labels: !no_labels,
        ..SvgOptions::default()
    }
}

fn cmd_construct(a: &ConstructArgs) -> Result<Outcome, CliError> {
    let tol = a.tol.tolerances()?;
    if !(a.banach_tol > 0.0) {
        return Err(CliError::Usage(format!(
            "--banach-tol must be positive, got {}",
            a.banach_tol
        )));
    }
    let geom = PolygonGeometry::new(a.k, 1.0)?;
    let word: SideWord = a.word.parse()?;
    word.check_admissible(geom.system())?;
    let orbit = solve_periodic_orbit(&geom, &word, &tol)?;
    let banach = banach_iterate(&geom, &word, 0.5, a.banach_tol, a.max_iter).ok();
    let expected = geom.contraction_factor().powi(-(word.len() as i32));
    if let Some(path) = &a.svg {
        write_file(
            path,
            &svg::emit_svg(
                &geom,
                std::slice::from_ref(&orbit),
                &svg_options(a.no_labels),
            ),
        )?;
    }
    let mut warnings = Vec::new();
    if banach.is_none() {
        warnings.push(format!(
            "warning: backward iteration did not reach the {:e} gap in {} iterations",
            a.banach_tol, a.max_iter
        ));
    }
    let report = match a.common.format {
        Format::Text => construct_text(&geom, &orbit, banach, expected, &tol, a.banach_tol),
        Format::Json => json_text(&ConstructJson {
            k: a.k,
            sides: geom.sides,
            word: word.labels().to_vec(),
            fixed_point: orbit.fixed_point(),
            return_slope: orbit.return_map.slope,
            expected_slope_magnitude: expected,
            banach,
            params: &orbit.params,
            points: &orbit.points,
            closure_residual: orbit.closure_residual,
            feasible: orbit.feasible,
            degenerate_vertex: orbit.degenerate_vertex,
            tolerances: tol,
            banach_tol: a.banach_tol,
        })?,
        Format::Csv => {
            let mut rows = vec![vec![
                "index".to_string(),
                "side".to_string(),
                "t".to_string(),
                "x".to_string(),
                "y".to_string(),
            ]];
            for (i, ((&side, &t), p)) in orbit
                .word
                .labels()
                .iter()
                .zip(&orbit.params)
                .zip(&orbit.points)
                .enumerate()
            {
                rows.push(vec![
                    (i + 1).to_string(),
                    side.to_string(),
                    fixed(t, 12),
                    fixed(p.x, 12),
                    fixed(p.y, 12),
                ]);
            }
            csv_text(rows)?
        }
    };
    Ok(Outcome {
        report,
        code: EXIT_OK,
        warnings,
    })
}

fn construct_text(
    geom: &PolygonGeometry,
    orbit: &OrbitPolyline,
    banach: Option<BanachResult>,
    expected: f64,
    tol: &Tolerances,
    banach_tol: f64,
) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "sides: {} (k = {}), circumradius {}",
        geom.sides, geom.k, geom.radius
    );
    let _ = writeln!(s, "word: {}", orbit.word);
    let map = orbit.return_map;
    let _ = writeln!(
        s,
        "return map: t -> {} t {} {}  (|slope| {}, sin(theta/2)^-n = {})",
        fixed(map.slope, 12),
        if map.offset < 0.0 { '-' } else { '+' },
        fixed(map.offset.abs(), 12),
        fixed(map.slope.abs(), 12),
        fixed(expected, 12)
    );
    let _ = writeln!(s, "fixed point t*: {}", fixed(orbit.fixed_point(), 12));
    match banach {
        Some(b) => {
            let _ = writeln!(
                s,
                "backward iteration from t = 0.5: {} after {} iterations (gap {:.3e})",
                fixed(b.t, 12),
                b.iterations,
                b.gap
            );
        }
        None => {
            let _ = writeln!(s, "backward iteration from t = 0.5: did not converge");
        }
    }
    let _ = writeln!(
        s,
        "{:>5}  {:>5}  {:>16}  {:>16}  {:>16}",
        "step", "side", "t", "x", "y"
    );
    for (i, ((&side, &t), p)) in orbit
        .word
        .labels()
        .iter()
        .zip(&orbit.params)
        .zip(&orbit.points)
        .enumerate()
    {
        let _ = writeln!(
            s,
            "{:>5}  {:>5}  {:>16}  {:>16}  {:>16}",
            i + 1,
            side,
            fixed(t, 12),
            fixed(p.x, 12),
            fixed(p.y, 12)
        );
    }
    let _ = writeln!(s, "closure residual: {:.3e}", orbit.closure_residual);
    let _ = writeln!(
        s,
        "perpendicularity error: {:.3e}",
        orbit.perpendicularity_error(geom)
    );
    let _ = writeln!(s, "feasible: {}", if orbit.feasible { "yes" } else { "no" });
    let _ = writeln!(
        s,
        "degenerate vertex: {}",
        if orbit.degenerate_vertex { "yes" } else { "no" }
    );
    if orbit.degenerate_vertex && orbit.word.distinct_sides() < 3 {
        let _ = writeln!(
            s,
            "status: the word visits only two sides; its fixed point is a polygon vertex, not a periodic orbit"
        );
    } else if !orbit.feasible {
        let _ = writeln!(
            s,
            "status: the forward chain leaves the polygon's sides; this side word is not realizable"
        );
    } else {
        let _ = writeln!(s, "status: periodic orbit");
    }
    let _ = writeln!(
        s,
        "tolerances: feasibility {:e}, closure {:e}, backward iteration {:e}",
        tol.feasibility, tol.closure, banach_tol
    );
    s
}

fn default_columns(count: usize) -> usize {
    let mut c = 1;
    while c * c < count {
        c += 1;
    }
    c
}

fn cmd_gallery(a: &GalleryArgs) -> Result<Outcome, CliError> {
    let tol = a.tol.tolerances()?;
    let geom = PolygonGeometry::new(a.k, 1.0)?;
    let words = Oracle::new(a.k)?
        .with_cap(a.max_oracle_n)
        .canonical_orbits(a.n)?;
    let orbits = solve_all(&geom, &words, &tol, Exec::default())?;
    let layout = match a.layout {
        LayoutArg::Overlay => Layout::Overlay,
        LayoutArg::Grid => Layout::Grid {
            columns: a.columns.unwrap_or_else(|| default_columns(orbits.len())),
        },
    };
    write_file(
        &a.svg,
        &svg::render(&geom, &orbits, layout, &svg_options(a.no_labels)),
    )?;

    let mut warnings = Vec::new();
    let mut s = String::new();
    let _ = writeln!(s, "sides: {} (k = {}), period {}", geom.sides, a.k, a.n);
    let _ = writeln!(s, "rendered {} orbits to {}", orbits.len(), a.svg.display());
    for o in &orbits {
        let _ = writeln!(
            s,
            "  {}  t* = {}  {}",
            o.word,
            fixed(o.fixed_point(), 9),
            if o.feasible {
                "feasible"
            } else {
                "not realizable (drawn dashed)"
            }
        );
    }
    if orbits.is_empty() {
        warnings.push(format!("warning: there are no {}-periodic orbits for k = {}; the figure shows the polygon only", a.n, a.k));
    }
    let infeasible = orbits.iter().filter(|o| !o.feasible).count();
    if infeasible > 0 {
        warnings.push(format!(
            "warning: {infeasible} of {} side words are not realizable",
            orbits.len()
        ));
    }
    Ok(Outcome {
        report: s,
        code: EXIT_OK,
        warnings,
    })
}

#[derive(Serialize)]
struct VerifyRow {
    n: usize,
    #[serde(with = "big_json")]
    formula: BigUint,
    oracle: u64,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    breakdown: Option<CountBreakdown>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagnosis: Option<Vec<PartitionDiagnosis>>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_big")]
    corrected: Option<BigUint>,
}

fn opt_big<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(b) => big_json::serialize(b, s),
        None => s.serialize_none(),
    }
}

#[derive(Serialize)]
struct VerifyJson {
    k: u32,
    sides: u32,
    min_n: usize,
    max_n: usize,
    ok: usize,
    mismatches: usize,
    rows: Vec<VerifyRow>,
}

fn cmd_verify(a: &VerifyArgs, style: &Style) -> Result<Outcome, CliError> {
    let oracle = Oracle::new(a.k)?.with_cap(a.max_oracle_n);
    let mut counter = OrbitCounter::new(a.k)?;
    if a.min_n < 3 {
        return Err(CliError::Usage(format!(
            "--min-n must be at least 3 (n = 2 is a base convention), got {}",
            a.min_n
        )));
    }
    if a.max_n > a.max_oracle_n {
        return Err(Error::ResourceCap {
            n: a.max_n,
            cap: a.max_oracle_n,
        }
        .into());
    }
    let mut rows = Vec::new();
    for n in a.min_n..=a.max_n {
        let formula = counter.count(n as u64)?.count;
        let brute = oracle.count(n)?;
        let ok = formula == BigUint::from(brute);
        let (breakdown, diagnosis, corrected) = if ok {
            (None, None, None)
        } else {
            let b = counter.breakdown(n as u64)?;
            let d: Vec<PartitionDiagnosis> = counter
                .diagnose(n as u64)?
                .into_iter()
                .filter(|d| !d.agrees())
                .collect();
            (Some(b), Some(d), Some(counter.corrected_count(n as u64)?))
        };
        rows.push(VerifyRow {
            n,
            formula,
            oracle: brute,
            status: if ok { "OK" } else { "MISMATCH" },
            breakdown,
            diagnosis,
            corrected,
        });
    }
    let mismatches = rows.iter().filter(|r| r.status != "OK").count();
    let sides = oracle.system().sides();
    let report = match a.common.format {
        Format::Json => json_text(&VerifyJson {
            k: a.k,
            sides,
            min_n: a.min_n,
            max_n: a.max_n,
            ok: rows.len() - mismatches,
            mismatches,
            rows,
        })?,
        Format::Csv => {
            let mut out = vec![vec![
                "n".to_string(),
                "formula".to_string(),
                "oracle".to_string(),
                "status".to_string(),
            ]];
            out.extend(rows.iter().map(|r| {
                vec![
                    r.n.to_string(),
                    r.formula.to_string(),
                    r.oracle.to_string(),
                    r.status.to_string(),
                ]
            }));
            csv_text(out)?
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "verify k = {} ({} sides), n = {}..={}",
                a.k, sides, a.min_n, a.max_n
            );
            let w = rows
                .iter()
                .map(|r| r.formula.to_string().len())
                .max()
                .unwrap_or(1)
                .max(7);
            let _ = writeln!(s, "{:>4}  {:>w$}  {:>w$}  status", "n", "formula", "oracle");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:>4}  {:>w$}  {:>w$}  {}",
                    r.n,
                    r.formula.to_string(),
                    r.oracle,
                    style.status(r.status == "OK")
                );
            }
            for r in rows.iter().filter(|r| r.status != "OK") {
                let _ = writeln!(s);
                let _ = writeln!(
                    s,
                    "mismatch at n = {}: formula {}, oracle {}",
                    r.n, r.formula, r.oracle
                );
                if let Some(b) = &r.breakdown {
                    for line in breakdown_text(b).lines() {
                        let _ = writeln!(s, "  {line}");
                    }
                }
                if let Some(d) = &r.diagnosis {
                    let _ = writeln!(
                        s,
                        "  mixed terms that overcount rotation-symmetric block arrangements:"
                    );
                    for t in d {
                        let _ = writeln!(
                            s,
                            "    {:<14} formula {}  exact {}",
                            t.partition.to_string(),
                            t.formula_term,
                            t.exact_term
                        );
                    }
                }
                if let Some(c) = &r.corrected {
                    let _ = writeln!(
                        s,
                        "  total with exact mixed terms: {c} (oracle {})",
                        r.oracle
                    );
                }
            }
            let _ = writeln!(s);
            let _ = writeln!(
                s,
                "summary: {} OK, {} MISMATCH",
                rows.len() - mismatches,
                mismatches
            );
            s
        }
    };
    Ok(Outcome {
        report,
        code: if mismatches > 0 {
            EXIT_MISMATCH
        } else {
            EXIT_OK
        },
        warnings: Vec::new(),
    })
}

#[derive(Serialize)]
struct AuditJson {
    k: u32,
    sides: u32,
    max_n: usize,
    tolerances: Tolerances,
    rows: Vec<RealizabilityRow>,
}

fn cmd_audit(a: &AuditArgs) -> Result<Outcome, CliError> {
    let tol = a.tol.tolerances()?;
    let system = TransitionSystem::new(a.k)?;
    if a.max_n > a.max_oracle_n {
        return Err(Error::ResourceCap {
            n: a.max_n,
            cap: a.max_oracle_n,
        }
        .into());
    }
    let rows = audit_realizability(a.k, a.max_n, &tol, Exec::default())?;
    let report = match a.common.format {
        Format::Json => json_text(&AuditJson {
            k: a.k,
            sides: system.sides(),
            max_n: a.max_n,
            tolerances: tol,
            rows,
        })?,
        Format::Csv => {
            let mut out = vec![vec![
                "n".to_string(),
                "words".to_string(),
                "feasible".to_string(),
                "infeasible".to_string(),
            ]];
            out.extend(rows.iter().map(|r| {
                vec![
                    r.n.to_string(),
                    r.words.to_string(),
                    r.feasible.to_string(),
                    (r.words - r.feasible).to_string(),
                ]
            }));
            csv_text(out)?
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "realizability audit k = {} ({} sides), n = 3..={}",
                a.k,
                system.sides(),
                a.max_n
            );
            let _ = writeln!(
                s,
                "{:>4}  {:>8}  {:>8}  {:>10}",
                "n", "words", "feasible", "infeasible"
            );
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:>4}  {:>8}  {:>8}  {:>10}",
                    r.n,
                    r.words,
                    r.feasible,
                    r.words - r.feasible
                );
            }
            for r in rows.iter().filter(|r| !r.infeasible.is_empty()) {
                let _ = writeln!(s);
                let _ = writeln!(s, "not realizable at n = {}:", r.n);
                for w in &r.infeasible {
                    let _ = writeln!(s, "  {w}");
                }
            }
            let _ = writeln!(
                s,
                "tolerances: feasibility {:e}, closure {:e}",
                tol.feasibility, tol.closure
            );
            s
        }
    };
    Ok(Outcome::ok(report))
}
