//! Command-line verbs: `construct`, `optimize`, `table`, `render`, `measure`.
//!
//! Exit codes: 0 success, 2 usage or precondition failure, 3 construction
//! failure, 4 solver non-convergence, 1 I/O failure.

pub mod document;
pub mod svg;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::{make_table, Cell, Table, TableId};
use crate::constructions::{
    build_dn, regular_small_ngon, reinhardt_polygon, ConstructionReport, PolygonFamily,
};
use crate::error::Error;
use crate::geometry::{convexity, diameter, perimeter, width, Polygon};
use crate::solver::{solve, ProblemKind, SolveOptions};
use document::{to_json_string, vertices_from_csv, vertices_to_csv, PolygonDocument};

pub const EXIT_OK: u8 = 0;
pub const EXIT_IO: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CONSTRUCTION: u8 = 3;
pub const EXIT_NOT_CONVERGED: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "smallgon",
    version,
    about = "Convex small polygons of large perimeter and width"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Regular,
    Reinhardt,
    Dn,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ProblemArg {
    DnStar,
    BnStar,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a polygon and print "family n L W diameter".
    Construct {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        /// Odd factor for Reinhardt polygons.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Maximize the perimeter for one diameter-graph layout.
    Optimize {
        #[arg(long, value_enum)]
        problem: ProblemArg,
        #[arg(long)]
        n: usize,
        /// Result JSON; printed to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print one of the four reference tables.
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        which: u8,
        #[arg(long)]
        csv: bool,
    },
    /// Draw a polygon document as SVG.
    Render {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-measure a polygon document or vertex CSV.
    Measure { input: PathBuf },
}

/// Output of a command: exit code plus what it printed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: u8, msg: impl std::fmt::Display) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::InvalidPolygon(_) => EXIT_USAGE,
        Error::NotConvex { .. }
        | Error::InfeasibleAngles(_)
        | Error::ConstructionFailure { .. }
        | Error::Numeric(_) => EXIT_CONSTRUCTION,
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Outcome> {
    std::fs::write(path, contents)
        .map_err(|e| Outcome::fail(EXIT_IO, format!("cannot write {}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<String, Outcome> {
    std::fs::read_to_string(path)
        .map_err(|e| Outcome::fail(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))
}

fn summary(family: &str, n: usize, l: f64, w: f64, d: f64) -> String {
    format!("{family} {n} {l:.10} {w:.10} {d:.10}\n")
}

/// Parse arguments (including the program name) and run.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            }
        }
    }
}

pub fn execute(cmd: Command) -> Outcome {
    let result = match cmd {
        Command::Construct {
            family,
            n,
            m,
            out,
            format,
        } => construct(family, n, m, out.as_deref(), format),
        Command::Optimize {
            problem,
            n,
            out,
            seed,
        } => optimize(problem, n, out.as_deref(), seed),
        Command::Table { which, csv } => table(which, csv),
        Command::Render { input, out } => render(&input, &out),
        Command::Measure { input } => measure(&input),
    };
    result.unwrap_or_else(|o| o)
}

fn construct(
    family: FamilyArg,
    n: usize,
    m: Option<usize>,
    out: Option<&Path>,
    format: FormatArg,
) -> Result<Outcome, Outcome> {
    let built = match family {
        FamilyArg::Regular => regular_small_ngon(n),
        FamilyArg::Reinhardt => match m {
            Some(m) => reinhardt_polygon(m, n),
            None => return Err(Outcome::fail(EXIT_USAGE, "--m is required for reinhardt")),
        },
        FamilyArg::Dn => build_dn(n),
    };
    let report: ConstructionReport = built.map_err(|e| Outcome::fail(exit_code(&e), e))?;
    if let Some(path) = out {
        let text = match format {
            FormatArg::Json => PolygonDocument::from_report(&report).to_json(),
            FormatArg::Csv => vertices_to_csv(report.polygon.vertices()),
        };
        write_file(path, &text)?;
    }
    let m = &report.metrics;
    Ok(Outcome::ok(summary(
        report.family.as_str(),
        report.n,
        m.perimeter,
        m.width,
        m.diameter,
    )))
}

fn optimize(
    problem: ProblemArg,
    n: usize,
    out: Option<&Path>,
    seed: u64,
) -> Result<Outcome, Outcome> {
    let kind = match problem {
        ProblemArg::DnStar => ProblemKind::DnStar,
        ProblemArg::BnStar => ProblemKind::BnStar,
    };
    let opts = SolveOptions {
        seed,
        ..SolveOptions::default()
    };
    let result = solve(kind, n, &opts).map_err(|e| Outcome::fail(exit_code(&e), e))?;
    let json = to_json_string(&result);
    let stdout = match out {
        Some(path) => {
            write_file(path, &json)?;
            let name = match kind {
                ProblemKind::DnStar => "dn-star",
                ProblemKind::BnStar => "bn-star",
            };
            format!(
                "{name} {n} {:.10} converged={}\n",
                result.objective, result.converged
            )
        }
        None => json,
    };
    if result.converged {
        Ok(Outcome::ok(stdout))
    } else {
        Ok(Outcome {
            code: EXIT_NOT_CONVERGED,
            stdout,
            stderr: format!(
                "error: solver did not converge (closure residual {:e}, projected gradient {:e})\n",
                result.residual_closure, result.projected_gradient
            ),
        })
    }
}

fn format_cell(c: &Cell) -> String {
    match *c {
        Cell::Int(i) => i.to_string(),
        Cell::Real(x, digits) => format!("{x:.digits$}"),
    }
}

pub fn render_table_text(t: &Table) -> String {
    let cells: Vec<Vec<String>> = std::iter::once(t.header.clone())
        .chain(t.rows.iter().map(|r| r.iter().map(format_cell).collect()))
        .collect();
    let cols = cells.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            cells
                .iter()
                .filter_map(|r| r.get(c))
                .map(String::len)
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = format!("{}\n", t.title);
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:>w$}", w = widths[c]))
            .collect();
        let _ = writeln!(out, "{}", line.join("  "));
    }
    out
}

pub fn render_table_csv(t: &Table) -> String {
    let mut out = t.header.join(",");
    out.push('\n');
    for row in &t.rows {
        let line: Vec<String> = row.iter().map(format_cell).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

fn table(which: u8, csv: bool) -> Result<Outcome, Outcome> {
    let id = TableId::from_number(which).map_err(|e| Outcome::fail(EXIT_USAGE, e))?;
    let t = make_table(id).map_err(|e| {
        let code = if matches!(e, Error::Numeric(_)) {
            EXIT_NOT_CONVERGED
        } else {
            exit_code(&e)
        };
        Outcome::fail(code, e)
    })?;
    Ok(Outcome::ok(if csv {
        render_table_csv(&t)
    } else {
        render_table_text(&t)
    }))
}

fn render(input: &Path, out: &Path) -> Result<Outcome, Outcome> {
    let text = read_file(input)?;
    let doc = PolygonDocument::from_json(&text).map_err(|e| Outcome::fail(EXIT_USAGE, e))?;
    if doc.n < 3 {
        return Err(Outcome::fail(
            EXIT_USAGE,
            "document has fewer than 3 vertices",
        ));
    }
    write_file(out, &svg::render_svg(&doc))?;
    Ok(Outcome::ok(String::new()))
}

fn measure(input: &Path) -> Result<Outcome, Outcome> {
    let text = read_file(input)?;
    let (family, points) = if text.trim_start().starts_with('{') {
        let doc = PolygonDocument::from_json(&text).map_err(|e| Outcome::fail(EXIT_USAGE, e))?;
        (doc.family.clone(), doc.points())
    } else {
        let pts = vertices_from_csv(&text).map_err(|e| Outcome::fail(EXIT_USAGE, e))?;
        (PolygonFamily::External.to_string(), pts)
    };
    let polygon = Polygon::new(points).map_err(|e| Outcome::fail(EXIT_USAGE, e))?;
    let conv = convexity(&polygon);
    if !conv.convex {
        return Err(Outcome::fail(
            EXIT_USAGE,
            format!(
                "polygon is not convex at vertex {}",
                conv.reflex.unwrap_or(0)
            ),
        ));
    }
    let w = width(&polygon).map_err(|e| Outcome::fail(exit_code(&e), e))?;
    Ok(Outcome::ok(summary(
        &family,
        polygon.len(),
        perimeter(&polygon),
        w,
        diameter(&polygon),
    )))
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(args: I) -> std::process::ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let outcome = run(args);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    std::process::ExitCode::from(outcome.code)
}
