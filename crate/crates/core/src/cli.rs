//! Command-line front end. Exit codes: 0 success, 1 no solution, 2 I/O,
//! 64 usage, 65 data format.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bits::BitString;
use crate::bp::{branch_and_prune, symmetry_set, BpOptions, SearchMode, DEFAULT_PRUNE_TOLERANCE};
use crate::data::{published_distribution, read_distribution_csv, write_distribution_csv};
use crate::error::Error;
use crate::experiment::{run_grover, Iterations, RunOptions};
use crate::geometry::extract_internal;
use crate::grover::{Distribution, IterationMode};
use crate::instance::{
    clique_topology, example_topology, format_decimal, generate_detailed, generate_from_topology_detailed,
    parse_instance, validate, InstanceDocument,
};
use crate::metrics::MetricsReport;
use crate::oracle::{Oracle, OracleParams, DEFAULT_DELTA, DEFAULT_EPSILON};
use crate::render::{svg_histogram, text_histogram};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_SOLUTION: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

#[derive(Parser, Debug)]
#[command(name = "dmdgp", version, about = "Distance geometry by Branch-and-Prune and simulated Grover search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an instance with a known ground truth.
    Gen {
        #[arg(long, value_parser = clap::value_parser!(u64).range(4..=64))]
        n: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "long-edge-prob", default_value_t = 0.5)]
        long_edge_prob: f64,
        /// Use a fixed edge set instead of random long-range edges.
        #[arg(long, value_enum)]
        topology: Option<Topology>,
        /// Ground-truth signs for `--topology`.
        #[arg(long)]
        bits: Option<String>,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the clique, triangle and distance-ceiling rules.
    Validate { instance: PathBuf },
    /// Enumerate solutions with Branch-and-Prune.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_PRUNE_TOLERANCE)]
        tol: f64,
        /// Print solution coordinates.
        #[arg(long)]
        coords: bool,
    },
    /// Simulate Grover search with the distance-geometry oracle.
    Grover {
        instance: PathBuf,
        /// `auto` or a fixed number of iterations.
        #[arg(long, default_value = "auto", value_parser = parse_iterations)]
        iters: Iterations,
        #[arg(long = "iter-mode", value_enum, default_value_t = IterMode::Nearest)]
        iter_mode: IterMode,
        #[arg(long, default_value_t = 0)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Weight of the uniform distribution mixed into the ideal one.
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        #[arg(long, default_value_t = DEFAULT_DELTA)]
        delta: f64,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        /// Write the measured distribution as an SVG bar chart.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the measured distribution as CSV.
        #[arg(long = "dist-out")]
        dist_out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Compare two distribution files.
    Metrics {
        /// Measured distribution: a CSV path or `bundled:<column>`.
        measured: String,
        /// Reference distribution: a CSV path or `bundled:<column>`.
        reference: String,
        /// Searched outcomes, as bit strings or integers, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        marked: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Tabulate g(h(k)), its normalization and f(k) for every candidate.
    OracleScan {
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DELTA)]
        delta: f64,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Topology {
    /// The seven-vertex, sixteen-edge worked example.
    Example,
    /// Clique edges only; needs `--n`.
    Clique,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    First,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum IterMode {
    Floor,
    Nearest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

fn parse_iterations(s: &str) -> Result<Iterations, String> {
    if s == "auto" {
        Ok(Iterations::Auto)
    } else {
        s.parse().map(Iterations::Fixed).map_err(|_| format!("expected `auto` or a count, got {s:?}"))
    }
}

/// A command failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Self { code: EXIT_IO, message: format!("{}: {e}", path.display()) }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) => EXIT_IO,
            Error::NoSolution => EXIT_NO_SOLUTION,
            Error::OracleParams(_)
            | Error::MarkedOutOfRange { .. }
            | Error::AllMarked
            | Error::EmptyMarkedSet
            | Error::ScanCapExceeded { .. }
            | Error::BitLength { .. }
            | Error::BitString(_) => EXIT_USAGE,
            _ => EXIT_DATA,
        };
        Self { code, message: e.to_string() }
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn write_file(path: &Path, contents: &str) -> CmdResult {
    fs::write(path, contents).map_err(|e| Failure::io(path, e))
}

fn load_instance(path: &Path) -> Result<InstanceDocument, Failure> {
    let text = read(path)?;
    let doc = parse_instance(&text)?;
    let report = validate(&doc.instance);
    if !report.ok() {
        return Err(Failure { code: EXIT_DATA, message: format!("invalid instance:\n{report}") });
    }
    Ok(doc)
}

fn load_distribution(source: &str) -> Result<Distribution, Failure> {
    if let Some(name) = source.strip_prefix("bundled:") {
        return published_distribution(name).ok_or_else(|| Failure::usage(format!("no bundled column named {name:?}")));
    }
    Ok(read_distribution_csv(&read(Path::new(source))?)?)
}

fn parse_marked(items: &[String], size: usize) -> Result<Vec<usize>, Failure> {
    let width = size.trailing_zeros() as usize;
    items
        .iter()
        .map(|s| {
            let s = s.trim();
            if s.len() == width && s.chars().all(|c| c == '0' || c == '1') {
                Ok(s.parse::<BitString>()?.to_index() as usize)
            } else {
                s.parse::<usize>().map_err(|_| {
                    Failure::usage(format!("marked outcome {s:?} is neither a {width}-bit string nor an index"))
                })
            }
        })
        .collect()
}

fn out_err(e: std::io::Error) -> Failure {
    Failure { code: EXIT_IO, message: e.to_string() }
}

fn cmd_gen(
    n: Option<u64>,
    seed: u64,
    long_edge_prob: f64,
    topology: Option<Topology>,
    bits: Option<String>,
    out_path: Option<PathBuf>,
    out: &mut dyn Write,
) -> CmdResult {
    if !(0.0..=1.0).contains(&long_edge_prob) {
        return Err(Failure::usage("--long-edge-prob must lie in [0, 1]"));
    }
    let generated = match topology {
        None => {
            let n = n.ok_or_else(|| Failure::usage("--n is required"))? as usize;
            generate_detailed(n, seed, long_edge_prob)
        }
        Some(t) => {
            let edges = match t {
                Topology::Example => example_topology(),
                Topology::Clique => {
                    clique_topology(n.ok_or_else(|| Failure::usage("--topology clique needs --n"))? as usize)
                }
            };
            let bits: BitString = bits.ok_or_else(|| Failure::usage("--topology needs --bits"))?.parse()?;
            generate_from_topology_detailed(&edges, &bits, seed)?
        }
    };
    let json = generated.document().to_json();
    match out_path {
        Some(path) => write_file(&path, &json),
        None => out.write_all(json.as_bytes()).map_err(out_err),
    }
}

fn cmd_validate(path: &Path, out: &mut dyn Write) -> CmdResult {
    let doc = parse_instance(&read(path)?)?;
    let report = validate(&doc.instance);
    write!(out, "{report}").map_err(out_err)?;
    if report.ok() {
        Ok(())
    } else {
        Err(Failure { code: EXIT_DATA, message: format!("{} violation(s)", report.violations.len()) })
    }
}

fn cmd_solve(path: &Path, mode: Mode, tol: f64, coords: bool, out: &mut dyn Write) -> CmdResult {
    if !(tol > 0.0) {
        return Err(Failure::usage("--tol must be positive"));
    }
    let doc = load_instance(path)?;
    let inst = &doc.instance;
    let internal = extract_internal(inst)?;
    let s = symmetry_set(inst);
    let options = BpOptions {
        tolerance: tol,
        mode: match mode {
            Mode::First => SearchMode::First,
            Mode::All => SearchMode::All,
        },
        ..BpOptions::default()
    };
    let vertices: Vec<String> = s.vertices.iter().map(|v| v.to_string()).collect();
    let mut w = |line: String| writeln!(out, "{line}").map_err(out_err);
    w(format!("n = {}, {} edges", inst.n(), inst.edge_count()))?;
    w(format!("symmetry set S = {{{}}}", vertices.join(", ")))?;
    w(format!("expected solutions 2^|S| = {}", s.solution_count()))?;
    let solutions = match branch_and_prune(inst, &internal, options) {
        Ok(sols) => sols,
        Err(Error::NoSolution) => {
            w("no solution".to_string())?;
            return Err(Failure { code: EXIT_NO_SOLUTION, message: "no solution".into() });
        }
        Err(e) => return Err(e.into()),
    };
    w(format!("solutions ({}):", solutions.len()))?;
    for sol in &solutions.entries {
        w(format!("  {}  k={}  g={:.3e}", sol.bits, sol.index(), sol.penalty))?;
        if coords {
            for (v, p) in sol.conformation.points().iter().enumerate() {
                w(format!("    x{} = ({:.9}, {:.9}, {:.9})", v + 1, p.x, p.y, p.z))?;
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_grover(
    path: &Path,
    options: RunOptions,
    svg: Option<PathBuf>,
    dist_out: Option<PathBuf>,
    json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    if !(0.0..=1.0).contains(&options.noise) {
        return Err(Failure::usage("--noise must lie in [0, 1]"));
    }
    OracleParams::new(4, options.delta, options.epsilon)?;
    let doc = load_instance(path)?;
    let report = run_grover(&doc.instance, &options)?;
    if json {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        writeln!(out, "{text}").map_err(out_err)?;
    } else {
        write!(out, "{report}").map_err(out_err)?;
        writeln!(out, "measured distribution:").map_err(out_err)?;
        write!(out, "{}", text_histogram(&report.measured, &report.marked, 40)).map_err(out_err)?;
    }
    if let Some(p) = svg {
        let title = format!("n = {}, {} iteration(s)", report.instance.n, report.iterations);
        write_file(&p, &svg_histogram(&title, &report.measured, &report.marked))?;
    }
    if let Some(p) = dist_out {
        write_file(&p, &write_distribution_csv(&report.measured))?;
    }
    Ok(())
}

fn cmd_metrics(measured: &str, reference: &str, marked: &[String], format: Format, out: &mut dyn Write) -> CmdResult {
    let a = load_distribution(measured)?;
    let b = load_distribution(reference)?;
    let marked = parse_marked(marked, a.len())?;
    let report = MetricsReport::compare(&a, &b, &marked)?;
    match format {
        Format::Text => write!(out, "{report}"),
        Format::Csv => writeln!(out, "{}\n{}", MetricsReport::CSV_HEADER, report.csv_row()),
    }
    .map_err(out_err)
}

fn cmd_oracle_scan(path: &Path, delta: f64, epsilon: f64, format: Format, out: &mut dyn Write) -> CmdResult {
    OracleParams::new(4, delta, epsilon)?;
    let doc = load_instance(path)?;
    let inst = &doc.instance;
    let params = OracleParams::new(inst.n(), delta, epsilon)?;
    let internal = extract_internal(inst)?;
    let rows = Oracle::new(inst, &internal, params).scan()?;
    let mut w = |line: String| writeln!(out, "{line}").map_err(out_err);
    match format {
        Format::Text => {
            w(format!("p1 = {}, p2 = {:.6}, delta = {delta}, epsilon = {epsilon}", params.p1, params.p2))?;
            w(format!(
                "{:>8}  {:>w$}  {:>12}  {:>12}  {:>10}  f",
                "k",
                "bits",
                "g(h(k))",
                "g/p1",
                "(g/p1)^(1/p2)",
                w = inst.n() - 3
            ))?;
            for r in &rows {
                w(format!(
                    "{:>8}  {}  {:>12.5e}  {:>12.5e}  {:>13.6}  {}",
                    r.index, r.bits, r.penalty, r.normalized, r.value, r.marked as u8
                ))?;
            }
            w(format!("marked: {}", rows.iter().filter(|r| r.marked).count()))?;
        }
        Format::Csv => {
            w("k,bits,g,normalized,value,f".to_string())?;
            for r in &rows {
                w(format!(
                    "{},{},{},{},{},{}",
                    r.index,
                    r.bits,
                    format_decimal(r.penalty),
                    format_decimal(r.normalized),
                    format_decimal(r.value),
                    r.marked as u8
                ))?;
            }
        }
    }
    Ok(())
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Gen { n, seed, long_edge_prob, topology, bits, out: path } => {
            cmd_gen(n, seed, long_edge_prob, topology, bits, path, out)
        }
        Command::Validate { instance } => cmd_validate(&instance, out),
        Command::Solve { instance, mode, tol, coords } => cmd_solve(&instance, mode, tol, coords, out),
        Command::Grover { instance, iters, iter_mode, shots, seed, noise, delta, epsilon, svg, dist_out, json } => {
            let options = RunOptions {
                iterations: iters,
                mode: match iter_mode {
                    IterMode::Floor => IterationMode::Floor,
                    IterMode::Nearest => IterationMode::Nearest,
                },
                shots,
                seed,
                noise,
                delta,
                epsilon,
            };
            cmd_grover(&instance, options, svg, dist_out, json, out)
        }
        Command::Metrics { measured, reference, marked, format } => {
            cmd_metrics(&measured, &reference, &marked, format, out)
        }
        Command::OracleScan { instance, delta, epsilon, format } => {
            cmd_oracle_scan(&instance, delta, epsilon, format, out)
        }
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
