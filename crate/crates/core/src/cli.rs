//! Command-line front end. Exit codes: 0 success, 1 probe failure, 2 input
//! error, 3 point on a source, 4 source inside the search region.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::counterexample::build_counterexample;
use crate::error::Error;
use crate::field::classify;
use crate::problem::{parse_problem, render_problem, Problem};
use crate::rmax::{rmax_table, write_csv};
use crate::search::{find_extremum, search_plan, Objective, SearchOptions};
use crate::verification::{self, ProbeReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROBE_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SINGULAR: i32 = 3;
pub const EXIT_GEOMETRY: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "invsq",
    version,
    about = "Inverse-square fields of weighted point sources"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Max,
    Min,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::Max => Objective::Maximum,
            ObjectiveArg::Min => Objective::Minimum,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Gradient,
    Laplacian,
    BoundSandwich,
    MaximumPrinciple,
    MinimumPrinciple,
    Oracle,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the field at a point
    Eval {
        #[arg(long)]
        problem: PathBuf,
        /// Comma-separated coordinates
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Harmonicity class and search plan for a dimension
    Classify {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        dimension: u64,
    },
    /// Global extremum over the problem's region
    Optimize {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, value_enum, default_value = "max")]
        objective: ObjectiveArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        starts: Option<usize>,
    },
    /// Write the cross-polytope configuration as a problem file
    Counterexample {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        dimension: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certified radii table as CSV
    Rmax {
        /// List and ranges, e.g. `5..10,15,20,50,100`
        #[arg(long, default_value = "5..10,15,20,50,100")]
        dims: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification probes
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write the reports as JSON
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run the cross-polytope probe instead and expect the interior to win
        /// (settings `D=<dim>` and `r=<radius>`, default `D=5 r=0.05`)
        #[arg(long, num_args = 0.., value_name = "SETTING")]
        expect_counterexample: Option<Vec<String>>,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CoincidentSource { .. } => EXIT_SINGULAR,
            Error::SourceInsideRegion { .. } => EXIT_GEOMETRY,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Successful output plus the exit code (non-zero only for failed probes).
struct Outcome {
    stdout: String,
    code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            code: EXIT_OK,
        }
    }
}

/// Twelve significant digits, trailing zeros trimmed, always with a decimal point.
pub fn format_value(v: f64) -> String {
    if v == 0.0 {
        return "0.0".to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    if !(-5..12).contains(&magnitude) {
        return format!("{v:.11e}");
    }
    let decimals = (11 - magnitude).max(1) as usize;
    let mut s = format!("{v:.decimals$}");
    while s.ends_with('0') && !s.ends_with(".0") {
        s.pop();
    }
    s
}

fn format_point(p: &[f64]) -> String {
    p.iter()
        .map(|c| format_value(*c))
        .collect::<Vec<_>>()
        .join(", ")
}

fn load_problem(path: &PathBuf) -> Result<Problem, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    parse_problem(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn parse_point(s: &str) -> Result<Vec<f64>, Failure> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| {
                    Failure::input(format!("invalid coordinate `{}` in --point", t.trim()))
                })
        })
        .collect()
}

/// Parses `5..10,15,20` (ranges inclusive; `5-10` also accepted).
pub fn parse_dims(s: &str) -> Result<Vec<usize>, String> {
    let mut dims = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bounds = part
            .split_once("..")
            .or_else(|| part.split_once('-'))
            .map(|(a, b)| (a.trim(), b.trim_start_matches('=').trim()));
        let parse = |t: &str| {
            t.parse::<usize>()
                .ok()
                .filter(|&d| d >= 1)
                .ok_or_else(|| format!("invalid dimension `{t}` in --dims"))
        };
        match bounds {
            Some((a, b)) => {
                let (a, b) = (parse(a)?, parse(b)?);
                if a > b {
                    return Err(format!("empty range `{part}` in --dims"));
                }
                dims.extend(a..=b);
            }
            None => dims.push(parse(part)?),
        }
    }
    if dims.is_empty() {
        return Err("--dims is empty".into());
    }
    Ok(dims)
}

fn write_or_return(out: &Option<PathBuf>, text: String) -> Result<String, Failure> {
    match out {
        Some(path) => {
            fs::write(path, text)
                .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(text),
    }
}

fn cmd_eval(problem: &PathBuf, point: &str) -> Result<Outcome, Failure> {
    let problem = load_problem(problem)?;
    let x = parse_point(point)?;
    let value = problem.sources.evaluate(&x)?;
    Ok(Outcome::ok(format!("{}\n", format_value(value))))
}

fn cmd_classify(dim: usize) -> Result<Outcome, Failure> {
    let h = classify(dim)?;
    let max = search_plan(dim, Objective::Maximum)?;
    let min = search_plan(dim, Objective::Minimum)?;
    Ok(Outcome::ok(format!(
        "{}; max: {}; min: {}\n",
        h.label(),
        max.label(),
        min.label()
    )))
}

fn cmd_optimize(
    problem: &PathBuf,
    objective: Objective,
    seed: u64,
    starts: Option<usize>,
) -> Result<Outcome, Failure> {
    let problem = load_problem(problem)?;
    let region = problem
        .region
        .ok_or_else(|| Failure::input("the problem file has no [region]"))?;
    if starts == Some(0) {
        return Err(Failure::input("--starts must be at least 1"));
    }
    let opts = SearchOptions {
        seed,
        starts,
        ..SearchOptions::default()
    };
    let r = find_extremum(&problem.sources, &region, objective, &opts)?;
    let mut s = String::new();
    let _ = writeln!(s, "objective: {}", r.objective);
    let _ = writeln!(s, "point: {}", format_point(&r.point));
    let _ = writeln!(s, "value: {}", format_value(r.value));
    let _ = writeln!(s, "location: {}", r.location);
    let _ = writeln!(s, "restricted: {}", r.restricted);
    let _ = writeln!(s, "starts_used: {}", r.starts_used);
    let _ = writeln!(s, "converged: {}", r.converged);
    Ok(Outcome::ok(s))
}

fn cmd_counterexample(dim: usize, out: &Option<PathBuf>) -> Result<Outcome, Failure> {
    let sources = build_counterexample(dim)?;
    Ok(Outcome::ok(write_or_return(
        out,
        render_problem(&sources, None),
    )?))
}

fn cmd_rmax(dims: &str, out: &Option<PathBuf>) -> Result<Outcome, Failure> {
    let dims = parse_dims(dims).map_err(Failure::input)?;
    let entries = rmax_table(&dims);
    let mut buf = Vec::new();
    write_csv(&dims, &entries, &mut buf).expect("writing to memory");
    let text = String::from_utf8(buf).expect("ascii csv");
    Ok(Outcome::ok(write_or_return(out, text)?))
}

/// Default probe sizes for each suite.
pub fn run_suite(suite: &str, seed: u64) -> crate::Result<Vec<ProbeReport>> {
    let mut reports = Vec::new();
    let all = suite == "all";
    if all || suite == "gradient" {
        for d in 1..=6 {
            reports.push(verification::gradient_probe(d, 100, seed)?);
        }
    }
    if all || suite == "laplacian" {
        for d in 1..=8 {
            reports.push(verification::laplacian_probe(d, 100, seed)?);
        }
    }
    if all || suite == "bound-sandwich" {
        let grid: Vec<f64> = (1..=29).map(|k| k as f64 * 0.01).collect();
        for d in [2, 3, 5, 6] {
            reports.push(verification::bound_sandwich_probe(d, &grid, 1000, seed)?);
        }
    }
    if all || suite == "maximum-principle" {
        for d in 1..=4 {
            reports.push(verification::maximum_principle_probe(
                d,
                Objective::Maximum,
                50,
                500,
                seed,
            )?);
        }
    }
    if all || suite == "minimum-principle" {
        for d in 4..=6 {
            reports.push(verification::maximum_principle_probe(
                d,
                Objective::Minimum,
                50,
                500,
                seed,
            )?);
        }
    }
    if all || suite == "oracle" {
        reports.push(verification::oracle_agreement_probe(2, 20, 101, seed)?);
        reports.push(verification::oracle_agreement_probe(3, 20, 41, seed)?);
    }
    Ok(reports)
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::All => "all",
        Suite::Gradient => "gradient",
        Suite::Laplacian => "laplacian",
        Suite::BoundSandwich => "bound-sandwich",
        Suite::MaximumPrinciple => "maximum-principle",
        Suite::MinimumPrinciple => "minimum-principle",
        Suite::Oracle => "oracle",
    }
}

fn parse_counterexample_settings(settings: &[String]) -> Result<(usize, f64), Failure> {
    let mut dim = 5;
    let mut r = 0.05;
    for s in settings {
        match s.split_once('=') {
            Some(("D" | "d", v)) => {
                dim = v
                    .parse()
                    .map_err(|_| Failure::input(format!("invalid dimension in `{s}`")))?
            }
            Some(("r" | "R", v)) => {
                r = v
                    .parse()
                    .map_err(|_| Failure::input(format!("invalid radius in `{s}`")))?
            }
            _ => {
                return Err(Failure::input(format!(
                    "unknown setting `{s}` (use D=<dim> r=<radius>)"
                )))
            }
        }
    }
    Ok((dim, r))
}

fn cmd_verify(
    suite: Suite,
    seed: u64,
    out: &Option<PathBuf>,
    expect: &Option<Vec<String>>,
) -> Result<Outcome, Failure> {
    let mut text = String::new();
    let (reports, code) = match expect {
        Some(settings) => {
            let (dim, r) = parse_counterexample_settings(settings)?;
            let report = verification::counterexample_probe(dim, r, 500, seed)?;
            let dominated = !report.passed();
            let _ = writeln!(text, "{report}");
            let _ = writeln!(
                text,
                "{}: interior {} the boundary for D={dim}, r={r}",
                if dominated { "EXPECTED" } else { "UNEXPECTED" },
                if dominated { "beats" } else { "does not beat" }
            );
            let code = if dominated {
                EXIT_OK
            } else {
                EXIT_PROBE_FAILURE
            };
            (vec![report], code)
        }
        None => {
            let reports = run_suite(suite_name(suite), seed)?;
            for r in &reports {
                let _ = writeln!(text, "{r}");
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            let _ = writeln!(text, "{} probes, {failed} failed", reports.len());
            let code = if failed == 0 {
                EXIT_OK
            } else {
                EXIT_PROBE_FAILURE
            };
            (reports, code)
        }
    };
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(&reports).expect("reports serialize");
        fs::write(path, json + "\n")
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(Outcome { stdout: text, code })
}

fn dispatch(cli: Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Eval { problem, point } => cmd_eval(&problem, &point),
        Command::Classify { dimension } => cmd_classify(dimension as usize),
        Command::Optimize {
            problem,
            objective,
            seed,
            starts,
        } => cmd_optimize(&problem, objective.into(), seed, starts),
        Command::Counterexample { dimension, out } => cmd_counterexample(dimension as usize, &out),
        Command::Rmax { dims, out } => cmd_rmax(&dims, &out),
        Command::Verify {
            suite,
            seed,
            out,
            expect_counterexample,
        } => cmd_verify(suite, seed, &out, &expect_counterexample),
    }
}

/// Runs the CLI on `args` (including the program name). Output is only
/// written once the command has completed.
pub fn run<I, T>(args: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli) {
        Ok(outcome) => {
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            outcome.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
