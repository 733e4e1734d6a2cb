//! Command-line front end.
//!
//! Subcommands: `eval` (one operator at a point), `numbers` (number-map
//! sweeps), `cutoff-map` (clip-region grids), `entropy` (entropy sweeps and
//! the admissibility scan), `verify` (law suites with a JSON report).
//!
//! Exit codes: `0` defined result / all laws pass, `1` law-suite failure,
//! `2` undefined result, `64` usage error, `74` output I/O error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dataset::{
    cutoff_map_dataset, entropy_admissibility_dataset, entropy_two_state_dataset,
    entropy_vs_w_dataset, numbers_dataset, Dataset, GridAxis,
};
use crate::extreal::ExtReal;
use crate::qarith::{dot_mul, inv_mul, neg, op_closed, tpow, BinOpKind};
use crate::qnumbers::{deform, DeformClass, ALL_CLASSES};
use crate::qparam::QParam;
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_LAW_FAILURE: i32 = 1;
pub const EXIT_UNDEFINED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

/// Default q panel for sweep commands.
const Q_PANEL: [f64; 5] = [-1.0, 0.5, 1.0, 2.0, 3.0];

#[derive(Parser)]
#[command(
    name = "qdeform",
    version,
    about = "Deformed logarithm/exponential numerics: number maps, generalized \
             arithmetic, calculus, entropies, and a law-verification harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one operator at a point and print the value or tag.
    Eval(EvalArgs),
    /// Sweep the four number maps over an x grid.
    Numbers(NumbersArgs),
    /// Map the clip region of the exp-family sum or product over (x, y).
    #[command(name = "cutoff-map")]
    CutoffMap(CutoffMapArgs),
    /// Entropy sweeps (two-state, vs state count) and admissibility scans.
    Entropy(EntropyArgs),
    /// Run the law-verification suites and print the JSON report.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Number class: ile, ole, iel, or oel.
    class: String,
    /// Operator: deform, neg, inv (one operand); add, sub, mul, div, pow,
    /// dot (two operands).
    op: String,
    /// Deformation parameter.
    #[arg(long, allow_negative_numbers = true)]
    q: f64,
    /// Operand values.
    #[arg(allow_negative_numbers = true)]
    operands: Vec<f64>,
}

#[derive(Args)]
struct NumbersArgs {
    /// Classes to sweep (repeat or comma-separate); default all four.
    #[arg(long = "class", value_delimiter = ',')]
    classes: Vec<String>,
    /// q values (repeat or comma-separate); default -1, 0.5, 1, 2, 3.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    q: Vec<f64>,
    /// Grid spec var:min:max:steps; accepts var x. Default x:-3:3:601.
    #[arg(long)]
    grid: Vec<String>,
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CutoffMapArgs {
    /// Operation whose clip region is mapped: add or mul.
    op: String,
    /// Deformation parameter.
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    q: f64,
    /// Grid specs var:min:max:steps for x and y. Default both -2:2:201.
    #[arg(long)]
    grid: Vec<String>,
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EntropyArgs {
    /// Task: two-state, vs-w, or admissibility.
    task: String,
    /// Classes to include; default all four.
    #[arg(long = "class", value_delimiter = ',')]
    classes: Vec<String>,
    /// q values; default -1, 0.5, 1, 2, 3.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    q: Vec<f64>,
    /// Grid spec: x:min:max:steps for the two-state p sweep (default
    /// x:0:1:201), w:min:max:steps for the state-count sweep (default
    /// w:1:1000:46, log-spaced).
    #[arg(long)]
    grid: Vec<String>,
    /// Two-state grid resolution for the admissibility scan.
    #[arg(long, default_value_t = 1001)]
    resolution: usize,
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: arith, calc, entropy, or all.
    suite: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Samples per law; default 400.
    #[arg(long)]
    count: Option<usize>,
    /// Restrict the sampled q interval.
    #[arg(
        long = "q-range",
        num_args = 2,
        value_names = ["MIN", "MAX"],
        allow_negative_numbers = true
    )]
    q_range: Option<Vec<f64>>,
    /// Write the JSON report here as well as deciding the exit code.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

/// Parses `args` and runs one command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Numbers(args) => cmd_numbers(args),
        Command::CutoffMap(args) => cmd_cutoff_map(args),
        Command::Entropy(args) => cmd_entropy(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("qdeform: {msg}");
    EXIT_USAGE
}

fn io_error(err: &std::io::Error) -> i32 {
    eprintln!("qdeform: output failed: {err}");
    EXIT_IO
}

fn parse_q(q: f64) -> Result<QParam, String> {
    QParam::new(q).map_err(|e| e.to_string())
}

fn parse_qs(qs: &[f64]) -> Result<Vec<QParam>, String> {
    let source: &[f64] = if qs.is_empty() { &Q_PANEL } else { qs };
    source.iter().map(|&q| parse_q(q)).collect()
}

fn parse_class(name: &str) -> Result<DeformClass, String> {
    ALL_CLASSES
        .into_iter()
        .find(|c| c.name() == name)
        .ok_or_else(|| format!("unknown class `{name}` (expected ile, ole, iel, or oel)"))
}

fn parse_classes(names: &[String]) -> Result<Vec<DeformClass>, String> {
    if names.is_empty() {
        return Ok(ALL_CLASSES.to_vec());
    }
    names.iter().map(|n| parse_class(n)).collect()
}

/// Parses repeated `--grid var:min:max:steps` flags against a set of
/// per-variable defaults; later flags override earlier ones.
fn parse_grids(
    flags: &[String],
    defaults: &[(&str, GridAxis)],
) -> Result<BTreeMap<String, GridAxis>, String> {
    let mut grids: BTreeMap<String, GridAxis> = defaults
        .iter()
        .map(|(var, axis)| (var.to_string(), *axis))
        .collect();
    for flag in flags {
        let parts: Vec<&str> = flag.split(':').collect();
        let [var, min, max, steps] = parts.as_slice() else {
            return Err(format!("grid `{flag}` is not var:min:max:steps"));
        };
        if !grids.contains_key(*var) {
            let known: Vec<&String> = grids.keys().collect();
            return Err(format!("unknown grid variable `{var}` (expected {known:?})"));
        }
        let min: f64 = min.parse().map_err(|_| format!("bad grid min `{min}`"))?;
        let max: f64 = max.parse().map_err(|_| format!("bad grid max `{max}`"))?;
        let steps: usize = steps
            .parse()
            .map_err(|_| format!("bad grid steps `{steps}`"))?;
        let axis = GridAxis::new(min, max, steps).map_err(|e| format!("grid `{flag}`: {e}"))?;
        grids.insert(var.to_string(), axis);
    }
    Ok(grids)
}

/// Writes rendered output to the path or stdout; maps failures to exit 74.
fn emit(out: Option<&PathBuf>, content: &str) -> i32 {
    let res = match out {
        Some(path) => fs::write(path, content),
        None => std::io::stdout().write_all(content.as_bytes()),
    };
    match res {
        Ok(()) => EXIT_OK,
        Err(e) => io_error(&e),
    }
}

fn render(ds: &Dataset, format: OutFormat) -> String {
    match format {
        OutFormat::Csv => ds.to_csv_string(),
        OutFormat::Json => ds.to_json_string(),
    }
}

fn cmd_eval(args: EvalArgs) -> i32 {
    let cls = match parse_class(&args.class) {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    let q = match parse_q(args.q) {
        Ok(q) => q,
        Err(e) => return usage_error(&e),
    };
    let unary: Option<fn(DeformClass, QParam, f64) -> ExtReal> = match args.op.as_str() {
        "deform" => Some(deform),
        "neg" => Some(neg),
        "inv" => Some(inv_mul),
        _ => None,
    };
    let result = if let Some(f) = unary {
        let [x] = args.operands.as_slice() else {
            return usage_error(&format!("`{}` takes exactly 1 operand", args.op));
        };
        f(cls, q, *x)
    } else {
        let binary: fn(DeformClass, QParam, f64, f64) -> ExtReal = match args.op.as_str() {
            "add" => |c, q, x, y| op_closed(c, BinOpKind::Add, q, x, y),
            "sub" => |c, q, x, y| op_closed(c, BinOpKind::Sub, q, x, y),
            "mul" => |c, q, x, y| op_closed(c, BinOpKind::Mul, q, x, y),
            "div" => |c, q, x, y| op_closed(c, BinOpKind::Div, q, x, y),
            "pow" => tpow,
            "dot" => dot_mul,
            _ => {
                return usage_error(&format!(
                    "unknown operator `{}` (expected deform, neg, inv, add, sub, mul, div, pow, dot)",
                    args.op
                ))
            }
        };
        let [x, y] = args.operands.as_slice() else {
            return usage_error(&format!("`{}` takes exactly 2 operands", args.op));
        };
        binary(cls, q, *x, *y)
    };
    println!("{result}");
    match result {
        ExtReal::Undefined(_) => EXIT_UNDEFINED,
        _ => EXIT_OK,
    }
}

fn cmd_numbers(args: NumbersArgs) -> i32 {
    let classes = match parse_classes(&args.classes) {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    let qs = match parse_qs(&args.q) {
        Ok(qs) => qs,
        Err(e) => return usage_error(&e),
    };
    let default_x = GridAxis::new(-3.0, 3.0, 601).expect("static default grid");
    let grids = match parse_grids(&args.grid, &[("x", default_x)]) {
        Ok(g) => g,
        Err(e) => return usage_error(&e),
    };
    let ds = numbers_dataset(&classes, &qs, &grids["x"]);
    emit(args.out.as_ref(), &render(&ds, args.format))
}

fn cmd_cutoff_map(args: CutoffMapArgs) -> i32 {
    let op = match args.op.as_str() {
        "add" => BinOpKind::Add,
        "mul" => BinOpKind::Mul,
        other => return usage_error(&format!("unknown cutoff-map op `{other}` (expected add or mul)")),
    };
    let q = match parse_q(args.q) {
        Ok(q) => q,
        Err(e) => return usage_error(&e),
    };
    let default_axis = GridAxis::new(-2.0, 2.0, 201).expect("static default grid");
    let grids = match parse_grids(&args.grid, &[("x", default_axis), ("y", default_axis)]) {
        Ok(g) => g,
        Err(e) => return usage_error(&e),
    };
    let ds = cutoff_map_dataset(op, q, &grids["x"], &grids["y"]);
    emit(args.out.as_ref(), &render(&ds, args.format))
}

fn cmd_entropy(args: EntropyArgs) -> i32 {
    let classes = match parse_classes(&args.classes) {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    let qs = match parse_qs(&args.q) {
        Ok(qs) => qs,
        Err(e) => return usage_error(&e),
    };
    let ds = match args.task.as_str() {
        "two-state" | "two_state" => {
            let default_p = GridAxis::new(0.0, 1.0, 201).expect("static default grid");
            let grids = match parse_grids(&args.grid, &[("x", default_p)]) {
                Ok(g) => g,
                Err(e) => return usage_error(&e),
            };
            entropy_two_state_dataset(&classes, &qs, &grids["x"])
        }
        "vs-w" | "vs_w" => {
            let default_w = GridAxis::new(1.0, 1000.0, 46).expect("static default grid");
            let grids = match parse_grids(&args.grid, &[("w", default_w)]) {
                Ok(g) => g,
                Err(e) => return usage_error(&e),
            };
            match entropy_vs_w_dataset(&classes, &qs, &grids["w"]) {
                Ok(ds) => ds,
                Err(e) => return usage_error(&format!("state-count grid: {e}")),
            }
        }
        "admissibility" => {
            if args.resolution < 3 {
                return usage_error("admissibility resolution must be at least 3");
            }
            entropy_admissibility_dataset(&classes, &qs, args.resolution)
        }
        other => {
            return usage_error(&format!(
                "unknown entropy task `{other}` (expected two-state, vs-w, or admissibility)"
            ))
        }
    };
    emit(args.out.as_ref(), &render(&ds, args.format))
}

fn cmd_verify(args: VerifyArgs) -> i32 {
    let mut domain = verify::SampleDomain::with_seed(args.seed);
    if let Some(count) = args.count {
        if count == 0 {
            return usage_error("--count must be positive");
        }
        domain.count = count;
    }
    if let Some(range) = &args.q_range {
        let [lo, hi] = range.as_slice() else {
            return usage_error("--q-range takes MIN MAX");
        };
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return usage_error("--q-range needs finite MIN <= MAX");
        }
        domain.q_range = (*lo, *hi);
    }
    let laws = match args.suite.as_str() {
        "arith" => verify::arithmetic_suite(&domain),
        "calc" => verify::calculus_suite(&domain),
        "entropy" => verify::entropy_suite(&domain),
        "all" => verify::full_suite(&domain),
        other => {
            return usage_error(&format!(
                "unknown suite `{other}` (expected arith, calc, entropy, or all)"
            ))
        }
    };
    let verdict = verify::verdict(&args.suite, &domain, laws);
    let report = verify::to_json(&verdict);
    let code = emit(args.out.as_ref(), &report);
    if code != EXIT_OK {
        return code;
    }
    if verdict.all_pass {
        EXIT_OK
    } else {
        EXIT_LAW_FAILURE
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> i32 {
        run(args.iter().map(|s| s.to_string()))
    }

    #[test]
    fn eval_exit_codes_follow_definedness() {
        assert_eq!(run_args(&["qdeform", "eval", "oel", "mul", "--q", "0.5", "4", "9"]), EXIT_OK);
        // No exp-of-deformed-log value at 0 for q < 1.
        assert_eq!(
            run_args(&["qdeform", "eval", "iel", "deform", "--q", "0.5", "0"]),
            EXIT_UNDEFINED
        );
        assert_eq!(
            run_args(&["qdeform", "eval", "oel", "frob", "--q", "0.5", "4", "9"]),
            EXIT_USAGE
        );
        assert_eq!(
            run_args(&["qdeform", "eval", "oel", "mul", "--q", "0.5", "4"]),
            EXIT_USAGE
        );
        assert_eq!(
            run_args(&["qdeform", "eval", "nope", "mul", "--q", "0.5", "4", "9"]),
            EXIT_USAGE
        );
    }

    #[test]
    fn numbers_writes_the_sweep_to_a_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("numbers.csv");
        let code = run_args(&[
            "qdeform",
            "numbers",
            "--class",
            "ile",
            "--q",
            "3",
            "--grid",
            "x:0:1:5",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK);
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("class,q,x,value\n"));
        assert!(text.contains(",inf"));
        assert_eq!(text.lines().count(), 6);
    }

    #[test]
    fn cutoff_map_emits_json_with_stable_columns() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("map.json");
        let code = run_args(&[
            "qdeform",
            "cutoff-map",
            "mul",
            "--q",
            "-1",
            "--grid",
            "x:-1:1:11",
            "--grid",
            "y:-1:1:11",
            "--format",
            "json",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK);
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("{\"columns\":[\"kind\",\"x\",\"y\",\"in_cutoff\"]"));
        assert!(text.contains("\"border\""));
    }

    #[test]
    fn entropy_tasks_cover_all_three_modes() {
        let dir = tempfile::tempdir().unwrap();
        for (task, extra) in [
            ("two-state", vec!["--grid", "x:0:1:11"]),
            ("vs-w", vec!["--grid", "w:1:100:10"]),
            ("admissibility", vec!["--resolution", "101"]),
        ] {
            let path = dir.path().join(format!("{task}.csv"));
            let mut args = vec!["qdeform", "entropy", task, "--q", "0.5,2"];
            args.extend(extra);
            args.extend(["--out", path.to_str().unwrap()]);
            assert_eq!(run_args(&args), EXIT_OK, "task {task}");
            assert!(fs::read_to_string(&path).unwrap().lines().count() > 1);
        }
        assert_eq!(
            run_args(&["qdeform", "entropy", "nope"]),
            EXIT_USAGE
        );
    }

    #[test]
    fn verify_report_is_byte_stable_and_passes() {
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.json");
        let b = dir.path().join("b.json");
        for path in [&a, &b] {
            let code = run_args(&[
                "qdeform",
                "verify",
                "arith",
                "--seed",
                "42",
                "--count",
                "60",
                "--out",
                path.to_str().unwrap(),
            ]);
            assert_eq!(code, EXIT_OK);
        }
        let (ra, rb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
        assert!(!ra.is_empty());
        assert_eq!(ra, rb);
    }

    #[test]
    fn bad_grids_and_bad_paths_map_to_usage_and_io_codes() {
        assert_eq!(
            run_args(&["qdeform", "numbers", "--grid", "x:3:1:10"]),
            EXIT_USAGE
        );
        assert_eq!(
            run_args(&["qdeform", "numbers", "--grid", "z:0:1:10"]),
            EXIT_USAGE
        );
        assert_eq!(
            run_args(&["qdeform", "numbers", "--grid", "x:0:1"]),
            EXIT_USAGE
        );
        assert_eq!(
            run_args(&[
                "qdeform",
                "numbers",
                "--grid",
                "x:0:1:5",
                "--out",
                "/nonexistent-dir/out.csv"
            ]),
            EXIT_IO
        );
        assert_eq!(
            run_args(&["qdeform", "verify", "arith", "--q-range", "2", "1"]),
            EXIT_USAGE
        );
    }
}
