use std::io::Read;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use feasolve::oracles::generate_instance_raw;
use feasolve::phase1::PivotRule;
use feasolve::{Error, Problem, Rational, Scalar, Tolerance};

use feasolve_cli::fuzz::{run_fuzz, FuzzConfig};
use feasolve_cli::input::{parse_problem, problem_to_document, to_float_problem};
use feasolve_cli::report::{build_report, emit_report};
use feasolve_cli::run::{
    float_suspect, run_pipeline, verify_with_oracles, OracleChoice, Pipeline, PipelineOptions,
};
use feasolve_cli::trace::{collect_trace, TraceLine};

/// Standard-form LP solver: minimize c'x subject to Ax = b, x >= 0.
#[derive(Parser)]
#[command(name = "feasolve", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a basic feasible solution, then optimize with Bland's rule.
    Solve(SolveArgs),
    /// Stop after phase 1: feasibility verdict, basis, and certificate only.
    Phase1(SolveArgs),
    /// Emit a deterministic random problem document.
    Gen(GenArgs),
    /// Differential testing: compare both pivot rules against the oracles.
    Fuzz(FuzzArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ArithArg {
    Rational,
    Float,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RuleArg {
    Sorted,
    Unsorted,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleArg {
    Aux,
    Enumerate,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Random,
    InfeasibleBiased,
    NegativeB,
}

#[derive(Args)]
struct SolveArgs {
    /// Problem document (JSON); '-' reads standard input.
    input: String,
    /// Arithmetic: exact rationals or eps-classified floats.
    #[arg(long, value_enum, default_value_t = ArithArg::Rational)]
    arith: ArithArg,
    /// Absolute epsilon for float sign tests.
    #[arg(long, default_value_t = Tolerance::DEFAULT_EPS)]
    eps: f64,
    /// Phase-1 variant: keep rows sorted by basis column, or never permute.
    #[arg(long, value_enum, default_value_t = RuleArg::Sorted)]
    rule: RuleArg,
    /// Write per-pivot JSON lines to this path.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Include the full scheme matrix in every trace line.
    #[arg(long)]
    trace_full: bool,
    /// Cross-check the verdict with an independent oracle; disagreement is an
    /// internal error (exit 4).
    #[arg(long, value_enum)]
    oracle: Option<OracleArg>,
    /// Ceiling on pivots per phase (the tight bound C(n, m) still applies).
    #[arg(long, default_value_t = 1_000_000)]
    max_iter: u64,
    /// Ceiling on enumerated bases for the enumeration oracle.
    #[arg(long, default_value_t = 1_000_000)]
    oracle_limit: u64,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of rows.
    #[arg(long)]
    m: usize,
    /// Number of columns.
    #[arg(long)]
    n: usize,
    /// Integer entry range "lo..hi".
    #[arg(long, default_value = "-5..5", value_parser = parse_range, allow_hyphen_values = true)]
    range: (i64, i64),
    #[arg(long, value_enum, default_value_t = SchemeArg::Random)]
    scheme: SchemeArg,
    /// Optional name embedded in the document.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args)]
struct FuzzArgs {
    /// Number of instances.
    #[arg(long, default_value_t = 100)]
    count: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum number of rows; each instance draws m in [1, this].
    #[arg(long, default_value_t = 6)]
    m: usize,
    /// Maximum number of columns; each instance draws n in [m, this].
    #[arg(long, default_value_t = 12)]
    n: usize,
    #[arg(long, default_value = "-5..5", value_parser = parse_range, allow_hyphen_values = true)]
    range: (i64, i64),
    /// Which oracles to compare against.
    #[arg(long, value_enum, default_value_t = OracleArg::Both)]
    oracle: OracleArg,
    #[arg(long, value_enum, default_value_t = ArithArg::Rational)]
    arith: ArithArg,
    #[arg(long, default_value_t = Tolerance::DEFAULT_EPS)]
    eps: f64,
    #[arg(long, default_value_t = 1_000_000)]
    max_iter: u64,
    #[arg(long, default_value_t = 1_000_000)]
    oracle_limit: u64,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected \"lo..hi\", got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

impl From<OracleArg> for OracleChoice {
    fn from(v: OracleArg) -> Self {
        match v {
            OracleArg::Aux => OracleChoice::Aux,
            OracleArg::Enumerate => OracleChoice::Enumerate,
            OracleArg::Both => OracleChoice::Both,
        }
    }
}

const EXIT_INPUT: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match catch_unwind(AssertUnwindSafe(|| dispatch(cli))) {
        Ok(code) => ExitCode::from(code),
        Err(_) => {
            eprintln!("feasolve: internal invariant violation (panic)");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

fn dispatch(cli: Cli) -> u8 {
    match cli.command {
        Command::Solve(args) => solve_command(&args, true),
        Command::Phase1(args) => solve_command(&args, false),
        Command::Gen(args) => gen_command(&args),
        Command::Fuzz(args) => fuzz_command(&args),
    }
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("cannot read stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
    }
}

fn solve_command(args: &SolveArgs, phase2: bool) -> u8 {
    let text = match read_input(&args.input) {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("feasolve: {msg}");
            return EXIT_INPUT;
        }
    };
    let parsed = match parse_problem(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("feasolve: invalid problem: {e}");
            return EXIT_INPUT;
        }
    };

    let rule = match args.rule {
        RuleArg::Sorted => PivotRule::Sorted,
        RuleArg::Unsorted => PivotRule::Unsorted,
    };
    match args.arith {
        ArithArg::Rational => {
            let opts = PipelineOptions { rule, tol: Tolerance::EXACT, ceiling: args.max_iter, phase2 };
            run_and_report(&parsed.problem, &opts, args, |_| None)
        }
        ArithArg::Float => {
            let tol = match Tolerance::new(args.eps) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("feasolve: {e}");
                    return EXIT_INPUT;
                }
            };
            let p = to_float_problem(&parsed.problem);
            let opts = PipelineOptions { rule, tol, ceiling: args.max_iter, phase2 };
            run_and_report(&p, &opts, args, |pipe| Some(float_suspect(&p, pipe)))
        }
    }
}

/// The `suspect` hook yields the float-mode qualification flag; the rational
/// path passes a constant `None`.
fn run_and_report<S: Scalar>(
    p: &Problem<S>,
    opts: &PipelineOptions,
    args: &SolveArgs,
    suspect: impl FnOnce(&Pipeline<S>) -> Option<bool>,
) -> u8 {
    let pipe: Pipeline<S> = match run_pipeline(p, opts) {
        Ok(pipe) => pipe,
        Err(e) => return solver_error(&e),
    };

    if let Some(oracle) = args.oracle {
        match verify_with_oracles(p, &pipe, oracle.into(), &opts.tol, opts.ceiling, args.oracle_limit)
        {
            Ok(mismatches) if mismatches.is_empty() => {}
            Ok(mismatches) => {
                for m in &mismatches {
                    eprintln!(
                        "feasolve: oracle {} disagrees: solver feasible={}, oracle feasible={}",
                        m.oracle, m.solver_feasible, m.oracle_feasible
                    );
                }
                return EXIT_INTERNAL;
            }
            Err(e) => return solver_error(&e),
        }
    }

    if let Some(path) = &args.trace {
        let lines = match trace_for(&pipe, opts, args.trace_full) {
            Ok(lines) => lines,
            Err(e) => return solver_error(&e),
        };
        let mut out = String::new();
        for line in &lines {
            out.push_str(&serde_json::to_string(line).expect("trace serialization"));
            out.push('\n');
        }
        if let Err(e) = std::fs::write(path, out) {
            eprintln!("feasolve: cannot write trace {}: {e}", path.display());
            return EXIT_INPUT;
        }
    }

    let report = build_report(&pipe, suspect(&pipe));
    print!("{}", emit_report(&report));
    report.exit_code() as u8
}

fn trace_for<S: Scalar>(
    pipe: &Pipeline<S>,
    opts: &PipelineOptions,
    full: bool,
) -> Result<Vec<TraceLine>, Error> {
    use feasolve_cli::run::Outcome;
    let Some((initial, _)) = &pipe.initial else { return Ok(Vec::new()) };
    let (phase1, simplex) = match &pipe.outcome {
        Outcome::Inconsistent { .. } => return Ok(Vec::new()),
        Outcome::Infeasible { phase1 } | Outcome::Feasible { phase1 } => (phase1, None),
        Outcome::Optimal { phase1, simplex } | Outcome::Unbounded { phase1, simplex } => {
            (phase1, Some(simplex))
        }
    };
    collect_trace(initial, opts.rule, phase1, simplex, &opts.tol, full)
}

fn solver_error(e: &Error) -> u8 {
    eprintln!("feasolve: {e}");
    match e {
        Error::AntiCycling { .. } | Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

fn gen_command(args: &GenArgs) -> u8 {
    let scheme = match args.scheme {
        SchemeArg::Random => feasolve::oracles::Scheme::Random,
        SchemeArg::InfeasibleBiased => feasolve::oracles::Scheme::InfeasibleBiased,
        SchemeArg::NegativeB => feasolve::oracles::Scheme::NegativeB,
    };
    let raw = match generate_instance_raw(args.seed, args.m, args.n, args.range, scheme) {
        Ok(raw) => raw,
        Err(e) => {
            eprintln!("feasolve: {e}");
            return EXIT_INPUT;
        }
    };
    let problem: Problem<Rational> = raw.to_problem();
    let doc = problem_to_document(&problem, args.name.as_deref());
    println!("{doc}");
    0
}

fn fuzz_command(args: &FuzzArgs) -> u8 {
    let cfg = FuzzConfig {
        count: args.count,
        seed: args.seed,
        max_m: args.m,
        max_n: args.n,
        range: args.range,
        oracle: args.oracle.into(),
        float: args.arith == ArithArg::Float,
        eps: args.eps,
        ceiling: args.max_iter,
        enum_limit: args.oracle_limit,
    };
    if cfg.max_m < 1 || cfg.max_n < cfg.max_m {
        eprintln!("feasolve: fuzz shape requires 1 <= m <= n");
        return EXIT_INPUT;
    }
    match run_fuzz(&cfg) {
        Ok(summary) => {
            println!("{}", serde_json::to_string(&summary).expect("summary serialization"));
            if summary.mismatches.is_empty() {
                0
            } else {
                EXIT_INTERNAL
            }
        }
        Err(e) => solver_error(&e),
    }
}
