//! Command line front end: evaluate interval expressions and run the
//! verification drivers.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use outward_cli::driver::{self, VerifyJob, VerifyMode};
use outward_cli::expr::{self, EvalError, Span};
use outward_core::oracle::{CheckReport, Property};
use outward_core::text::format_hex;
use outward_core::value::FpClass;
use outward_core::{ArithOp, FpFormat, Interval};

#[derive(Parser)]
#[command(name = "outward", version, about = "Interval arithmetic with outward-rounded bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an interval expression, e.g. "[1,2] * ([0,1] + 3.5)".
    Eval {
        /// Bound format: binary64 or a minifloat such as E3M2.
        #[arg(long, default_value = "binary64")]
        format: String,
        /// How to print the result bounds.
        #[arg(long, value_enum, default_value_t = OutputStyle::Decimal)]
        output: OutputStyle,
        /// The expression to evaluate.
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Check the interval operators against the exact reference.
    Verify {
        /// Check every pair of valid intervals of the format.
        #[arg(long, conflicts_with_all = ["random", "negative_control"])]
        exhaustive: bool,
        /// Check deterministic pseudorandom binary64 pairs.
        #[arg(long, conflicts_with = "negative_control")]
        random: bool,
        /// Run the deliberately widened multiplication variant, which is
        /// expected to fail tightness; the exit status is inverted.
        #[arg(long)]
        negative_control: bool,
        /// Bound format (defaults to E3M2 exhaustively, binary64 randomly).
        #[arg(long)]
        format: Option<String>,
        /// Comma-separated operators to check, or "all".
        #[arg(long, default_value = "all")]
        ops: String,
        /// Comma-separated properties to check, or "all". Accepts the
        /// short names Q_V, Q_S, Q_T, Q_Z as well as validity, soundness,
        /// tightness, zero_division, branch_equivalence, rounding_oracle,
        /// and extrema_lemmas.
        #[arg(long, default_value = "all")]
        props: String,
        /// Random cases per operator.
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        /// Seed for the random case stream.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Worker threads (defaults to the available parallelism).
        #[arg(long, value_parser = clap::value_parser!(usize))]
        jobs: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputStyle {
    /// Shortest decimal strings for binary64, exact decimal otherwise.
    Decimal,
    /// C99 hexadecimal-significand form.
    Hex,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Eval { format, output, expr } => cmd_eval(&format, output, &expr),
        Command::Verify {
            exhaustive,
            random,
            negative_control,
            format,
            ops,
            props,
            count,
            seed,
            jobs,
        } => cmd_verify(VerifyArgs {
            exhaustive,
            random,
            negative_control,
            format,
            ops,
            props,
            count,
            seed,
            jobs,
        }),
    };
    ExitCode::from(code)
}

fn usage_error(message: &str) -> u8 {
    eprintln!("error: {message}");
    2
}

fn cmd_eval(format: &str, output: OutputStyle, text: &str) -> u8 {
    let fmt: FpFormat = match format.parse() {
        Ok(f) => f,
        Err(e) => return usage_error(&e.to_string()),
    };
    let ast = match expr::parse(text) {
        Ok(ast) => ast,
        Err(e) => {
            print_span_error(text, Span { start: e.offset, end: e.offset + 1 }, &e.message);
            return 2;
        }
    };
    match expr::eval(&ast, fmt) {
        Ok(iv) => {
            println!("{}", render_interval(&iv, output));
            0
        }
        Err(e) => {
            print_span_error(text, e.span(), &e.message());
            match e {
                EvalError::ZeroDivision { .. } => 1,
                EvalError::BadInterval { .. } => 2,
            }
        }
    }
}

/// Points at the part of the expression an error refers to:
///
/// ```text
/// error: division by an interval containing zero
///   [1,2] / [-1,1]
///   ^^^^^^^^^^^^^^
/// ```
fn print_span_error(text: &str, span: Span, message: &str) {
    eprintln!("error: {message}");
    eprintln!("  {text}");
    let width = span.end.saturating_sub(span.start).max(1).min(text.len() + 1 - span.start);
    eprintln!("  {}{}", " ".repeat(span.start), "^".repeat(width));
}

fn render_interval(iv: &Interval, output: OutputStyle) -> String {
    match output {
        OutputStyle::Decimal => iv.to_string(),
        OutputStyle::Hex => {
            let hi = match iv.sup().classify() {
                FpClass::PosInfinity => String::from("+inf"),
                _ => format_hex(iv.sup()),
            };
            format!("[{},{}]", format_hex(iv.inf()), hi)
        }
    }
}

struct VerifyArgs {
    exhaustive: bool,
    random: bool,
    negative_control: bool,
    format: Option<String>,
    ops: String,
    props: String,
    count: u64,
    seed: u64,
    jobs: Option<usize>,
}

fn cmd_verify(args: VerifyArgs) -> u8 {
    let mode = match (args.exhaustive, args.random, args.negative_control) {
        (true, false, false) => VerifyMode::Exhaustive,
        (false, true, false) => VerifyMode::Random { count: args.count, seed: args.seed },
        (false, false, true) => VerifyMode::NegativeControl,
        _ => {
            return usage_error(
                "choose one of --exhaustive, --random, or --negative-control",
            )
        }
    };
    let default_format = if args.random { "binary64" } else { "E3M2" };
    let format_text = args.format.as_deref().unwrap_or(default_format);
    let format: FpFormat = match format_text.parse() {
        Ok(f) => f,
        Err(e) => return usage_error(&e.to_string()),
    };
    let ops = match parse_ops(&args.ops) {
        Ok(ops) => ops,
        Err(msg) => return usage_error(&msg),
    };
    let props = match parse_props(&args.props) {
        Ok(props) => props,
        Err(msg) => return usage_error(&msg),
    };
    if args.random && props.contains(&Property::ExtremaLemmas) && args.props != "all" {
        return usage_error("the extremum lemmas are enumeration-driven; use --exhaustive");
    }
    let jobs = args.jobs.unwrap_or_else(default_jobs);
    if jobs == 0 {
        return usage_error("--jobs must be at least 1");
    }
    let job = VerifyJob { format, ops, props, mode, jobs };
    let reports = match driver::run(&job) {
        Ok(reports) => reports,
        Err(msg) => return usage_error(&msg),
    };
    for report in &reports {
        print_report(report);
    }
    let passed = match mode {
        // The control run passes by reproducing the defect.
        VerifyMode::NegativeControl => reports.iter().all(|r| r.violations > 0),
        _ => reports.iter().all(|r| r.violations == 0),
    };
    if passed {
        0
    } else {
        1
    }
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn parse_ops(text: &str) -> Result<Vec<ArithOp>, String> {
    if text == "all" {
        return Ok(ArithOp::ALL.to_vec());
    }
    text.split(',')
        .map(|part| {
            let part = part.trim();
            part.parse::<ArithOp>().map_err(|_| format!("unknown operator `{part}`"))
        })
        .collect()
}

fn parse_props(text: &str) -> Result<Vec<Property>, String> {
    if text == "all" {
        return Ok(Property::ALL.to_vec());
    }
    text.split(',')
        .map(|part| {
            let part = part.trim();
            part.parse::<Property>().map_err(|_| format!("unknown property `{part}`"))
        })
        .collect()
}

fn print_report(report: &CheckReport) {
    println!(
        "{} {} cases={} violations={} elapsed={:.3}s",
        report.operator,
        report.property,
        report.cases_checked,
        report.violations,
        report.elapsed.as_secs_f64()
    );
    for c in &report.first_counterexamples {
        println!("  case {}: {}", c.case_index, c.detail);
    }
}
