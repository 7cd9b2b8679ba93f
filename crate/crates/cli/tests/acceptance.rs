//! The acceptance gate: one test per shipping criterion, each ending in a
//! single PASS line. Criteria that name a command run the compiled binary;
//! the rest drive the library directly.

use std::process::Command;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use outward_core::interval::{max4_or_zero, min4_or_zero};
use outward_core::oracle::{
    exhaustive_extrema_check, exhaustive_pair_check, negative_control_check, valid_intervals,
    Property,
};
use outward_core::value::FpClass;
use outward_core::{
    dir_op, exact_round, ops, ArithOp, ExactReal, FpFormat, FpValue, Interval, RoundDir,
};

/// Serializes the timed runs so their budgets are not distorted by the
/// other criteria executing concurrently.
static TIMED: Mutex<()> = Mutex::new(());

fn outward(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_outward"))
        .args(args)
        .output()
        .expect("run the outward binary");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn e3m2() -> FpFormat {
    "E3M2".parse().expect("format")
}

fn same_interval(a: &Interval, b: &Interval) -> bool {
    a.inf().bits() == b.inf().bits() && a.sup().bits() == b.sup().bits()
}

fn is_zero_interval(iv: &Interval) -> bool {
    iv.inf().is_zero() && iv.sup().is_zero()
}

fn is_unbounded(iv: &Interval) -> bool {
    iv.inf().is_minus_infinity() || iv.sup().is_plus_infinity()
}

#[test]
fn acceptance_1_exhaustive_minifloat_certification() {
    let _guard = TIMED.lock().unwrap_or_else(|e| e.into_inner());
    let budget = Duration::from_secs(300);
    let started = Instant::now();
    let (code, stdout, stderr) = outward(&[
        "verify",
        "--exhaustive",
        "--format",
        "E3M2",
        "--props",
        "Q_V,Q_S,Q_T,Q_Z,branch_equivalence,rounding_oracle",
    ]);
    let elapsed = started.elapsed();
    assert_eq!(code, 0, "criterion 1: verify exited nonzero; stderr: {stderr}");
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 21, "criterion 1: expected 21 report lines:\n{stdout}");
    for line in &lines {
        assert!(line.contains("cases=2924100"), "criterion 1: wrong case count: {line}");
        assert!(line.contains("violations=0"), "criterion 1: violations found: {line}");
    }
    for op in ["add", "sub", "mul", "div"] {
        for prop in ["Q_V", "Q_S", "Q_T", "branch_equivalence", "rounding_oracle"] {
            assert!(
                lines.iter().any(|l| l.starts_with(&format!("{op} {prop} "))),
                "criterion 1: no report for {op} {prop}"
            );
        }
    }
    assert!(
        lines.iter().any(|l| l.starts_with("div Q_Z ")),
        "criterion 1: no zero-division report for div"
    );
    assert!(
        elapsed <= budget,
        "criterion 1: run took {elapsed:?}, budget {budget:?}"
    );
    println!(
        "criterion 1: PASS - exhaustive E3M2, 4 operators x 2924100 pairs, 0 violations in {:.1}s",
        elapsed.as_secs_f64()
    );
}

#[test]
fn acceptance_2_worked_examples() {
    let (code, stdout, stderr) = outward(&["eval", "[0,+inf] - [0,+inf]"]);
    assert_eq!(code, 0, "criterion 2: stderr: {stderr}");
    assert_eq!(stdout, "[-inf,+inf]\n", "criterion 2: subtraction output");
    let (code, stdout, stderr) = outward(&["eval", "[0,0] * [-inf,+inf]"]);
    assert_eq!(code, 0, "criterion 2: stderr: {stderr}");
    assert_eq!(stdout, "[0,0]\n", "criterion 2: multiplication output");
    println!("criterion 2: PASS - eval prints [-inf,+inf] and [0,0] exactly");
}

#[test]
fn acceptance_3_all_nan_selector_case() {
    for fmt in [e3m2(), FpFormat::BINARY64] {
        let nan = FpValue::nan(fmt);
        assert_eq!(
            min4_or_zero(nan, nan, nan, nan).classify(),
            FpClass::PosZero,
            "criterion 3: min selector over four NaNs"
        );
        assert_eq!(
            max4_or_zero(nan, nan, nan, nan).classify(),
            FpClass::PosZero,
            "criterion 3: max selector over four NaNs"
        );
    }
    let intervals = valid_intervals(e3m2()).expect("enumerable format");
    let zero = Interval::zero(e3m2());
    let mut hits = 0u64;
    for x in &intervals {
        for y in &intervals {
            let all_nan =
                ops::mul_corners_all_nan_down(x, y) && ops::mul_corners_all_nan_up(x, y);
            let zero_times_entire = (is_zero_interval(x) && is_entire(y))
                || (is_zero_interval(y) && is_entire(x));
            assert_eq!(
                all_nan, zero_times_entire,
                "criterion 3: corner NaN pattern mismatch for {x} * {y}"
            );
            if all_nan {
                hits += 1;
                assert!(
                    same_interval(&ops::mul(x, y), &zero),
                    "criterion 3: {x} * {y} must collapse to [0,0]"
                );
            }
        }
    }
    assert_eq!(hits, 8, "criterion 3: zero-interval x entire combinations on E3M2");
    println!("criterion 3: PASS - all-NaN corners collapse to +0, exactly {hits} E3M2 pairs");
}

fn is_entire(iv: &Interval) -> bool {
    iv.inf().is_minus_infinity() && iv.sup().is_plus_infinity()
}

#[test]
fn acceptance_4_selector_lemma_suite() {
    let report = exhaustive_extrema_check(e3m2()).expect("enumerable format");
    assert_eq!(report.cases_checked, 59 * 59 * 59 * 59, "criterion 4: tuple count");
    assert_eq!(
        report.violations, 0,
        "criterion 4: selector lemmas violated: {:?}",
        report.first_counterexamples
    );
    println!(
        "criterion 4: PASS - selector lemmas hold over all {} E3M2 value 4-tuples",
        report.cases_checked
    );
}

#[test]
fn acceptance_5_randomized_binary64_differential() {
    let _guard = TIMED.lock().unwrap_or_else(|e| e.into_inner());
    let budget = Duration::from_secs(600);
    let started = Instant::now();
    let (code, stdout, stderr) = outward(&[
        "verify",
        "--random",
        "--count",
        "1000000",
        "--seed",
        "1",
        "--props",
        "branch_equivalence",
    ]);
    let elapsed = started.elapsed();
    assert_eq!(code, 0, "criterion 5: verify exited nonzero; stderr: {stderr}");
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 4, "criterion 5: one report per operator:\n{stdout}");
    for (op, line) in ["add", "sub", "mul", "div"].iter().zip(&lines) {
        assert!(
            line.starts_with(&format!("{op} branch_equivalence cases=1000000 violations=0 ")),
            "criterion 5: unexpected report line: {line}"
        );
    }
    assert!(
        elapsed <= budget,
        "criterion 5: run took {elapsed:?}, budget {budget:?}"
    );
    println!(
        "criterion 5: PASS - 4 x 10^6 seeded binary64 pairs match the reference in {:.1}s",
        elapsed.as_secs_f64()
    );
}

#[test]
fn acceptance_6_zero_division_contract() {
    let reports = exhaustive_pair_check(e3m2(), ArithOp::Div, &[Property::ZeroDivision])
        .expect("enumerable format");
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].cases_checked, 1710 * 1710);
    assert_eq!(
        reports[0].violations, 0,
        "criterion 6: zero-division detection disagrees with divisor membership: {:?}",
        reports[0].first_counterexamples
    );
    let (code, stdout, stderr) = outward(&["eval", "[1,2] / [-1,1]"]);
    assert_ne!(code, 0, "criterion 6: division by a zero-containing interval must fail");
    assert!(stdout.is_empty(), "criterion 6: no result may be printed");
    assert!(
        stderr.contains("division by an interval containing zero"),
        "criterion 6: missing diagnostic; stderr: {stderr}"
    );
    assert!(
        stderr.contains("\n  [1,2] / [-1,1]\n  ^^^^^^^^^^^^^^"),
        "criterion 6: missing span marker; stderr: {stderr}"
    );
    println!("criterion 6: PASS - zero division detected exhaustively and diagnosed with a span");
}

#[test]
fn acceptance_7_negative_control() {
    let report = negative_control_check(e3m2()).expect("enumerable format");
    assert_eq!(report.cases_checked, 1710 * 1710);
    assert!(
        report.violations >= 1,
        "criterion 7: the widened multiplication variant must fail tightness"
    );
    assert!(!report.first_counterexamples.is_empty());

    let intervals = valid_intervals(e3m2()).expect("enumerable format");
    let zero_count = intervals.iter().filter(|iv| is_zero_interval(iv)).count() as u64;
    let unbounded_count = intervals.iter().filter(|iv| is_unbounded(iv)).count() as u64;
    let mut disagreements = 0u64;
    for x in &intervals {
        for y in &intervals {
            let tight = ops::mul(x, y);
            let widened = ops::mul_widening(x, y);
            if same_interval(&tight, &widened) {
                continue;
            }
            disagreements += 1;
            assert!(
                (is_zero_interval(x) && is_unbounded(y))
                    || (is_zero_interval(y) && is_unbounded(x)),
                "criterion 7: disagreement outside the known family: {x} * {y}"
            );
        }
    }
    assert_eq!(report.violations, disagreements, "criterion 7: report must count the family");
    assert_eq!(
        disagreements,
        2 * zero_count * unbounded_count,
        "criterion 7: family size"
    );

    let zero = Interval::zero(e3m2());
    let half = Interval::make(
        FpValue::zero(e3m2(), false),
        FpValue::infinity(e3m2(), false),
    )
    .expect("half-bounded interval");
    assert!(same_interval(&ops::mul(&zero, &half), &zero));
    assert!(same_interval(&ops::mul_widening(&zero, &half), &Interval::entire(e3m2())));

    let (code, stdout, _) = outward(&["verify", "--negative-control", "--format", "E3M2"]);
    assert_eq!(code, 0, "criterion 7: the control run must report its defect as reproduced");
    assert!(stdout.contains(&format!("violations={disagreements} ")));
    println!(
        "criterion 7: PASS - widened variant fails tightness on exactly {disagreements} pairs, \
         all zero-interval x unbounded"
    );
}

#[test]
fn acceptance_8_overflow_and_underflow_semantics() {
    for fmt in [FpFormat::BINARY64, e3m2()] {
        let max = FpValue::max_finite(fmt, false);
        let down = dir_op(ArithOp::Add, RoundDir::Down, max, max);
        let up = dir_op(ArithOp::Add, RoundDir::Up, max, max);
        assert!(
            down.bits() == max.bits(),
            "criterion 8: {} overflow must saturate downward",
            fmt.name()
        );
        assert!(up.is_plus_infinity(), "criterion 8: {} overflow rounds up to +inf", fmt.name());

        let minsub = FpValue::min_subnormal(fmt, false);
        let two = dir_op(ArithOp::Add, RoundDir::Down, one(fmt), one(fmt));
        let down = dir_op(ArithOp::Div, RoundDir::Down, minsub, two);
        let up = dir_op(ArithOp::Div, RoundDir::Up, minsub, two);
        assert_eq!(
            down.classify(),
            FpClass::PosZero,
            "criterion 8: {} half the smallest subnormal rounds down to +0",
            fmt.name()
        );
        assert!(
            up.bits() == minsub.bits(),
            "criterion 8: {} half the smallest subnormal rounds up to the subnormal",
            fmt.name()
        );

        let third = match minsub.to_exact().expect("finite") {
            ExactReal::Finite(q) => {
                ExactReal::Finite(q / num_rational::BigRational::from_integer(3.into()))
            }
            _ => unreachable!("the smallest subnormal is finite"),
        };
        let down = exact_round(&third, RoundDir::Down, fmt);
        let up = exact_round(&third, RoundDir::Up, fmt);
        assert_eq!(down.classify(), FpClass::PosZero);
        assert!(up.bits() == minsub.bits());
    }
    println!("criterion 8: PASS - overflow saturates by direction, underflow reaches subnormals");
}

fn one(fmt: FpFormat) -> FpValue {
    exact_round(&ExactReal::from_integer(1), RoundDir::Down, fmt)
}
