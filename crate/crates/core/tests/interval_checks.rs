//! Cross-checks of the interval operations: exhaustive symmetry and sliced
//! property runs on an enumerable format, and randomized equivalence with
//! the reference route on 53-bit significands.

use outward_core::oracle::{
    self, exhaustive_pair_check_range, negative_control_check, pair_case_count, reference_op,
    valid_intervals, Property,
};
use outward_core::value::fp_eq;
use outward_core::{ops, ArithOp, FpFormat, FpValue, Interval};

use proptest::prelude::*;

fn e3m2() -> FpFormat {
    FpFormat::new(3, 2).unwrap()
}

#[test]
fn addition_and_multiplication_commute_everywhere() {
    let intervals = valid_intervals(e3m2()).unwrap();
    for x in &intervals {
        for y in &intervals {
            let a = ops::add(x, y);
            let b = ops::add(y, x);
            assert_eq!(a.inf().bits(), b.inf().bits(), "add {x} {y}");
            assert_eq!(a.sup().bits(), b.sup().bits(), "add {x} {y}");
            let p = ops::mul(x, y);
            let q = ops::mul(y, x);
            assert_eq!(p.inf().bits(), q.inf().bits(), "mul {x} {y}");
            assert_eq!(p.sup().bits(), q.sup().bits(), "mul {x} {y}");
        }
    }
}

#[test]
fn sliced_division_checks_find_nothing() {
    let fmt = e3m2();
    let total = pair_case_count(fmt).unwrap();
    let reports =
        exhaustive_pair_check_range(fmt, ArithOp::Div, &Property::PAIR, 0, 250_000).unwrap();
    for report in &reports {
        assert_eq!(report.violations, 0, "div {}", report.property);
    }
    let reports =
        exhaustive_pair_check_range(fmt, ArithOp::Div, &Property::PAIR, total - 250_000, total)
            .unwrap();
    for report in &reports {
        assert_eq!(report.violations, 0, "div {}", report.property);
    }
}

#[test]
fn sliced_multiplication_checks_find_nothing() {
    let fmt = e3m2();
    let total = pair_case_count(fmt).unwrap();
    let mid = total / 2;
    let reports =
        exhaustive_pair_check_range(fmt, ArithOp::Mul, &Property::PAIR, mid, mid + 250_000)
            .unwrap();
    for report in &reports {
        assert_eq!(report.violations, 0, "mul {}", report.property);
    }
}

#[test]
fn widening_control_breaks_tightness_exactly_on_the_known_family() {
    let fmt = e3m2();
    let intervals = valid_intervals(fmt).unwrap();
    let zero_intervals =
        intervals.iter().filter(|v| v.inf().is_zero() && v.sup().is_zero()).count() as u64;
    let unbounded = intervals
        .iter()
        .filter(|v| v.inf().is_minus_infinity() || v.sup().is_plus_infinity())
        .count() as u64;
    let report = negative_control_check(fmt).unwrap();
    assert!(report.violations > 0);
    assert_eq!(report.violations, 2 * zero_intervals * unbounded);
    assert_eq!(report.cases_checked, pair_case_count(fmt).unwrap());
    assert!(!report.first_counterexamples.is_empty());
}

fn arbitrary_interval() -> impl Strategy<Value = Interval> {
    (any::<u64>(), any::<u64>()).prop_filter_map("interval bounds out of order", |(a, b)| {
        let fmt = FpFormat::BINARY64;
        Interval::make(FpValue::from_bits(fmt, a), FpValue::from_bits(fmt, b)).ok()
    })
}

proptest! {
    #[test]
    fn random_binary64_intervals_match_the_reference(x in arbitrary_interval(), y in arbitrary_interval()) {
        for op in ArithOp::ALL {
            let production = match op {
                ArithOp::Add => Some(ops::add(&x, &y)),
                ArithOp::Sub => Some(ops::sub(&x, &y)),
                ArithOp::Mul => Some(ops::mul(&x, &y)),
                ArithOp::Div => ops::div(&x, &y).quotient(),
            };
            match (production, reference_op(op, &x, &y)) {
                (None, Err(_)) => {}
                (Some(got), Ok(want)) => {
                    prop_assert!(
                        fp_eq(got.inf(), want.lo) && fp_eq(got.sup(), want.hi),
                        "{} {} {}: got [{},{}]",
                        x, op, y, got.inf().to_f64(), got.sup().to_f64()
                    );
                }
                (got, want) => {
                    return Err(TestCaseError::fail(format!(
                        "{} {} {}: zero-division disagreement (production {:?}, reference {:?})",
                        x, op, y, got.is_some(), want.is_ok()
                    )));
                }
            }
        }
    }

    #[test]
    fn random_binary64_quotients_flag_exactly_the_zero_divisors(x in arbitrary_interval(), y in arbitrary_interval()) {
        let flagged = ops::div(&x, &y).is_zero_division();
        let contains = y.contains_real(&outward_core::ExactReal::zero());
        prop_assert_eq!(flagged, contains);
    }
}

#[test]
fn exact_corners_agree_with_representable_sums() {
    let got = oracle::exact_corner(ArithOp::Add, FpValue::from_f64(1.5), FpValue::from_f64(0.25));
    let want = FpValue::from_f64(1.75).to_exact();
    assert_eq!(got, want);
}
