//! The four interval operations.
//!
//! Each operation picks its result bounds directly by the signs of the
//! operand bounds, so only the endpoint products and quotients that can
//! actually attain the extremes are evaluated. The sign tests use the
//! floating-point comparisons, which treat the two zeros as equal; the
//! dedicated zero branches in multiplication keep the invalid `0 * inf`
//! corner from ever being evaluated, so no branch below produces NaN.

use crate::format::FpFormat;
use crate::interval::{max2, min2, Interval, RawPair};
use crate::round::{add_down, add_up, div_down, div_up, mul_down, mul_up, sub_down, sub_up};
use crate::value::{fp_eq, fp_le, fp_lt, FpValue};

/// Result of interval division.
#[derive(Clone, Copy, Debug)]
pub enum DivOutcome {
    Quotient(Interval),
    /// The divisor contains zero, so the quotient set is unbounded on both
    /// sides (or undefined); no interval is produced.
    ZeroDivision,
}

impl DivOutcome {
    pub fn quotient(self) -> Option<Interval> {
        match self {
            DivOutcome::Quotient(v) => Some(v),
            DivOutcome::ZeroDivision => None,
        }
    }

    pub fn is_zero_division(self) -> bool {
        matches!(self, DivOutcome::ZeroDivision)
    }
}

fn seal(raw: RawPair) -> Interval {
    Interval::make(raw.lo, raw.hi).expect("operator produced an invalid interval")
}

pub fn add(x: &Interval, y: &Interval) -> Interval {
    seal(add_bounds(x, y))
}

pub fn sub(x: &Interval, y: &Interval) -> Interval {
    seal(sub_bounds(x, y))
}

pub fn mul(x: &Interval, y: &Interval) -> Interval {
    seal(mul_bounds(x, y))
}

pub fn div(x: &Interval, y: &Interval) -> DivOutcome {
    match div_bounds(x, y) {
        Some(raw) => DivOutcome::Quotient(seal(raw)),
        None => DivOutcome::ZeroDivision,
    }
}

fn zero_pair(fmt: FpFormat) -> RawPair {
    let z = FpValue::zero(fmt, false);
    RawPair { lo: z, hi: z }
}

pub(crate) fn add_bounds(x: &Interval, y: &Interval) -> RawPair {
    RawPair {
        lo: add_down(x.inf(), y.inf()),
        hi: add_up(x.sup(), y.sup()),
    }
}

pub(crate) fn sub_bounds(x: &Interval, y: &Interval) -> RawPair {
    RawPair {
        lo: sub_down(x.inf(), y.sup()),
        hi: sub_up(x.sup(), y.inf()),
    }
}

pub(crate) fn mul_bounds(x: &Interval, y: &Interval) -> RawPair {
    let fmt = x.format();
    let zero = FpValue::zero(fmt, false);
    let (xl, xh) = (x.inf(), x.sup());
    let (yl, yh) = (y.inf(), y.sup());
    let pair = |lo, hi| RawPair { lo, hi };
    if fp_le(zero, xl) {
        if fp_eq(xh, zero) {
            zero_pair(fmt)
        } else if fp_le(zero, yl) {
            if fp_eq(yh, zero) {
                zero_pair(fmt)
            } else {
                pair(mul_down(xl, yl), mul_up(xh, yh))
            }
        } else if fp_le(yh, zero) {
            pair(mul_down(xh, yl), mul_up(xl, yh))
        } else {
            pair(mul_down(xh, yl), mul_up(xh, yh))
        }
    } else if fp_le(xh, zero) {
        if fp_le(zero, yl) {
            if fp_eq(yh, zero) {
                zero_pair(fmt)
            } else {
                pair(mul_down(xl, yh), mul_up(xh, yl))
            }
        } else if fp_le(yh, zero) {
            pair(mul_down(xh, yh), mul_up(xl, yl))
        } else {
            pair(mul_down(xl, yh), mul_up(xl, yl))
        }
    } else if fp_le(zero, yl) {
        if fp_eq(yh, zero) {
            zero_pair(fmt)
        } else {
            pair(mul_down(xl, yh), mul_up(xh, yh))
        }
    } else if fp_le(yh, zero) {
        pair(mul_down(xh, yl), mul_up(xl, yl))
    } else {
        pair(
            min2(mul_down(xl, yh), mul_down(xh, yl)),
            max2(mul_up(xl, yl), mul_up(xh, yh)),
        )
    }
}

pub(crate) fn div_bounds(x: &Interval, y: &Interval) -> Option<RawPair> {
    let fmt = x.format();
    let zero = FpValue::zero(fmt, false);
    let (xl, xh) = (x.inf(), x.sup());
    let (yl, yh) = (y.inf(), y.sup());
    let pair = |lo, hi| RawPair { lo, hi };
    if fp_lt(zero, yl) {
        Some(if fp_lt(xh, zero) {
            pair(div_down(xl, yl), div_up(xh, yh))
        } else if fp_lt(zero, xl) {
            pair(div_down(xl, yh), div_up(xh, yl))
        } else {
            pair(div_down(xl, yl), div_up(xh, yl))
        })
    } else if fp_lt(yh, zero) {
        Some(if fp_lt(xh, zero) {
            pair(div_down(xh, yl), div_up(xl, yh))
        } else if fp_lt(zero, xl) {
            pair(div_down(xh, yh), div_up(xl, yl))
        } else {
            pair(div_down(xh, yh), div_up(xl, yh))
        })
    } else {
        None
    }
}

/// A multiplication variant whose zero branches widen to the whole line
/// whenever the other operand is unbounded.
///
/// It is kept as a check target: its output is still a valid enclosure, but
/// it is not tight (`[0,0]` times a half-unbounded interval inflates to
/// `[-inf,+inf]` instead of `[0,0]`). Production code should call [`mul`].
pub fn mul_widening(x: &Interval, y: &Interval) -> Interval {
    seal(mul_widening_bounds(x, y))
}

fn entire_pair(fmt: FpFormat) -> RawPair {
    let e = Interval::entire(fmt);
    RawPair { lo: e.inf(), hi: e.sup() }
}

fn widened_zero(fmt: FpFormat, other_lo: FpValue, other_hi: FpValue) -> RawPair {
    if other_lo.is_minus_infinity() || other_hi.is_plus_infinity() {
        entire_pair(fmt)
    } else {
        zero_pair(fmt)
    }
}

pub(crate) fn mul_widening_bounds(x: &Interval, y: &Interval) -> RawPair {
    let fmt = x.format();
    let zero = FpValue::zero(fmt, false);
    let (xl, xh) = (x.inf(), x.sup());
    let (yl, yh) = (y.inf(), y.sup());
    let pair = |lo, hi| RawPair { lo, hi };
    if fp_le(zero, xl) {
        if fp_eq(xh, zero) {
            widened_zero(fmt, yl, yh)
        } else if fp_le(zero, yl) {
            if fp_eq(yh, zero) {
                widened_zero(fmt, xl, xh)
            } else {
                pair(mul_down(xl, yl), mul_up(xh, yh))
            }
        } else if fp_le(yh, zero) {
            pair(mul_down(xh, yl), mul_up(xl, yh))
        } else {
            pair(mul_down(xh, yl), mul_up(xh, yh))
        }
    } else if fp_le(xh, zero) {
        if fp_le(zero, yl) {
            if fp_eq(yh, zero) {
                widened_zero(fmt, xl, xh)
            } else {
                pair(mul_down(xl, yh), mul_up(xh, yl))
            }
        } else if fp_le(yh, zero) {
            pair(mul_down(xh, yh), mul_up(xl, yl))
        } else {
            pair(mul_down(xl, yh), mul_up(xl, yl))
        }
    } else if fp_le(zero, yl) {
        if fp_eq(yh, zero) {
            widened_zero(fmt, xl, xh)
        } else {
            pair(mul_down(xl, yh), mul_up(xh, yh))
        }
    } else if fp_le(yh, zero) {
        pair(mul_down(xh, yl), mul_up(xl, yl))
    } else {
        pair(
            min2(mul_down(xl, yh), mul_down(xh, yl)),
            max2(mul_up(xl, yl), mul_up(xh, yh)),
        )
    }
}

/// True when all four down-rounded endpoint products are NaN.
///
/// This happens exactly when one operand is a zero interval and the other is
/// the whole line, so every product is an invalid `0 * inf`.
pub fn mul_corners_all_nan_down(x: &Interval, y: &Interval) -> bool {
    [
        mul_down(x.inf(), y.inf()),
        mul_down(x.inf(), y.sup()),
        mul_down(x.sup(), y.inf()),
        mul_down(x.sup(), y.sup()),
    ]
    .iter()
    .all(|v| v.is_nan())
}

/// True when all four up-rounded endpoint products are NaN.
pub fn mul_corners_all_nan_up(x: &Interval, y: &Interval) -> bool {
    [
        mul_up(x.inf(), y.inf()),
        mul_up(x.inf(), y.sup()),
        mul_up(x.sup(), y.inf()),
        mul_up(x.sup(), y.sup()),
    ]
    .iter()
    .all(|v| v.is_nan())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::FpClass;

    fn b(x: f64) -> FpValue {
        FpValue::from_f64(x)
    }

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::make(b(lo), b(hi)).unwrap()
    }

    fn assert_iv(v: &Interval, lo: f64, hi: f64) {
        assert_eq!(
            (v.inf().to_f64(), v.sup().to_f64()),
            (lo, hi),
            "got [{},{}]",
            v.inf().to_f64(),
            v.sup().to_f64()
        );
    }

    #[test]
    fn exact_sums_and_differences() {
        assert_iv(&add(&iv(1.0, 2.0), &iv(3.0, 4.0)), 4.0, 6.0);
        assert_iv(&sub(&iv(1.0, 2.0), &iv(3.0, 4.0)), -3.0, -1.0);
    }

    #[test]
    fn half_unbounded_difference_spans_the_line() {
        let x = Interval::make(b(0.0), b(f64::INFINITY)).unwrap();
        let d = sub(&x, &x);
        assert!(d.inf().is_minus_infinity());
        assert!(d.sup().is_plus_infinity());
    }

    #[test]
    fn mixed_product_picks_the_extreme_corners() {
        assert_iv(&mul(&iv(-2.0, 3.0), &iv(-5.0, 7.0)), -15.0, 21.0);
        assert_iv(&mul(&iv(-2.0, 3.0), &iv(5.0, 7.0)), -14.0, 21.0);
        assert_iv(&mul(&iv(2.0, 3.0), &iv(-7.0, -5.0)), -21.0, -10.0);
        assert_iv(&mul(&iv(-3.0, -2.0), &iv(-7.0, 5.0)), -15.0, 21.0);
    }

    #[test]
    fn zero_interval_times_the_line_stays_zero() {
        let fmt = FpFormat::BINARY64;
        let z = Interval::zero(fmt);
        let e = Interval::entire(fmt);
        let p = mul(&z, &e);
        assert_eq!(p.inf().classify(), FpClass::PosZero);
        assert_eq!(p.sup().classify(), FpClass::PosZero);
        let p = mul(&e, &z);
        assert_eq!(p.inf().classify(), FpClass::PosZero);
        assert_eq!(p.sup().classify(), FpClass::PosZero);
    }

    #[test]
    fn division_by_a_negative_interval() {
        let q = div(&iv(4.0, 6.0), &iv(-2.0, -1.0)).quotient().unwrap();
        assert_iv(&q, -6.0, -2.0);
    }

    #[test]
    fn division_cases_over_positive_divisors() {
        let q = div(&iv(-6.0, -4.0), &iv(1.0, 2.0)).quotient().unwrap();
        assert_iv(&q, -6.0, -2.0);
        let q = div(&iv(-6.0, 4.0), &iv(1.0, 2.0)).quotient().unwrap();
        assert_iv(&q, -6.0, 4.0);
        let q = div(&iv(4.0, 6.0), &iv(1.0, 2.0)).quotient().unwrap();
        assert_iv(&q, 2.0, 6.0);
    }

    #[test]
    fn division_by_an_interval_containing_zero_is_flagged() {
        assert!(div(&iv(1.0, 2.0), &iv(-1.0, 1.0)).is_zero_division());
        assert!(div(&iv(1.0, 2.0), &iv(0.0, 1.0)).is_zero_division());
        assert!(div(&iv(1.0, 2.0), &iv(-1.0, 0.0)).is_zero_division());
        assert!(div(&iv(1.0, 2.0), &Interval::zero(FpFormat::BINARY64)).is_zero_division());
        assert!(!div(&iv(1.0, 2.0), &iv(0.5, 1.0)).is_zero_division());
    }

    #[test]
    fn overflowing_sum_keeps_a_finite_lower_bound() {
        let max = FpValue::max_finite(FpFormat::BINARY64, false);
        let x = Interval::make(max, max).unwrap();
        let s = add(&x, &x);
        assert_eq!(s.inf().bits(), max.bits());
        assert!(s.sup().is_plus_infinity());
    }

    #[test]
    fn widening_variant_inflates_the_zero_times_unbounded_case() {
        let fmt = FpFormat::BINARY64;
        let z = Interval::zero(fmt);
        let half = Interval::make(b(0.0), b(f64::INFINITY)).unwrap();
        let tight = mul(&z, &half);
        assert!(tight.inf().is_zero() && tight.sup().is_zero());
        let wide = mul_widening(&z, &half);
        assert!(wide.inf().is_minus_infinity());
        assert!(wide.sup().is_plus_infinity());
        // On bounded operands the two variants agree.
        let a = iv(-2.0, 3.0);
        let bnd = iv(-5.0, 7.0);
        let t = mul(&a, &bnd);
        let w = mul_widening(&a, &bnd);
        assert_eq!(t.inf().bits(), w.inf().bits());
        assert_eq!(t.sup().bits(), w.sup().bits());
        let zb = mul_widening(&z, &bnd);
        assert!(zb.inf().is_zero() && zb.sup().is_zero());
    }

    #[test]
    fn all_nan_corner_detection() {
        let fmt = FpFormat::BINARY64;
        let z = Interval::zero(fmt);
        let e = Interval::entire(fmt);
        assert!(mul_corners_all_nan_down(&z, &e));
        assert!(mul_corners_all_nan_up(&z, &e));
        assert!(mul_corners_all_nan_down(&e, &z));
        let half = Interval::make(b(0.0), b(f64::INFINITY)).unwrap();
        assert!(!mul_corners_all_nan_down(&z, &half));
        assert!(!mul_corners_all_nan_up(&half, &z));
        assert!(!mul_corners_all_nan_down(&e, &e));
    }
}
