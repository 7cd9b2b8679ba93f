//! Intervals with floating-point endpoints, and the NaN-discarding endpoint
//! selectors the interval operations are built from.

use core::fmt;

use crate::exact::ExactReal;
use crate::format::FpFormat;
use crate::round::{dir_op, ArithOp, RoundDir};
use crate::value::{fp_lt, FpValue};

/// An unvalidated endpoint pair, as produced by endpoint selection.
#[derive(Clone, Copy, Debug)]
pub struct RawPair {
    pub lo: FpValue,
    pub hi: FpValue,
}

/// The first constraint a candidate endpoint pair violates.
///
/// A valid interval needs a lower bound that is finite or minus infinity, an
/// upper bound that is finite or plus infinity, and bounds ordered by the
/// floating-point comparison (so NaN endpoints fail and `[+0,-0]` passes).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvalidInterval {
    LowerBound,
    UpperBound,
    Ordering,
}

impl fmt::Display for InvalidInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvalidInterval::LowerBound => "lower bound must be finite or -inf",
            InvalidInterval::UpperBound => "upper bound must be finite or +inf",
            InvalidInterval::Ordering => "lower bound must not exceed upper bound",
        })
    }
}

/// A nonempty interval of extended reals with representable endpoints.
#[derive(Clone, Copy, Debug)]
pub struct Interval {
    inf: FpValue,
    sup: FpValue,
}

impl Interval {
    /// Validates an endpoint pair, reporting the first violated constraint.
    ///
    /// Panics if the endpoint formats differ.
    pub fn make(lo: FpValue, hi: FpValue) -> Result<Interval, InvalidInterval> {
        assert_eq!(lo.format(), hi.format(), "interval endpoints across formats");
        if !(lo.is_finite() || lo.is_minus_infinity()) {
            return Err(InvalidInterval::LowerBound);
        }
        if !(hi.is_finite() || hi.is_plus_infinity()) {
            return Err(InvalidInterval::UpperBound);
        }
        if fp_lt(hi, lo) {
            return Err(InvalidInterval::Ordering);
        }
        Ok(Interval { inf: lo, sup: hi })
    }

    /// The degenerate interval `[+0, +0]`.
    pub fn zero(fmt: FpFormat) -> Interval {
        let z = FpValue::zero(fmt, false);
        Interval { inf: z, sup: z }
    }

    /// The whole extended real line, `[-inf, +inf]`.
    pub fn entire(fmt: FpFormat) -> Interval {
        Interval {
            inf: FpValue::infinity(fmt, true),
            sup: FpValue::infinity(fmt, false),
        }
    }

    pub fn inf(&self) -> FpValue {
        self.inf
    }

    pub fn sup(&self) -> FpValue {
        self.sup
    }

    pub fn format(&self) -> FpFormat {
        self.inf.format()
    }

    /// True when the finite real `a` lies in the set of reals this interval
    /// denotes. Infinite bounds contribute open ends: `[-inf, +inf]` contains
    /// every real but not the infinities themselves.
    pub fn contains_real(&self, a: &ExactReal) -> bool {
        assert!(a.is_finite(), "containment is defined for finite reals");
        let above_inf = self.inf.is_minus_infinity() || self.inf.to_exact().unwrap() <= *a;
        let below_sup = self.sup.is_plus_infinity() || *a <= self.sup.to_exact().unwrap();
        above_inf && below_sup
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = crate::text::format_decimal(self.inf);
        if self.sup.is_plus_infinity() {
            write!(f, "[{},+inf]", lo)
        } else {
            write!(f, "[{},{}]", lo, crate::text::format_decimal(self.sup))
        }
    }
}

/// The smaller operand under the floating-point order, preferring `x` when
/// `y` is NaN (and therefore returning NaN only if both are).
///
/// Zeros compare equal, so `min2(+0, -0)` is `-0` and `min2(-0, +0)` is `+0`:
/// ties keep `y` unless it is NaN.
pub fn min2(x: FpValue, y: FpValue) -> FpValue {
    if fp_lt(x, y) {
        x
    } else if y.is_not_nan() {
        y
    } else {
        x
    }
}

/// Dual of [`min2`].
pub fn max2(x: FpValue, y: FpValue) -> FpValue {
    if fp_lt(y, x) {
        x
    } else if y.is_not_nan() {
        y
    } else {
        x
    }
}

/// The minimum of four values, ignoring NaNs unless all four are NaN.
pub fn min4(w: FpValue, x: FpValue, y: FpValue, z: FpValue) -> FpValue {
    min2(w, min2(x, min2(y, z)))
}

/// Dual of [`min4`].
pub fn max4(w: FpValue, x: FpValue, y: FpValue, z: FpValue) -> FpValue {
    max2(w, max2(x, max2(y, z)))
}

/// [`min4`], with an all-NaN input collapsing to `+0`.
pub fn min4_or_zero(w: FpValue, x: FpValue, y: FpValue, z: FpValue) -> FpValue {
    if w.is_nan() && x.is_nan() && y.is_nan() && z.is_nan() {
        FpValue::zero(w.format(), false)
    } else {
        min4(w, x, y, z)
    }
}

/// [`max4`], with an all-NaN input collapsing to `+0`.
pub fn max4_or_zero(w: FpValue, x: FpValue, y: FpValue, z: FpValue) -> FpValue {
    if w.is_nan() && x.is_nan() && y.is_nan() && z.is_nan() {
        FpValue::zero(w.format(), false)
    } else {
        max4(w, x, y, z)
    }
}

/// The tightest enclosure selectable from the four endpoint pairings: each
/// corner is rounded down for the lower bound and up for the upper bound,
/// then the bounds are chosen by the NaN-discarding selectors.
///
/// The branchy operations must stay inside this hull (and meet it on the
/// non-degenerate side); it is the comparison baseline, not the production
/// path.
pub fn corner_hull(op: ArithOp, x: &Interval, y: &Interval) -> RawPair {
    let corners = [
        (x.inf(), y.inf()),
        (x.inf(), y.sup()),
        (x.sup(), y.inf()),
        (x.sup(), y.sup()),
    ];
    let down: [FpValue; 4] =
        corners.map(|(a, b)| dir_op(op, RoundDir::Down, a, b));
    let up: [FpValue; 4] = corners.map(|(a, b)| dir_op(op, RoundDir::Up, a, b));
    RawPair {
        lo: min4_or_zero(down[0], down[1], down[2], down[3]),
        hi: max4_or_zero(up[0], up[1], up[2], up[3]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::{fp_eq, FpClass};

    fn e3m2() -> FpFormat {
        FpFormat::new(3, 2).unwrap()
    }

    fn b(x: f64) -> FpValue {
        FpValue::from_f64(x)
    }

    #[test]
    fn make_accepts_ordinary_and_unbounded_intervals() {
        assert!(Interval::make(b(1.0), b(2.0)).is_ok());
        assert!(Interval::make(b(f64::NEG_INFINITY), b(f64::INFINITY)).is_ok());
        assert!(Interval::make(b(3.0), b(3.0)).is_ok());
        // The zeros compare equal, so this ordering is accepted.
        assert!(Interval::make(b(0.0), b(-0.0)).is_ok());
    }

    #[test]
    fn make_reports_the_first_violated_constraint() {
        let nan = FpValue::nan(FpFormat::BINARY64);
        let err = |r: Result<Interval, InvalidInterval>| r.unwrap_err();
        assert_eq!(err(Interval::make(b(f64::INFINITY), b(1.0))), InvalidInterval::LowerBound);
        assert_eq!(err(Interval::make(nan, b(1.0))), InvalidInterval::LowerBound);
        assert_eq!(
            err(Interval::make(b(1.0), b(f64::NEG_INFINITY))),
            InvalidInterval::UpperBound
        );
        assert_eq!(err(Interval::make(b(1.0), nan)), InvalidInterval::UpperBound);
        assert_eq!(err(Interval::make(b(2.0), b(1.0))), InvalidInterval::Ordering);
        assert_eq!(
            err(Interval::make(b(f64::INFINITY), b(f64::NEG_INFINITY))),
            InvalidInterval::LowerBound
        );
    }

    #[test]
    fn zero_and_entire_constants() {
        let fmt = e3m2();
        let z = Interval::zero(fmt);
        assert_eq!(z.inf().classify(), FpClass::PosZero);
        assert_eq!(z.sup().classify(), FpClass::PosZero);
        let e = Interval::entire(fmt);
        assert!(e.inf().is_minus_infinity());
        assert!(e.sup().is_plus_infinity());
    }

    #[test]
    fn containment_uses_closed_finite_bounds() {
        let x = Interval::make(b(-1.0), b(2.0)).unwrap();
        assert!(x.contains_real(&ExactReal::from_integer(-1)));
        assert!(x.contains_real(&ExactReal::from_integer(2)));
        assert!(x.contains_real(&ExactReal::zero()));
        assert!(!x.contains_real(&ExactReal::from_integer(3)));
        let entire = Interval::entire(FpFormat::BINARY64);
        assert!(entire.contains_real(&ExactReal::from_integer(i64::MAX)));
        let half = Interval::make(b(0.0), b(f64::INFINITY)).unwrap();
        assert!(half.contains_real(&ExactReal::from_integer(1 << 60)));
        assert!(!half.contains_real(&ExactReal::from_integer(-1)));
    }

    #[test]
    fn selectors_ignore_nan_unless_total() {
        let fmt = FpFormat::BINARY64;
        let nan = FpValue::nan(fmt);
        assert!(fp_eq(min2(nan, b(1.0)), b(1.0)));
        assert!(fp_eq(min2(b(1.0), nan), b(1.0)));
        assert!(min2(nan, nan).is_nan());
        assert!(fp_eq(max2(nan, b(-3.0)), b(-3.0)));
        assert!(fp_eq(min4(nan, b(2.0), nan, b(-2.0)), b(-2.0)));
        assert!(fp_eq(max4(nan, b(2.0), nan, b(-2.0)), b(2.0)));
        assert!(min4(nan, nan, nan, nan).is_nan());
        let z = min4_or_zero(nan, nan, nan, nan);
        assert_eq!(z.classify(), FpClass::PosZero);
        let z = max4_or_zero(nan, nan, nan, nan);
        assert_eq!(z.classify(), FpClass::PosZero);
        assert!(fp_eq(min4_or_zero(nan, nan, b(5.0), nan), b(5.0)));
    }

    #[test]
    fn selector_zero_ties_keep_the_second_operand() {
        let pz = b(0.0);
        let nz = b(-0.0);
        assert_eq!(min2(pz, nz).classify(), FpClass::NegZero);
        assert_eq!(min2(nz, pz).classify(), FpClass::PosZero);
        assert_eq!(max2(pz, nz).classify(), FpClass::NegZero);
        assert_eq!(max2(nz, pz).classify(), FpClass::PosZero);
    }

    #[test]
    fn corner_hull_of_a_simple_sum() {
        let x = Interval::make(b(1.0), b(2.0)).unwrap();
        let y = Interval::make(b(3.0), b(4.0)).unwrap();
        let hull = corner_hull(ArithOp::Add, &x, &y);
        assert!(fp_eq(hull.lo, b(4.0)));
        assert!(fp_eq(hull.hi, b(6.0)));
    }

    #[test]
    fn corner_hull_discards_nan_corners() {
        let fmt = FpFormat::BINARY64;
        // [0,0] * [-inf,+inf]: every corner is 0 * inf, an invalid product.
        let hull = corner_hull(ArithOp::Mul, &Interval::zero(fmt), &Interval::entire(fmt));
        assert_eq!(hull.lo.classify(), FpClass::PosZero);
        assert_eq!(hull.hi.classify(), FpClass::PosZero);
        // [0,1] * [-inf,+inf]: two corners are invalid, two are infinite.
        let x = Interval::make(b(0.0), b(1.0)).unwrap();
        let hull = corner_hull(ArithOp::Mul, &x, &Interval::entire(fmt));
        assert!(hull.lo.is_minus_infinity());
        assert!(hull.hi.is_plus_infinity());
    }
}
