//! Exact representation of floating-point values on the extended real line,
//! and correct rounding from exact values back into a format.
//!
//! This module is the reference route for rounding: [`exact_round`] works
//! directly from the set definition of the directed roundings (the greatest
//! representable value not above the input, or the least not below it),
//! using arbitrary-precision integers. It deliberately shares no arithmetic
//! with the scalar operations in [`crate::round`], so the two routes can be
//! checked against each other.

use core::cmp::Ordering;
use core::fmt;

use alloc::string::ToString;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::format::FpFormat;
use crate::round::RoundDir;
use crate::value::FpValue;

/// A point on the extended real line: a rational number or an infinity.
///
/// Every finite floating-point value is rational, so this type captures all
/// non-NaN values exactly, and exact sums, differences, products, and
/// quotients of them.
#[derive(Clone, Debug)]
pub enum ExactReal {
    MinusInfinity,
    Finite(BigRational),
    PlusInfinity,
}

impl ExactReal {
    pub fn zero() -> ExactReal {
        ExactReal::Finite(BigRational::zero())
    }

    pub fn from_integer(n: i64) -> ExactReal {
        ExactReal::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExactReal::Finite(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExactReal::Finite(q) => Some(q),
            _ => None,
        }
    }
}

impl PartialEq for ExactReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExactReal {}

impl PartialOrd for ExactReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactReal {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExactReal::*;
        match (self, other) {
            (MinusInfinity, MinusInfinity) | (PlusInfinity, PlusInfinity) => Ordering::Equal,
            (MinusInfinity, _) | (_, PlusInfinity) => Ordering::Less,
            (_, MinusInfinity) | (PlusInfinity, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactReal::MinusInfinity => f.write_str("-inf"),
            ExactReal::PlusInfinity => f.write_str("+inf"),
            ExactReal::Finite(q) => f.write_str(&q.to_string()),
        }
    }
}

impl FpValue {
    /// The exact extended-real value of `self`, or `None` for NaN.
    ///
    /// Both zeros map to the rational zero.
    pub fn to_exact(self) -> Option<ExactReal> {
        if self.is_nan() {
            return None;
        }
        if self.is_infinite() {
            return Some(if self.is_negative() {
                ExactReal::MinusInfinity
            } else {
                ExactReal::PlusInfinity
            });
        }
        if self.is_zero() {
            return Some(ExactReal::zero());
        }
        let (negative, sig, quantum) = self.finite_parts();
        let mag = BigUint::from(sig);
        let (num, den) = if quantum >= 0 {
            (mag << quantum as u32, BigUint::one())
        } else {
            (mag, BigUint::one() << (-quantum) as u32)
        };
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        let q = BigRational::new(BigInt::from_biguint(sign, num), BigInt::from_biguint(Sign::Plus, den));
        Some(ExactReal::Finite(q))
    }
}

/// Compares `num / den` (both positive) against `factor * 2^exp`.
fn cmp_scaled(num: &BigUint, den: &BigUint, factor: u64, exp: i64) -> Ordering {
    let mut lhs = num.clone();
    let mut rhs = den * factor;
    if exp >= 0 {
        rhs <<= exp as u64;
    } else {
        lhs <<= (-exp) as u64;
    }
    lhs.cmp(&rhs)
}

/// True when `num / den >= 2^exp` for positive `num` and `den`.
fn at_least_pow2(num: &BigUint, den: &BigUint, exp: i64) -> bool {
    cmp_scaled(num, den, 1, exp) != Ordering::Less
}

/// Rounds an exact extended-real value into `fmt` by the set definition.
///
/// `Down` yields the greatest value in the format (with `-inf` adjoined) not
/// above `r`; `Up` yields the least (with `+inf` adjoined) not below it. In
/// particular a finite value beyond the largest finite magnitude rounds to
/// that largest magnitude on the zero side and to the infinity on the other,
/// and an exact zero yields `+0`. Nonzero values too small for the format
/// collapse to the zero carrying their sign.
pub fn exact_round(r: &ExactReal, dir: RoundDir, fmt: FpFormat) -> FpValue {
    let q = match r {
        ExactReal::MinusInfinity => return FpValue::infinity(fmt, true),
        ExactReal::PlusInfinity => return FpValue::infinity(fmt, false),
        ExactReal::Finite(q) => q,
    };
    if q.is_zero() {
        return FpValue::zero(fmt, false);
    }
    let negative = q.numer().is_negative();
    debug_assert!(q.denom().is_positive(), "exact_round expects a positive denominator");
    let num = q.numer().magnitude();
    let den = q.denom().magnitude();
    let m = fmt.frac_bits() as i64;
    let away = negative == (dir == RoundDir::Down);
    let max_sig = (1u64 << fmt.precision()) - 1;
    if cmp_scaled(num, den, max_sig, (fmt.emax() as i64) - m) == Ordering::Greater {
        return if away {
            FpValue::infinity(fmt, negative)
        } else {
            FpValue::max_finite(fmt, negative)
        };
    }
    // Exponent of the magnitude: the unique e with 2^e <= |q| < 2^(e+1).
    let guess = num.bits() as i64 - den.bits() as i64;
    let e = if at_least_pow2(num, den, guess) { guess } else { guess - 1 };
    let quantum = core::cmp::max(e, fmt.emin() as i64) - m;
    let (scaled_num, scaled_den) = if quantum >= 0 {
        (num.clone(), den << quantum as u64)
    } else {
        (num << (-quantum) as u64, den.clone())
    };
    let digits = &scaled_num / &scaled_den;
    let mut sig = u64::try_from(&digits).expect("rounded significand exceeds the format precision");
    if away && &digits * &scaled_den != scaled_num {
        sig += 1;
    }
    FpValue::from_parts(fmt, negative, sig, quantum as i32)
}
