//! Directed-rounding scalar arithmetic, computed entirely with integer
//! significand arithmetic.
//!
//! Results never depend on the host floating-point environment: every
//! operation decomposes its operands into sign, significand, and quantum
//! exponent, computes an exact (or sticky-tracked) intermediate with plain
//! integers, and re-rounds toward the requested direction. Overflow saturates
//! at the largest finite value when rounding toward zero's side and at the
//! matching infinity when rounding away; underflow passes through the
//! subnormal range and reaches a signed zero only when the exact result is
//! closer to zero than every nonzero representable value.

use core::fmt;
use core::str::FromStr;

use crate::format::FpFormat;
use crate::value::FpValue;

/// The four scalar operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl ArithOp {
    pub const ALL: [ArithOp; 4] = [ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div];

    pub fn name(self) -> &'static str {
        match self {
            ArithOp::Add => "add",
            ArithOp::Sub => "sub",
            ArithOp::Mul => "mul",
            ArithOp::Div => "div",
        }
    }
}

impl fmt::Display for ArithOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ArithOp {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "add" => Ok(ArithOp::Add),
            "sub" => Ok(ArithOp::Sub),
            "mul" => Ok(ArithOp::Mul),
            "div" => Ok(ArithOp::Div),
            _ => Err(()),
        }
    }
}

/// Rounding direction: `Down` takes the greatest representable value not
/// above the exact result, `Up` the least not below it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RoundDir {
    Down,
    Up,
}

impl RoundDir {
    pub fn name(self) -> &'static str {
        match self {
            RoundDir::Down => "down",
            RoundDir::Up => "up",
        }
    }
}

impl fmt::Display for RoundDir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Computes `x op y` rounded in direction `dir`.
///
/// IEEE special semantics apply: NaN operands propagate, invalid operations
/// (`inf - inf` with equal signs, `0 * inf`, `0 / 0`, `inf / inf`) yield NaN,
/// and division of a nonzero finite value by zero yields an infinity whose
/// sign is the XOR of the operand signs. Panics if the operand formats
/// differ.
pub fn dir_op(op: ArithOp, dir: RoundDir, x: FpValue, y: FpValue) -> FpValue {
    assert_eq!(x.format(), y.format(), "dir_op across formats");
    match op {
        ArithOp::Add => add(dir, x, y),
        ArithOp::Sub => add(dir, x, negate(y)),
        ArithOp::Mul => mul(dir, x, y),
        ArithOp::Div => div(dir, x, y),
    }
}

pub fn add_down(x: FpValue, y: FpValue) -> FpValue {
    dir_op(ArithOp::Add, RoundDir::Down, x, y)
}

pub fn add_up(x: FpValue, y: FpValue) -> FpValue {
    dir_op(ArithOp::Add, RoundDir::Up, x, y)
}

pub fn sub_down(x: FpValue, y: FpValue) -> FpValue {
    dir_op(ArithOp::Sub, RoundDir::Down, x, y)
}

pub fn sub_up(x: FpValue, y: FpValue) -> FpValue {
    dir_op(ArithOp::Sub, RoundDir::Up, x, y)
}

pub fn mul_down(x: FpValue, y: FpValue) -> FpValue {
    dir_op(ArithOp::Mul, RoundDir::Down, x, y)
}

pub fn mul_up(x: FpValue, y: FpValue) -> FpValue {
    dir_op(ArithOp::Mul, RoundDir::Up, x, y)
}

pub fn div_down(x: FpValue, y: FpValue) -> FpValue {
    dir_op(ArithOp::Div, RoundDir::Down, x, y)
}

pub fn div_up(x: FpValue, y: FpValue) -> FpValue {
    dir_op(ArithOp::Div, RoundDir::Up, x, y)
}

fn negate(x: FpValue) -> FpValue {
    if x.is_nan() {
        return x;
    }
    FpValue::from_bits(x.format(), x.bits() ^ x.format().sign_bit())
}

/// True when incrementing the truncated magnitude moves toward the rounding
/// direction: rounding a negative value down or a positive value up.
fn rounds_away(negative: bool, dir: RoundDir) -> bool {
    negative == (dir == RoundDir::Down)
}

/// Rounds the exact magnitude `mag * 2^q` (plus an infinitesimal tail when
/// `sticky` is set) into the format, honoring the direction for the value's
/// sign.
fn round_mag(
    fmt: FpFormat,
    negative: bool,
    mag: u128,
    q: i32,
    sticky: bool,
    dir: RoundDir,
) -> FpValue {
    debug_assert!(mag >= 1);
    let m = fmt.frac_bits() as i32;
    let len = 128 - mag.leading_zeros() as i32;
    let e = q + len - 1;
    let mut quantum = core::cmp::max(e, fmt.emin()) - m;
    let shift = quantum - q;
    let (kept, inexact) = if shift <= 0 {
        debug_assert!(!sticky);
        ((mag << -shift) as u64, false)
    } else if shift >= 128 {
        (0u64, true)
    } else {
        let tail = mag & ((1u128 << shift) - 1);
        ((mag >> shift) as u64, sticky || tail != 0)
    };
    let mut sig = kept + (inexact && rounds_away(negative, dir)) as u64;
    if sig == 1u64 << (m + 1) {
        sig >>= 1;
        quantum += 1;
    }
    if sig >= 1u64 << m && quantum + m > fmt.emax() {
        return if rounds_away(negative, dir) {
            FpValue::infinity(fmt, negative)
        } else {
            FpValue::max_finite(fmt, negative)
        };
    }
    FpValue::from_parts(fmt, negative, sig, quantum)
}

fn add(dir: RoundDir, x: FpValue, y: FpValue) -> FpValue {
    let fmt = x.format();
    if x.is_nan() || y.is_nan() {
        return FpValue::nan(fmt);
    }
    match (x.is_infinite(), y.is_infinite()) {
        (true, true) => {
            return if x.is_negative() == y.is_negative() { x } else { FpValue::nan(fmt) }
        }
        (true, false) => return x,
        (false, true) => return y,
        (false, false) => {}
    }
    if x.is_zero() && y.is_zero() {
        return if x.is_negative() == y.is_negative() {
            x
        } else {
            FpValue::zero(fmt, dir == RoundDir::Down)
        };
    }
    // Adding a zero is exact; the other operand passes through unchanged.
    if x.is_zero() {
        return y;
    }
    if y.is_zero() {
        return x;
    }
    let (nx, mx, qx) = x.finite_parts();
    let (ny, my, qy) = y.finite_parts();
    let d = qx - qy;
    if d.unsigned_abs() > fmt.precision() {
        // The smaller operand is below the gap to the larger one's
        // neighbors, so only the direction of the perturbation matters.
        let large = if d > 0 { x } else { y };
        let nudge_up = (nx == ny) != large.is_negative();
        return match (nudge_up, dir) {
            (true, RoundDir::Up) => large.next_up(),
            (true, RoundDir::Down) | (false, RoundDir::Up) => large,
            (false, RoundDir::Down) => large.next_down(),
        };
    }
    let base = core::cmp::min(qx, qy);
    let wx = (mx as i128) << (qx - base);
    let wy = (my as i128) << (qy - base);
    let sum = (if nx { -wx } else { wx }) + (if ny { -wy } else { wy });
    if sum == 0 {
        // Exact cancellation takes the zero matching the rounding direction.
        return FpValue::zero(fmt, dir == RoundDir::Down);
    }
    round_mag(fmt, sum < 0, sum.unsigned_abs(), base, false, dir)
}

fn mul(dir: RoundDir, x: FpValue, y: FpValue) -> FpValue {
    let fmt = x.format();
    if x.is_nan() || y.is_nan() {
        return FpValue::nan(fmt);
    }
    let negative = x.is_negative() != y.is_negative();
    if x.is_infinite() || y.is_infinite() {
        return if x.is_zero() || y.is_zero() {
            FpValue::nan(fmt)
        } else {
            FpValue::infinity(fmt, negative)
        };
    }
    if x.is_zero() || y.is_zero() {
        return FpValue::zero(fmt, negative);
    }
    let (_, mx, qx) = x.finite_parts();
    let (_, my, qy) = y.finite_parts();
    round_mag(fmt, negative, mx as u128 * my as u128, qx + qy, false, dir)
}

fn div(dir: RoundDir, x: FpValue, y: FpValue) -> FpValue {
    let fmt = x.format();
    if x.is_nan() || y.is_nan() {
        return FpValue::nan(fmt);
    }
    let negative = x.is_negative() != y.is_negative();
    match (x.is_infinite(), y.is_infinite()) {
        (true, true) => return FpValue::nan(fmt),
        (true, false) => return FpValue::infinity(fmt, negative),
        (false, true) => return FpValue::zero(fmt, negative),
        (false, false) => {}
    }
    match (x.is_zero(), y.is_zero()) {
        (true, true) => return FpValue::nan(fmt),
        (false, true) => return FpValue::infinity(fmt, negative),
        (true, false) => return FpValue::zero(fmt, negative),
        (false, false) => {}
    }
    let (_, mx, qx) = x.finite_parts();
    let (_, my, qy) = y.finite_parts();
    // Pull the quotient up to at least m + 3 significant bits so rounding
    // always truncates (never pads) the division result.
    let k = fmt.frac_bits() as i32 + 3 + (64 - my.leading_zeros() as i32)
        - (64 - mx.leading_zeros() as i32);
    debug_assert!(k >= 3);
    let n = (mx as u128) << k;
    let mag = n / my as u128;
    let sticky = !n.is_multiple_of(my as u128);
    round_mag(fmt, negative, mag, qx - qy - k, sticky, dir)
}
