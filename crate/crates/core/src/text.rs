//! Text forms of values: decimal and hexadecimal output, and exact parsing
//! of number literals.
//!
//! Parsing never rounds. A literal becomes a sign plus an exact magnitude
//! (a rational, zero, infinity, or NaN), and the caller chooses the rounding
//! direction when materializing it into a format, so `-0.0` stays a negative
//! zero and `0.1` can be pushed downward or upward as an interval bound
//! requires.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{exact_round, ExactReal};
use crate::format::FpFormat;
use crate::round::RoundDir;
use crate::value::{FpClass, FpValue};

/// Decimal rendering.
///
/// Finite values of 53-bit-significand width print as the shortest decimal
/// that reads back to the same value; every other format prints the exact
/// decimal expansion, which is finite because the values are dyadic. Zeros
/// print as `0` and `-0`, infinities as `inf` and `-inf`.
pub fn format_decimal(v: FpValue) -> String {
    match v.classify() {
        FpClass::Nan => return String::from("nan"),
        FpClass::PosInfinity => return String::from("inf"),
        FpClass::NegInfinity => return String::from("-inf"),
        FpClass::PosZero => return String::from("0"),
        FpClass::NegZero => return String::from("-0"),
        _ => {}
    }
    if v.format().is_binary64() {
        let f = v.to_f64();
        let a = if f < 0.0 { -f } else { f };
        return if !(1e-4..1e16).contains(&a) {
            format!("{:e}", f)
        } else {
            format!("{}", f)
        };
    }
    let (negative, sig, quantum) = v.finite_parts();
    let sign = if negative { "-" } else { "" };
    if quantum >= 0 {
        let whole = BigUint::from(sig) << quantum as u32;
        return format!("{}{}", sign, whole);
    }
    // sig / 2^k scaled by 10^k is the integer sig * 5^k, so the value has
    // exactly k fractional digits before trimming.
    let k = (-quantum) as usize;
    let scaled = BigUint::from(sig) * BigUint::from(5u8).pow(k as u32);
    let mut digits = scaled.to_string();
    while digits.len() < k + 1 {
        digits.insert(0, '0');
    }
    let point = digits.len() - k;
    let (whole, frac) = digits.split_at(point);
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        format!("{}{}", sign, whole)
    } else {
        format!("{}{}.{}", sign, whole, frac)
    }
}

/// Hexadecimal rendering: `0x1.<frac>p<exp>` for normal values,
/// `0x0.<frac>p<emin>` for subnormal ones, with trailing zero digits
/// trimmed. Zeros print as `0x0p+0` and `-0x0p+0`.
pub fn format_hex(v: FpValue) -> String {
    match v.classify() {
        FpClass::Nan => return String::from("nan"),
        FpClass::PosInfinity => return String::from("inf"),
        FpClass::NegInfinity => return String::from("-inf"),
        FpClass::PosZero => return String::from("0x0p+0"),
        FpClass::NegZero => return String::from("-0x0p+0"),
        _ => {}
    }
    let fmt = v.format();
    let m = fmt.frac_bits();
    let (negative, sig, quantum) = v.finite_parts();
    let sign = if negative { "-" } else { "" };
    let normal = sig >> m == 1;
    let (lead, exp) = if normal {
        ("1", quantum + m as i32)
    } else {
        ("0", fmt.emin())
    };
    let frac = sig & ((1u64 << m) - 1);
    let pad = (4 - m % 4) % 4;
    let width = ((m + pad) / 4) as usize;
    let mut nibbles = if width == 0 {
        String::new()
    } else {
        format!("{:0width$x}", frac << pad, width = width)
    };
    while nibbles.ends_with('0') {
        nibbles.pop();
    }
    if nibbles.is_empty() {
        format!("{}0x{}p{:+}", sign, lead, exp)
    } else {
        format!("{}0x{}.{}p{:+}", sign, lead, nibbles, exp)
    }
}

/// A parsed literal: a sign and an exact, sign-free magnitude.
#[derive(Clone, Debug)]
pub struct ParsedNumber {
    pub negative: bool,
    pub magnitude: Magnitude,
}

/// The magnitude of a parsed literal. `Finite` is always positive.
#[derive(Clone, Debug)]
pub enum Magnitude {
    Zero,
    Finite(BigRational),
    Infinity,
    Nan,
}

/// Error produced by [`parse_number`].
#[derive(Clone, Debug)]
pub struct NumberParseError {
    pub message: String,
}

impl fmt::Display for NumberParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn parse_error<T>(message: &str) -> Result<T, NumberParseError> {
    Err(NumberParseError { message: String::from(message) })
}

/// Parses a number literal exactly.
///
/// Accepted forms: `inf`, `nan`, decimal (`12`, `0.25`, `2.5e-3`), and
/// hexadecimal with a mandatory binary exponent (`0x1.8p+1`), each with an
/// optional leading sign.
pub fn parse_number(s: &str) -> Result<ParsedNumber, NumberParseError> {
    let (negative, rest) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    if rest.is_empty() {
        return parse_error("empty number");
    }
    let magnitude = match rest {
        "inf" => Magnitude::Infinity,
        "nan" => Magnitude::Nan,
        _ => {
            let q = if let Some(hex) = rest.strip_prefix("0x").or_else(|| rest.strip_prefix("0X"))
            {
                parse_hex_magnitude(hex)?
            } else {
                parse_decimal_magnitude(rest)?
            };
            if q.is_zero() {
                Magnitude::Zero
            } else {
                Magnitude::Finite(q)
            }
        }
    };
    Ok(ParsedNumber { negative, magnitude })
}

fn parse_digits(s: &str, radix: u32) -> Result<BigUint, NumberParseError> {
    if s.is_empty() {
        return parse_error("missing digits");
    }
    // parse_bytes tolerates underscore separators; this grammar does not.
    if !s.chars().all(|c| c.is_digit(radix)) {
        return parse_error("invalid digit");
    }
    match BigUint::parse_bytes(s.as_bytes(), radix) {
        Some(n) => Ok(n),
        None => parse_error("invalid digit"),
    }
}

fn parse_exponent(s: &str) -> Result<i32, NumberParseError> {
    if s.is_empty() || s == "+" || s == "-" {
        return parse_error("missing exponent digits");
    }
    match s.parse::<i32>() {
        Ok(e) if (-100_000..=100_000).contains(&e) => Ok(e),
        Ok(_) => parse_error("exponent out of range"),
        Err(_) => parse_error("invalid exponent"),
    }
}

fn split_mantissa(s: &str) -> Result<(&str, &str), NumberParseError> {
    let mut parts = s.splitn(2, '.');
    let whole = parts.next().unwrap_or("");
    let frac = parts.next().unwrap_or("");
    if frac.contains('.') {
        return parse_error("more than one decimal point");
    }
    if whole.is_empty() && frac.is_empty() {
        return parse_error("missing digits");
    }
    Ok((whole, frac))
}

fn parse_decimal_magnitude(s: &str) -> Result<BigRational, NumberParseError> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], parse_exponent(&s[i + 1..])?),
        None => (s, 0),
    };
    let (whole, frac) = split_mantissa(mantissa)?;
    let mut digits = String::with_capacity(whole.len() + frac.len());
    digits.push_str(whole);
    digits.push_str(frac);
    let n = parse_digits(&digits, 10)?;
    let scale = exp as i64 - frac.len() as i64;
    let ten = BigUint::from(10u8);
    Ok(if scale >= 0 {
        BigRational::from_integer(BigInt::from(n * ten.pow(scale as u32)))
    } else {
        BigRational::new(BigInt::from(n), BigInt::from(ten.pow((-scale) as u32)))
    })
}

fn parse_hex_magnitude(s: &str) -> Result<BigRational, NumberParseError> {
    let Some(p) = s.find(['p', 'P']) else {
        return parse_error("hexadecimal literal needs a p exponent");
    };
    let exp = parse_exponent(&s[p + 1..])?;
    let (whole, frac) = split_mantissa(&s[..p])?;
    let mut digits = String::with_capacity(whole.len() + frac.len());
    digits.push_str(whole);
    digits.push_str(frac);
    let n = parse_digits(&digits, 16)?;
    let scale = exp as i64 - 4 * frac.len() as i64;
    Ok(if scale >= 0 {
        BigRational::from_integer(BigInt::from(n) << scale as u64)
    } else {
        BigRational::new(BigInt::from(n), BigInt::one() << (-scale) as u64)
    })
}

/// Materializes a parsed literal in `fmt`, rounding any inexact magnitude in
/// the given direction. Signed zeros keep their sign.
pub fn to_value(p: &ParsedNumber, dir: RoundDir, fmt: FpFormat) -> FpValue {
    match &p.magnitude {
        Magnitude::Nan => FpValue::nan(fmt),
        Magnitude::Infinity => FpValue::infinity(fmt, p.negative),
        Magnitude::Zero => FpValue::zero(fmt, p.negative),
        Magnitude::Finite(q) => {
            let signed = if p.negative { -q.clone() } else { q.clone() };
            exact_round(&ExactReal::Finite(signed), dir, fmt)
        }
    }
}
