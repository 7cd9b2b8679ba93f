//! Floating-point values of a given format: encoding, classification,
//! comparison, and enumeration.

use alloc::vec::Vec;
use core::fmt;

use crate::format::{FpFormat, ENUMERATION_CAP};

/// One value of an [`FpFormat`]: the format descriptor plus the IEEE bit
/// encoding (sign, biased exponent, trailing significand) packed in the low
/// `total_bits` of a `u64`.
///
/// All NaN encodings of a format collapse to one canonical NaN, so two
/// `FpValue`s of the same format denote the same semantic value exactly when
/// their bits are equal. Note that `-0.0` and `+0.0` are distinct values
/// (distinct bits) that compare IEEE-equal.
#[derive(Clone, Copy, Debug)]
pub struct FpValue {
    format: FpFormat,
    bits: u64,
}

/// IEEE classification of an [`FpValue`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FpClass {
    NegInfinity,
    NegNormal,
    NegSubnormal,
    NegZero,
    PosZero,
    PosSubnormal,
    PosNormal,
    PosInfinity,
    Nan,
}

/// Result of [`fp_compare`]: the IEEE four-way comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FpCmp {
    Less,
    Equal,
    Greater,
    Unordered,
}

/// A format whose encoding count exceeds [`ENUMERATION_CAP`], refused by
/// [`FpValue::enumerate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationTooLarge {
    pub format: FpFormat,
}

impl fmt::Display for EnumerationTooLarge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "format {} has {} encodings, above the enumeration cap of {}",
            self.format.name(),
            self.format.encodings(),
            ENUMERATION_CAP
        )
    }
}

impl FpValue {
    /// Reinterprets raw bits in the given format. Bits above the format
    /// width are discarded and every NaN encoding collapses to the canonical
    /// NaN.
    pub fn from_bits(format: FpFormat, bits: u64) -> FpValue {
        let mask = format.sign_bit() | format.exp_field_mask() | format.frac_field_mask();
        let bits = bits & mask;
        let exp = (bits & format.exp_field_mask()) >> format.frac_bits();
        let frac = bits & format.frac_field_mask();
        if exp == format.max_biased_exp() && frac != 0 {
            return FpValue::nan(format);
        }
        FpValue { format, bits }
    }

    /// The bit encoding. The canonical NaN is the only NaN pattern ever
    /// stored.
    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn format(self) -> FpFormat {
        self.format
    }

    /// The canonical (quiet) NaN of the format.
    pub fn nan(format: FpFormat) -> FpValue {
        let quiet = 1u64 << (format.frac_bits() - 1);
        FpValue { format, bits: format.exp_field_mask() | quiet }
    }

    pub fn zero(format: FpFormat, negative: bool) -> FpValue {
        let bits = if negative { format.sign_bit() } else { 0 };
        FpValue { format, bits }
    }

    pub fn infinity(format: FpFormat, negative: bool) -> FpValue {
        let sign = if negative { format.sign_bit() } else { 0 };
        FpValue { format, bits: sign | format.exp_field_mask() }
    }

    /// The finite value of greatest magnitude.
    pub fn max_finite(format: FpFormat, negative: bool) -> FpValue {
        let sign = if negative { format.sign_bit() } else { 0 };
        let exp = (format.max_biased_exp() - 1) << format.frac_bits();
        FpValue { format, bits: sign | exp | format.frac_field_mask() }
    }

    /// The subnormal of least magnitude.
    pub fn min_subnormal(format: FpFormat, negative: bool) -> FpValue {
        let sign = if negative { format.sign_bit() } else { 0 };
        FpValue { format, bits: sign | 1 }
    }

    /// Encodes the exact value `(-1)^negative * sig * 2^quantum`.
    ///
    /// Panics if that value is not representable in the format; `sig == 0`
    /// yields a signed zero.
    pub(crate) fn from_parts(format: FpFormat, negative: bool, sig: u64, quantum: i32) -> FpValue {
        if sig == 0 {
            return FpValue::zero(format, negative);
        }
        let m = format.frac_bits() as i32;
        let len = 64 - sig.leading_zeros() as i32;
        let e = quantum + len - 1;
        assert!(e <= format.emax(), "value exceeds the finite range");
        let target_quantum = core::cmp::max(e, format.emin()) - m;
        let shift = target_quantum - quantum;
        let sig = if shift > 0 {
            assert!(
                shift < 64 && sig & ((1u64 << shift) - 1) == 0,
                "value needs more precision than the format has"
            );
            sig >> shift
        } else {
            assert!(-shift <= 64 - len, "shifted significand overflows");
            sig << -shift
        };
        let sign = if negative { format.sign_bit() } else { 0 };
        let bits = if sig >= 1u64 << m {
            debug_assert!(sig < 1u64 << (m + 1));
            let be = (target_quantum + m + format.bias()) as u64;
            debug_assert!(be >= 1 && be < format.max_biased_exp());
            sign | (be << format.frac_bits()) | (sig - (1u64 << m))
        } else {
            debug_assert!(target_quantum == format.emin() - m);
            sign | sig
        };
        FpValue { format, bits }
    }

    /// Decomposes a finite value into `(negative, sig, quantum)` with value
    /// `(-1)^negative * sig * 2^quantum`. Panics on NaN or infinities.
    pub(crate) fn finite_parts(self) -> (bool, u64, i32) {
        let fmt = self.format;
        let exp = (self.bits & fmt.exp_field_mask()) >> fmt.frac_bits();
        assert!(exp != fmt.max_biased_exp(), "finite_parts on a non-finite value");
        let frac = self.bits & fmt.frac_field_mask();
        let negative = self.bits & fmt.sign_bit() != 0;
        let m = fmt.frac_bits() as i32;
        if exp == 0 {
            (negative, frac, fmt.emin() - m)
        } else {
            (negative, frac | (1u64 << m), exp as i32 - fmt.bias() - m)
        }
    }

    pub fn classify(self) -> FpClass {
        let fmt = self.format;
        let exp = (self.bits & fmt.exp_field_mask()) >> fmt.frac_bits();
        let frac = self.bits & fmt.frac_field_mask();
        let negative = self.bits & fmt.sign_bit() != 0;
        if exp == fmt.max_biased_exp() {
            if frac != 0 {
                FpClass::Nan
            } else if negative {
                FpClass::NegInfinity
            } else {
                FpClass::PosInfinity
            }
        } else if exp == 0 {
            match (frac == 0, negative) {
                (true, true) => FpClass::NegZero,
                (true, false) => FpClass::PosZero,
                (false, true) => FpClass::NegSubnormal,
                (false, false) => FpClass::PosSubnormal,
            }
        } else if negative {
            FpClass::NegNormal
        } else {
            FpClass::PosNormal
        }
    }

    pub fn is_nan(self) -> bool {
        self.classify() == FpClass::Nan
    }

    pub fn is_not_nan(self) -> bool {
        !self.is_nan()
    }

    /// True for both zeros.
    pub fn is_zero(self) -> bool {
        matches!(self.classify(), FpClass::NegZero | FpClass::PosZero)
    }

    pub fn is_finite(self) -> bool {
        !matches!(self.classify(), FpClass::Nan | FpClass::NegInfinity | FpClass::PosInfinity)
    }

    pub fn is_infinite(self) -> bool {
        matches!(self.classify(), FpClass::NegInfinity | FpClass::PosInfinity)
    }

    pub fn is_plus_infinity(self) -> bool {
        self.classify() == FpClass::PosInfinity
    }

    pub fn is_minus_infinity(self) -> bool {
        self.classify() == FpClass::NegInfinity
    }

    /// Sign-bit test: true for every non-NaN value with a clear sign bit,
    /// including `+0.0`.
    pub fn is_positive(self) -> bool {
        self.is_not_nan() && self.bits & self.format.sign_bit() == 0
    }

    /// Sign-bit test: true for every non-NaN value with a set sign bit,
    /// including `-0.0`.
    pub fn is_negative(self) -> bool {
        self.is_not_nan() && self.bits & self.format.sign_bit() != 0
    }

    /// Position on the ordered real line, with the two zeros collapsed to 0.
    /// Monotone for all non-NaN values; panics on NaN.
    pub(crate) fn ordered_index(self) -> i64 {
        assert!(self.is_not_nan(), "ordered_index on NaN");
        let mag = (self.bits & !self.format.sign_bit()) as i64;
        if self.bits & self.format.sign_bit() != 0 {
            -mag
        } else {
            mag
        }
    }

    /// The least value strictly greater than `self` in the format, with
    /// infinities as endpoints. Panics on NaN and on `+inf`.
    pub fn next_up(self) -> FpValue {
        let idx = self.ordered_index();
        let inf = self.format.exp_field_mask() as i64;
        assert!(idx < inf, "next_up on +inf");
        FpValue::from_ordered_index(self.format, idx + 1)
    }

    /// The greatest value strictly less than `self` in the format, with
    /// infinities as endpoints. Panics on NaN and on `-inf`.
    pub fn next_down(self) -> FpValue {
        let idx = self.ordered_index();
        let inf = self.format.exp_field_mask() as i64;
        assert!(idx > -inf, "next_down on -inf");
        FpValue::from_ordered_index(self.format, idx - 1)
    }

    fn from_ordered_index(format: FpFormat, idx: i64) -> FpValue {
        if idx < 0 {
            FpValue { format, bits: format.sign_bit() | (-idx) as u64 }
        } else {
            FpValue { format, bits: idx as u64 }
        }
    }

    /// Every distinct semantic value of the format, in ascending IEEE order
    /// (`-0.0` immediately before `+0.0`), with the canonical NaN last.
    ///
    /// Refused for formats with more than [`ENUMERATION_CAP`] encodings.
    pub fn enumerate(format: FpFormat) -> Result<Vec<FpValue>, EnumerationTooLarge> {
        if format.encodings() > ENUMERATION_CAP as u128 {
            return Err(EnumerationTooLarge { format });
        }
        let inf_mag = format.exp_field_mask();
        let mut out = Vec::with_capacity(2 * inf_mag as usize + 3);
        for mag in (1..=inf_mag).rev() {
            out.push(FpValue { format, bits: format.sign_bit() | mag });
        }
        out.push(FpValue::zero(format, true));
        out.push(FpValue::zero(format, false));
        for mag in 1..=inf_mag {
            out.push(FpValue { format, bits: mag });
        }
        out.push(FpValue::nan(format));
        Ok(out)
    }

    /// The binary64 value with `x`'s bits (NaN payloads collapse).
    pub fn from_f64(x: f64) -> FpValue {
        FpValue::from_bits(FpFormat::BINARY64, x.to_bits())
    }

    /// Exact conversion to `f64`. Every supported format embeds in binary64.
    pub fn to_f64(self) -> f64 {
        match self.classify() {
            FpClass::Nan => f64::NAN,
            FpClass::PosInfinity => f64::INFINITY,
            FpClass::NegInfinity => f64::NEG_INFINITY,
            _ => {
                let (negative, sig, quantum) = self.finite_parts();
                let wide = FpValue::from_parts(FpFormat::BINARY64, negative, sig, quantum);
                f64::from_bits(wide.bits)
            }
        }
    }
}

/// IEEE four-way comparison. NaN is unordered against everything (itself
/// included) and the two zeros are equal. Panics if the formats differ.
pub fn fp_compare(x: FpValue, y: FpValue) -> FpCmp {
    assert_eq!(x.format(), y.format(), "fp_compare across formats");
    if x.is_nan() || y.is_nan() {
        return FpCmp::Unordered;
    }
    match x.ordered_index().cmp(&y.ordered_index()) {
        core::cmp::Ordering::Less => FpCmp::Less,
        core::cmp::Ordering::Equal => FpCmp::Equal,
        core::cmp::Ordering::Greater => FpCmp::Greater,
    }
}

/// IEEE `<=`.
pub fn fp_le(x: FpValue, y: FpValue) -> bool {
    matches!(fp_compare(x, y), FpCmp::Less | FpCmp::Equal)
}

/// IEEE `<`.
pub fn fp_lt(x: FpValue, y: FpValue) -> bool {
    fp_compare(x, y) == FpCmp::Less
}

/// IEEE `>=`.
pub fn fp_ge(x: FpValue, y: FpValue) -> bool {
    matches!(fp_compare(x, y), FpCmp::Greater | FpCmp::Equal)
}

/// IEEE `>`.
pub fn fp_gt(x: FpValue, y: FpValue) -> bool {
    fp_compare(x, y) == FpCmp::Greater
}

/// IEEE `=`: in particular `fp_eq(-0.0, +0.0)` and never true for NaN.
pub fn fp_eq(x: FpValue, y: FpValue) -> bool {
    fp_compare(x, y) == FpCmp::Equal
}
