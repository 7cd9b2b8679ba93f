//! Binary floating-point format descriptions.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

/// Cap on `2^(1 + exponent_bits + significand_bits)` above which exhaustive
/// enumeration of a format is refused.
pub const ENUMERATION_CAP: u64 = 1 << 16;

/// An IEEE-754-style binary format: one sign bit, `exp_bits` exponent bits,
/// `frac_bits` trailing significand bits, with subnormals, two signed zeros,
/// two infinities, and a single canonical NaN.
///
/// Formats range from tiny enumerable ones (e.g. `E3M2`, six bits wide) up to
/// binary64. Wider formats are rejected so that every encoding fits in a
/// `u64` and every value embeds exactly into binary64.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpFormat {
    exp_bits: u8,
    frac_bits: u8,
}

/// Rejected [`FpFormat`] parameters or an unreadable format spec string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormatError {
    /// Exponent width outside `2..=11`.
    ExponentBits { given: u32 },
    /// Trailing significand width outside `1..=52`.
    SignificandBits { given: u32 },
    /// A format spec string that is neither `binary64` nor `E<k>M<m>`.
    UnknownSpec(String),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::ExponentBits { given } => {
                write!(f, "exponent width {given} not in 2..=11")
            }
            FormatError::SignificandBits { given } => {
                write!(f, "significand width {given} not in 1..=52")
            }
            FormatError::UnknownSpec(s) => {
                write!(f, "unknown format spec {s:?} (expected binary64 or E<k>M<m>)")
            }
        }
    }
}

impl FpFormat {
    /// The IEEE-754 binary64 format.
    pub const BINARY64: FpFormat = FpFormat { exp_bits: 11, frac_bits: 52 };

    /// Builds a format with the given exponent and trailing significand
    /// widths, rejecting parameters outside the supported range.
    pub fn new(exp_bits: u32, frac_bits: u32) -> Result<FpFormat, FormatError> {
        if !(2..=11).contains(&exp_bits) {
            return Err(FormatError::ExponentBits { given: exp_bits });
        }
        if !(1..=52).contains(&frac_bits) {
            return Err(FormatError::SignificandBits { given: frac_bits });
        }
        Ok(FpFormat { exp_bits: exp_bits as u8, frac_bits: frac_bits as u8 })
    }

    /// Exponent field width in bits.
    pub fn exp_bits(self) -> u32 {
        self.exp_bits as u32
    }

    /// Trailing significand field width in bits.
    pub fn frac_bits(self) -> u32 {
        self.frac_bits as u32
    }

    /// Full significand precision, counting the implicit leading bit.
    pub fn precision(self) -> u32 {
        self.frac_bits() + 1
    }

    /// Total encoding width: sign, exponent, and trailing significand.
    pub fn total_bits(self) -> u32 {
        1 + self.exp_bits() + self.frac_bits()
    }

    /// Number of distinct bit encodings, `2^total_bits`.
    pub fn encodings(self) -> u128 {
        1u128 << self.total_bits()
    }

    /// Exponent bias.
    pub fn bias(self) -> i32 {
        (1i32 << (self.exp_bits() - 1)) - 1
    }

    /// Largest unbiased exponent of a normal value.
    pub fn emax(self) -> i32 {
        self.bias()
    }

    /// Smallest unbiased exponent of a normal value; subnormals share it.
    pub fn emin(self) -> i32 {
        1 - self.bias()
    }

    /// True when this is the binary64 format.
    pub fn is_binary64(self) -> bool {
        self == Self::BINARY64
    }

    /// Human-readable label: `binary64`, or `E<k>M<m>` for minifloats.
    pub fn name(self) -> String {
        if self.is_binary64() {
            String::from("binary64")
        } else {
            format!("E{}M{}", self.exp_bits, self.frac_bits)
        }
    }

    pub(crate) fn exp_field_mask(self) -> u64 {
        ((1u64 << self.exp_bits()) - 1) << self.frac_bits()
    }

    pub(crate) fn frac_field_mask(self) -> u64 {
        (1u64 << self.frac_bits()) - 1
    }

    pub(crate) fn sign_bit(self) -> u64 {
        1u64 << (self.exp_bits() + self.frac_bits())
    }

    /// Biased exponent value reserved for infinities and NaN.
    pub(crate) fn max_biased_exp(self) -> u64 {
        (1u64 << self.exp_bits()) - 1
    }
}

impl FromStr for FpFormat {
    type Err = FormatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "binary64" {
            return Ok(FpFormat::BINARY64);
        }
        let unknown = || FormatError::UnknownSpec(String::from(s));
        let rest = s.strip_prefix('E').ok_or_else(unknown)?;
        let m_pos = rest.find('M').ok_or_else(unknown)?;
        let exp: u32 = rest[..m_pos].parse().map_err(|_| unknown())?;
        let frac: u32 = rest[m_pos + 1..].parse().map_err(|_| unknown())?;
        FpFormat::new(exp, frac)
    }
}

impl fmt::Display for FpFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary64_parameters() {
        let f = FpFormat::BINARY64;
        assert_eq!(f.exp_bits(), 11);
        assert_eq!(f.frac_bits(), 52);
        assert_eq!(f.bias(), 1023);
        assert_eq!(f.emin(), -1022);
        assert_eq!(f.emax(), 1023);
        assert_eq!(f.name(), "binary64");
    }

    #[test]
    fn minifloat_parameters() {
        let f = FpFormat::new(3, 2).unwrap();
        assert_eq!(f.total_bits(), 6);
        assert_eq!(f.encodings(), 64);
        assert_eq!(f.bias(), 3);
        assert_eq!(f.emin(), -2);
        assert_eq!(f.emax(), 3);
        assert_eq!(f.name(), "E3M2");
    }

    #[test]
    fn spec_strings_round_trip() {
        assert_eq!("binary64".parse::<FpFormat>().unwrap(), FpFormat::BINARY64);
        assert_eq!("E3M2".parse::<FpFormat>().unwrap(), FpFormat::new(3, 2).unwrap());
        assert_eq!("E2M1".parse::<FpFormat>().unwrap(), FpFormat::new(2, 1).unwrap());
        assert!("E1M2".parse::<FpFormat>().is_err());
        assert!("E12M2".parse::<FpFormat>().is_err());
        assert!("E3M0".parse::<FpFormat>().is_err());
        assert!("E3M53".parse::<FpFormat>().is_err());
        assert!("half".parse::<FpFormat>().is_err());
        assert!("E3".parse::<FpFormat>().is_err());
    }

    #[test]
    fn rejected_parameters() {
        assert!(matches!(FpFormat::new(1, 2), Err(FormatError::ExponentBits { given: 1 })));
        assert!(matches!(FpFormat::new(12, 2), Err(FormatError::ExponentBits { given: 12 })));
        assert!(matches!(FpFormat::new(3, 0), Err(FormatError::SignificandBits { given: 0 })));
        assert!(matches!(FpFormat::new(3, 53), Err(FormatError::SignificandBits { given: 53 })));
    }
}
