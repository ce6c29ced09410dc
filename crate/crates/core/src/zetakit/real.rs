use std::fmt;

use rug::float::Constant;
use rug::{Float, Rational};

use crate::error::{Error, Result};

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Working precision in decimal digits.
///
/// Arithmetic runs with [`Precision::GUARD_DIGITS`] extra digits, which are
/// dropped again when a value is printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    pub const MIN_DIGITS: u32 = 20;
    pub const GUARD_DIGITS: u32 = 10;
    pub const DEFAULT_DIGITS: u32 = 50;

    pub fn new(digits: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::PrecisionTooLow(digits));
        }
        Ok(Self(digits))
    }

    pub fn digits(self) -> u32 {
        self.0
    }

    /// Binary precision including guard digits.
    pub fn bits(self) -> u32 {
        (f64::from(self.0 + Self::GUARD_DIGITS) * LOG2_10).ceil() as u32
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self(Self::DEFAULT_DIGITS)
    }
}

/// An arbitrary-precision real tagged with the precision it was computed at.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct BigReal {
    value: Float,
    precision: Precision,
}

impl BigReal {
    /// Wraps `value`, rounding it to the working precision.
    pub fn new(value: Float, precision: Precision) -> Self {
        let mut value = value;
        value.set_prec(precision.bits());
        Self { value, precision }
    }

    pub fn from_rational(q: &Rational, precision: Precision) -> Self {
        Self {
            value: Float::with_val(precision.bits(), q),
            precision,
        }
    }

    pub fn zero(precision: Precision) -> Self {
        Self {
            value: Float::new(precision.bits()),
            precision,
        }
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn into_float(self) -> Float {
        self.value
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn abs_diff(&self, other: &BigReal) -> BigReal {
        let prec = self.precision.max(other.precision);
        let diff = Float::with_val(prec.bits(), &self.value - &other.value).abs();
        BigReal::new(diff, prec)
    }

    /// Scientific notation with exactly `digits` significant digits.
    pub fn to_scientific(&self, digits: u32) -> String {
        format_scientific(&self.value, digits)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_scientific(self.precision.digits()))
    }
}

/// A value together with a rigorous bound on its distance to the quantity it
/// approximates (truncation plus rounding).
#[derive(Clone, Debug)]
pub struct Approximation {
    pub value: BigReal,
    pub error_bound: BigReal,
}

impl Approximation {
    /// Number of leading decimal digits the bound certifies.
    pub fn certified_digits(&self) -> i64 {
        digits_correct(self.error_bound.value(), self.value.precision().digits())
    }
}

pub fn pi(precision: Precision) -> BigReal {
    BigReal::new(Float::with_val(precision.bits(), Constant::Pi), precision)
}

pub fn log2(precision: Precision) -> BigReal {
    BigReal::new(Float::with_val(precision.bits(), Constant::Log2), precision)
}

/// `⌊−log₁₀ |err|⌋`, capped at `cap`; an exact zero error earns the cap.
pub fn digits_correct(abs_error: &Float, cap: u32) -> i64 {
    if abs_error.is_zero() {
        return i64::from(cap);
    }
    let lg = Float::with_val(64, abs_error.abs_ref()).log10();
    let digits = (-lg).floor().to_f64() as i64;
    digits.min(i64::from(cap))
}

pub(crate) fn format_scientific(value: &Float, digits: u32) -> String {
    let digits = digits.max(1) as usize;
    if value.is_zero() {
        return if digits == 1 {
            "0e0".to_string()
        } else {
            format!("0.{}e0", "0".repeat(digits - 1))
        };
    }
    let (negative, mantissa, exponent) = value.to_sign_string_exp(10, Some(digits));
    let exponent = exponent.unwrap_or(0);
    // to_sign_string_exp yields 0.ddd × 10^exponent
    let sign = if negative { "-" } else { "" };
    let (head, tail) = mantissa.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{}", exponent - 1)
    } else {
        format!("{sign}{head}.{tail}e{}", exponent - 1)
    }
}
