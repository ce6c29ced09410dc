use thiserror::Error;

/// Errors raised by the divisor-series library.
///
/// Every variant signals invalid input or a violated numerical guard; none is
/// used for "the identity did not hold", which is reported as data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{name} must be a positive integer, got {value}")]
    NonPositive { name: &'static str, value: String },

    #[error("{name} = {value} is not supported: {reason}")]
    Domain {
        name: &'static str,
        value: String,
        reason: &'static str,
    },

    #[error("precision of {0} digits is below the minimum of 20")]
    PrecisionTooLow(u32),

    #[error("rounding guard violated for c_{k}({n}): {detail}")]
    RoundingGuard { k: String, n: String, detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn require_positive(name: &'static str, value: &rug::Integer) -> Result<()> {
    if *value <= 0 {
        return Err(Error::NonPositive {
            name,
            value: value.to_string(),
        });
    }
    Ok(())
}

pub(crate) fn require_positive_u64(name: &'static str, value: u64) -> Result<()> {
    if value == 0 {
        return Err(Error::NonPositive {
            name,
            value: "0".into(),
        });
    }
    Ok(())
}
