//! Resource limits shared by the materializing constructions.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Environment variable overriding [`DEFAULT_MAX_CARRIER`].
pub const MAX_CARRIER_ENV: &str = "CONCEPTUA_MAX_CARRIER";

/// Largest base carrier whose power set may be materialized.
pub const DEFAULT_MAX_CARRIER: usize = 20;

/// Largest number of elements produced by exhaustive enumerations
/// (infomorphism sets, search spaces).
pub const MAX_ENUMERATION: usize = 1 << 16;

/// The power-order bound, read once from the environment.
pub fn max_carrier() -> usize {
    static LIMIT: OnceLock<usize> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var(MAX_CARRIER_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(|v: usize| v.min(30))
            .unwrap_or(DEFAULT_MAX_CARRIER)
    })
}

pub(crate) fn check_power(what: &str, size: usize) -> Result<()> {
    check_power_with(what, size, max_carrier())
}

pub(crate) fn check_power_with(what: &str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        return Err(Error::SizeLimit {
            what: what.to_string(),
            size,
            limit,
        });
    }
    Ok(())
}

pub(crate) fn check_enumeration(what: &str, size: usize) -> Result<()> {
    if size > MAX_ENUMERATION {
        return Err(Error::SizeLimit {
            what: what.to_string(),
            size,
            limit: MAX_ENUMERATION,
        });
    }
    Ok(())
}
