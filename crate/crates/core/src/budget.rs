//! Guard on the size of `[d]^n` style enumerations.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Default number of index tuples an operation may enumerate.
pub const DEFAULT_LIMIT: u64 = 10_000_000;

/// Environment variable that lifts the limit in the command-line driver.
pub const OVERRIDE_ENV: &str = "NUB_ALLOW_LARGE";

static LIMIT: AtomicU64 = AtomicU64::new(DEFAULT_LIMIT);

pub fn limit() -> u64 {
    LIMIT.load(Ordering::Relaxed)
}

/// Replaces the process-wide enumeration limit.
pub fn set_limit(limit: u64) {
    LIMIT.store(limit, Ordering::Relaxed);
}

/// Removes the limit entirely.
pub fn disable() {
    set_limit(u64::MAX);
}

/// Fails with [`Error::BudgetExceeded`] when `required` exceeds the limit.
pub fn check(required: u128) -> Result<()> {
    let limit = limit();
    if required > limit as u128 {
        return Err(Error::BudgetExceeded { required, limit });
    }
    Ok(())
}

/// `d^n` without overflow.
pub fn tuple_count(d: usize, n: usize) -> u128 {
    (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX)
}

/// Checks `d^n` against the limit and returns it as a `usize`.
pub fn check_tuples(d: usize, n: usize) -> Result<usize> {
    let count = tuple_count(d, n);
    check(count)?;
    Ok(count as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refuses_above_default() {
        assert!(check_tuples(10, 7).is_ok());
        assert!(matches!(
            check_tuples(10, 8),
            Err(Error::BudgetExceeded { .. })
        ));
        assert_eq!(tuple_count(2, 200), u128::MAX);
    }
}
