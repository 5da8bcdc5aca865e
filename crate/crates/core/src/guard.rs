//! Search-space caps for exhaustive enumerations.

use core::fmt;

/// Default cap on the number of candidates any exhaustive search may visit.
pub const DEFAULT_MAX_SEARCH: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    pub max_search: u64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards { max_search: DEFAULT_MAX_SEARCH }
    }
}

impl Guards {
    pub fn with_max(max_search: u64) -> Guards {
        Guards { max_search }
    }

    /// Checks a candidate count against the cap.
    pub fn admit(&self, needed: u128) -> Result<u64, GuardExceeded> {
        if needed <= self.max_search as u128 {
            Ok(needed as u64)
        } else {
            Err(GuardExceeded { needed, cap: self.max_search })
        }
    }
}

/// A search space larger than the configured cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuardExceeded {
    pub needed: u128,
    pub cap: u64,
}

impl fmt::Display for GuardExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "search space of {} candidates exceeds the cap of {}", self.needed, self.cap)
    }
}
