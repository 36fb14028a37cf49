//! Resource ceilings for enumerating operations.
//!
//! Every operation whose cost grows with a group order, a Grassmannian size or
//! a raw enumeration count takes a [`Budget`] and fails with
//! [`Error::BudgetExceeded`] before doing the work when the predicted size is
//! over the limit. Long loops additionally poll [`Budget::check_time`].

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};

/// Name of the environment variable read by [`Budget::from_env`].
pub const BUDGET_ENV: &str = "GEOMFORGE_BUDGET";

#[derive(Debug, Clone, Serialize)]
pub struct Budget {
    pub max_group_order: u128,
    pub max_grassmannian: u128,
    pub max_enumeration: u128,
    pub time_ceiling_secs: u64,
    #[serde(skip)]
    started: Instant,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_group_order: 10_000_000,
            max_grassmannian: 2_000_000,
            max_enumeration: 40_000_000,
            time_ceiling_secs: 600,
            started: Instant::now(),
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_group_order: u128::MAX,
            max_grassmannian: u128::MAX,
            max_enumeration: u128::MAX,
            time_ceiling_secs: u64::MAX,
            started: Instant::now(),
        }
    }

    /// Parses `key=value` pairs separated by commas, e.g.
    /// `max_group_order=5000,time_secs=10`. Unspecified keys keep defaults.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut b = Budget::default();
        for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("budget entry '{part}' lacks '='")))?;
            let n: u128 = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("budget value '{value}' is not an integer")))?;
            match key.trim() {
                "max_group_order" => b.max_group_order = n,
                "max_grassmannian" => b.max_grassmannian = n,
                "max_enumeration" => b.max_enumeration = n,
                "time_secs" | "time_ceiling_secs" => {
                    b.time_ceiling_secs = u64::try_from(n).unwrap_or(u64::MAX)
                }
                other => return Err(Error::Parse(format!("unknown budget key '{other}'"))),
            }
        }
        Ok(b)
    }

    /// Defaults, overridden by `GEOMFORGE_BUDGET` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(s) => Budget::parse(&s),
            Err(_) => Ok(Budget::default()),
        }
    }

    /// Restarts the wall clock used by [`Budget::check_time`].
    pub fn restart(&mut self) {
        self.started = Instant::now();
    }

    pub fn elapsed(&self) -> Duration {
        self.started.elapsed()
    }

    pub fn check_group_order(&self, what: &str, needed: u128) -> Result<()> {
        check(what, needed, self.max_group_order)
    }

    pub fn check_grassmannian(&self, what: &str, needed: u128) -> Result<()> {
        check(what, needed, self.max_grassmannian)
    }

    pub fn check_enumeration(&self, what: &str, needed: u128) -> Result<()> {
        check(what, needed, self.max_enumeration)
    }

    pub fn check_time(&self) -> Result<()> {
        if self.started.elapsed().as_secs() >= self.time_ceiling_secs {
            Err(Error::TimeExceeded(self.time_ceiling_secs))
        } else {
            Ok(())
        }
    }
}

fn check(what: &str, needed: u128, limit: u128) -> Result<()> {
    if needed > limit {
        Err(Error::BudgetExceeded {
            what: what.to_string(),
            needed,
            limit,
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_overrides_only_named_keys() {
        let b = Budget::parse("max_group_order=12, time_secs=3").unwrap();
        assert_eq!(b.max_group_order, 12);
        assert_eq!(b.time_ceiling_secs, 3);
        assert_eq!(b.max_grassmannian, Budget::default().max_grassmannian);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Budget::parse("nonsense").is_err());
        assert!(Budget::parse("max_group_order=abc").is_err());
        assert!(Budget::parse("colour=3").is_err());
    }

    #[test]
    fn over_limit_is_typed_error() {
        let b = Budget::parse("max_enumeration=10").unwrap();
        assert!(b.check_enumeration("x", 10).is_ok());
        assert!(matches!(
            b.check_enumeration("x", 11),
            Err(Error::BudgetExceeded { needed: 11, limit: 10, .. })
        ));
    }
}
