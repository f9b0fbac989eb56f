//! Resource caps for exhaustive searches.
//!
//! Exact minimum-set searches and forcing-number computations enumerate
//! exponentially many candidates; a [`Budget`] bounds them by candidate
//! count and/or wall time, and exceeding it is a distinct, reported outcome
//! — never a silent truncation.

use std::time::{Duration, Instant};

use thiserror::Error;

/// Limits for an exhaustive search. `None` fields are unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of candidate checks.
    pub max_checks: Option<u64>,
    /// Maximum wall time.
    pub max_time: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_checks: None,
        max_time: None,
    };

    pub fn with_max_checks(checks: u64) -> Budget {
        Budget {
            max_checks: Some(checks),
            ..Budget::UNLIMITED
        }
    }

    pub fn with_max_time(limit: Duration) -> Budget {
        Budget {
            max_time: Some(limit),
            ..Budget::UNLIMITED
        }
    }

    /// Starts metering against this budget.
    pub fn start(&self) -> BudgetMeter {
        BudgetMeter {
            budget: *self,
            started: Instant::now(),
            checks: 0,
        }
    }
}

/// Progress counter for one search run.
#[derive(Clone, Debug)]
pub struct BudgetMeter {
    budget: Budget,
    started: Instant,
    checks: u64,
}

/// Raw stop signal from a meter; searches convert it into a
/// [`BudgetExceeded`] carrying whatever bound they had established.
#[derive(Clone, Copy, Debug)]
pub struct BudgetStop {
    pub checks: u64,
    pub elapsed: Duration,
}

impl BudgetMeter {
    /// Accounts for one candidate check; fails once the budget is spent.
    pub fn tick(&mut self) -> Result<(), BudgetStop> {
        self.checks += 1;
        let over_checks = self.budget.max_checks.is_some_and(|max| self.checks > max);
        let over_time = self
            .budget
            .max_time
            .is_some_and(|max| self.started.elapsed() > max);
        if over_checks || over_time {
            Err(BudgetStop {
                checks: self.checks,
                elapsed: self.started.elapsed(),
            })
        } else {
            Ok(())
        }
    }

    pub fn checks(&self) -> u64 {
        self.checks
    }

    pub fn elapsed(&self) -> Duration {
        self.started.elapsed()
    }
}

/// An exhaustive search ran out of budget before finishing.
#[derive(Clone, Debug, Error)]
#[error("search budget exceeded after {checks} checks in {elapsed:?}{}",
        .lower_bound.map(|b| format!("; result cardinality is at least {}", b)).unwrap_or_default())]
pub struct BudgetExceeded {
    /// Best lower bound established before stopping (meaningful for
    /// minimum-cardinality searches; `None` for heuristic runs).
    pub lower_bound: Option<usize>,
    pub checks: u64,
    pub elapsed: Duration,
}

impl BudgetExceeded {
    pub fn from_stop(stop: BudgetStop, lower_bound: Option<usize>) -> BudgetExceeded {
        BudgetExceeded {
            lower_bound,
            checks: stop.checks,
            elapsed: stop.elapsed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_cap_trips_after_limit() {
        let mut meter = Budget::with_max_checks(2).start();
        assert!(meter.tick().is_ok());
        assert!(meter.tick().is_ok());
        let stop = meter.tick().unwrap_err();
        assert_eq!(stop.checks, 3);
    }

    #[test]
    fn unlimited_never_trips() {
        let mut meter = Budget::UNLIMITED.start();
        for _ in 0..10_000 {
            assert!(meter.tick().is_ok());
        }
        assert_eq!(meter.checks(), 10_000);
    }

    #[test]
    fn time_cap_trips() {
        let mut meter = Budget::with_max_time(Duration::ZERO).start();
        std::thread::sleep(Duration::from_millis(1));
        assert!(meter.tick().is_err());
    }
}
