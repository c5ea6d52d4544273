//! Wall-clock budgets for the search oracle.

use std::time::{Duration, Instant};

use amalgam_core::oracle::Clock;

/// Expires once the budget has elapsed since construction.
#[derive(Clone, Copy, Debug)]
pub struct WallClock {
    deadline: Option<Instant>,
}

impl WallClock {
    pub fn new(budget: Option<Duration>) -> WallClock {
        WallClock { deadline: budget.map(|b| Instant::now() + b) }
    }

    pub fn from_millis(ms: Option<u64>) -> WallClock {
        WallClock::new(ms.map(Duration::from_millis))
    }
}

impl Clock for WallClock {
    fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}
