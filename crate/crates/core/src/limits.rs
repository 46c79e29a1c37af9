use std::time::{Duration, Instant};

use crate::error::Error;

/// Size caps and budgets shared by the exact algorithms.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Largest vertex count accepted by the exact width solvers.
    pub exact_limit: usize,
    /// Largest vertex count accepted by canonical coding.
    pub iso_limit: usize,
    /// Maximum number of distinct graphs visited by one containment search.
    pub bfs_budget: usize,
    /// Maximum number of memoized states for the branch-and-bound solver.
    pub bnb_budget: usize,
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            exact_limit: 22,
            iso_limit: 10,
            bfs_budget: 2_000_000,
            bnb_budget: 20_000_000,
            deadline: None,
        }
    }
}

impl Limits {
    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.deadline = Some(Instant::now() + timeout);
        self
    }

    pub fn check_deadline(&self) -> Result<(), Error> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::BudgetExceeded("wall-clock timeout".into())),
            _ => Ok(()),
        }
    }
}
