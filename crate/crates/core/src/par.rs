//! Data-parallel helpers.
//!
//! With the `parallel` feature (on by default) the `map` helpers fan out over
//! rayon's pool; without it, or when [`Exec::Sequential`] is requested, they
//! run on the calling thread. Output order always matches input order, so
//! results never depend on scheduling.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Default node-visit budget for exhaustive searches.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Execution strategy for the fan-out points of the search code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when work will actually be spread over worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Order-preserving map over a slice.
pub fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if exec == Exec::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Order-preserving fallible map; the first error in input order wins.
pub fn try_map<T, R, F>(exec: Exec, items: &[T], f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync + Send,
{
    map(exec, items, f).into_iter().collect()
}

/// Run `f` inside a pool with `threads` workers. Without the `parallel`
/// feature this simply calls `f`.
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        if threads > 0 {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
                return pool.install(f);
            }
        }
    }
    let _ = threads;
    f()
}

/// Shared node-visit counter for exhaustive searches. Safe to share across
/// worker threads.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    /// Count one node visit.
    pub fn tick(&self) -> Result<()> {
        self.charge(1)
    }

    pub fn charge(&self, n: u64) -> Result<()> {
        let before = self.used.fetch_add(n, Ordering::Relaxed);
        if before.saturating_add(n) > self.limit {
            Err(Error::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order_in_both_modes() {
        let xs: Vec<u32> = (0..100).collect();
        let a = map(Exec::Parallel, &xs, |x| x * 3);
        let b = map(Exec::Sequential, &xs, |x| x * 3);
        assert_eq!(a, b);
        assert_eq!(a[7], 21);
    }

    #[test]
    fn budget_trips() {
        let b = Budget::new(3);
        assert!(b.tick().is_ok());
        assert!(b.charge(2).is_ok());
        assert_eq!(b.tick(), Err(Error::BudgetExceeded { limit: 3 }));
    }

    #[test]
    fn try_map_reports_first_error() {
        let xs = [1, 2, 3, 4];
        let r = try_map(Exec::Parallel, &xs, |&x| {
            if x >= 3 {
                Err(Error::InvalidParameter(format!("{x}")))
            } else {
                Ok(x)
            }
        });
        assert_eq!(r, Err(Error::InvalidParameter("3".into())));
    }
}
