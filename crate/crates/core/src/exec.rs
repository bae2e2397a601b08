//! Evaluation of independent grid points, in parallel or sequentially.
//!
//! Results always come back in input order, so output does not depend on the
//! execution mode or on scheduling.

use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Execution {
    Sequential,
    /// Uses the rayon pool when the `parallel` feature is enabled and falls
    /// back to sequential evaluation otherwise.
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Applies `f` to every item, stopping at the first error in input order.
pub fn try_map<T, R, F>(items: &[T], exec: Execution, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> Result<R> + Sync + Send,
{
    match exec {
        Execution::Sequential => items.iter().enumerate().map(|(i, t)| f(i, t)).collect(),
        Execution::Parallel => parallel_try_map(items, f),
    }
}

#[cfg(feature = "parallel")]
fn parallel_try_map<T, R, F>(items: &[T], f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> Result<R> + Sync + Send,
{
    use rayon::prelude::*;
    let results: Vec<Result<R>> = items.par_iter().enumerate().map(|(i, t)| f(i, t)).collect();
    results.into_iter().collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_try_map<T, R, F>(items: &[T], f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> Result<R> + Sync + Send,
{
    items.iter().enumerate().map(|(i, t)| f(i, t)).collect()
}

/// Runs `op` inside a pool of `workers` threads (or the global pool for
/// `None`).
pub fn with_workers<R: Send>(workers: Option<usize>, op: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if let Some(n) = workers {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            return pool.install(op);
        }
    }
    let _ = workers;
    op()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn order_preserved_in_both_modes() {
        let items: Vec<u64> = (0..200).collect();
        for exec in [Execution::Sequential, Execution::Parallel] {
            let out = try_map(&items, exec, |i, &x| Ok(x * x + i as u64)).unwrap();
            assert!(out.iter().enumerate().all(|(i, &y)| y == (i * i + i) as u64));
        }
    }

    #[test]
    fn first_error_in_input_order() {
        let items: Vec<usize> = (0..50).collect();
        let err = try_map(&items, Execution::Parallel, |_, &x| {
            if x % 7 == 3 {
                Err(Error::InvalidParameter(format!("{x}")))
            } else {
                Ok(x)
            }
        })
        .unwrap_err();
        assert_eq!(err.to_string(), "invalid parameter: 3");
    }
}
