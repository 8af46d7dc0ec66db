//! Sequential/parallel execution switch.
//!
//! Everything parallel in this crate is a data-parallel map over independent
//! work items (tables in a scan, splits in a chain search) whose results are
//! collected back in input order. That makes the parallel and sequential
//! paths produce identical values, so reports are byte-identical regardless
//! of mode or thread count. Budget accounting is per-item for the same
//! reason: a shared counter would make exactness flags depend on scheduling.
//!
//! With the `parallel` feature disabled, [`ExecMode::Parallel`] silently
//! degrades to the sequential path; the flag is a hint, not a contract.

/// How to run a batch of independent work items.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    /// Use the rayon pool when the `parallel` feature is on.
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

/// Maps `f` over `items`, preserving input order in the output.
pub fn map_collect<T, U, F>(mode: ExecMode, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.into_iter().map(f).collect(),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                // IndexedParallelIterator::collect preserves order.
                items.into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                items.into_iter().map(f).collect()
            }
        }
    }
}

/// Maps `f` over the index range `0..count`, preserving order. Avoids
/// materializing inputs when the item is just its index (table enumeration).
pub fn map_range<U, F>(mode: ExecMode, count: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    match mode {
        ExecMode::Sequential => (0..count).map(f).collect(),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                (0..count).into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                (0..count).map(f).collect()
            }
        }
    }
}
