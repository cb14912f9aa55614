//! Execution policy for the data-parallel loops.
//!
//! Every hot loop in the crate (oracle enumeration, matrix products, batch
//! orbit solving, verification sweeps) goes through [`map_collect`] or
//! [`map_sum`]. With the `parallel` feature these dispatch to rayon; without
//! it, or with [`Exec::Sequential`], they run on the calling thread. Results
//! are identical either way: collection preserves input order and every
//! reduction is over exact integers.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    /// Falls back to sequential when the crate is built without `parallel`.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Applies `f` to every item, keeping input order.
pub fn map_collect<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Applies `f` to every item and sums the results.
pub fn map_sum<T, F>(exec: Exec, items: &[T], f: F) -> u64
where
    T: Sync,
    F: Fn(&T) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).sum();
    }
    let _ = exec;
    items.iter().map(f).sum()
}
