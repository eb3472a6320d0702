//! Data-parallel execution helpers.
//!
//! With the `parallel` feature (default) batch maps run on the rayon pool;
//! without it they run sequentially. Outputs are collected in index order,
//! so results are identical across thread counts and both feature modes.
//! Operations benchmarked against their sequential twins call
//! [`map_indexed_seq`] directly.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..n`, collecting results in index order.
pub(crate) fn map_indexed<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Sequential counterpart of [`map_indexed`], compiled in every mode.
pub(crate) fn map_indexed_seq<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    (0..n).map(f).collect()
}
