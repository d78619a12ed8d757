//! Data-parallel helpers. With the `parallel` feature these fan out on the
//! current rayon pool; without it they run sequentially. Output order always
//! matches input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, in parallel when the `parallel` feature is on.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_seq(items, f)
    }
}

/// Sequential reference for [`map`].
pub fn map_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Maps `f` over `0..n` and folds the results with `reduce`, which must be
/// associative for the result to be independent of the worker count.
pub fn map_reduce_range<U, F, R>(n: usize, f: F, reduce: R) -> Option<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
    R: Fn(U, U) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).reduce_with(reduce)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_reduce_range_seq(n, f, reduce)
    }
}

pub fn map_reduce_range_seq<U, F, R>(n: usize, f: F, reduce: R) -> Option<U>
where
    F: Fn(usize) -> U,
    R: Fn(U, U) -> U,
{
    (0..n).map(f).reduce(reduce)
}

/// Whether this build fans work out to worker threads.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
