//! Conditional data parallelism.
//!
//! With the `parallel` feature (on by default) these helpers dispatch to rayon;
//! without it they fall back to plain iterators. Results are always returned in
//! input order, so callers see identical output either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving order.
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
        items.iter().map(f).collect()
    }
}

/// Maps `f` over `0..n`, preserving order.
pub fn map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
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

/// True iff `f` holds for every index in `0..n`.
pub fn all_range<F>(n: usize, f: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().all(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).all(f)
    }
}

/// First index in `0..n` (lowest) for which `f` returns `Some`.
pub fn find_first_range<U, F>(n: usize, f: F) -> Option<U>
where
    U: Send,
    F: Fn(usize) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().filter_map(f).find_first(|_| true)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).find_map(f)
    }
}

/// Runs `f` with parallel helpers confined to the calling thread.
///
/// Used by the benches to compare the two execution paths inside one binary.
pub fn sequential<R: Send, F: FnOnce() -> R + Send>(f: F) -> R {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("single-thread pool").install(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        f()
    }
}
