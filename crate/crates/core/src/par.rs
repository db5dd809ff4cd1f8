//! Index-parallel map with a sequential fallback.
//!
//! Every data-parallel loop in the crate goes through [`map_indexed`]. Output
//! order always equals index order, so a sequential fold over the returned
//! vector gives bit-identical results with or without the `parallel` feature
//! and under any thread count.

/// Evaluates `f(0), f(1), .., f(n - 1)` and returns the results in index order.
#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

/// Evaluates `f(0), f(1), .., f(n - 1)` and returns the results in index order.
#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Whether this build runs loops on a thread pool.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

/// Caps the global worker count. Returns `false` if the pool was already
/// initialised or the build is sequential.
pub fn set_threads(threads: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        false
    }
}

/// Runs `op` with the parallel loops confined to a single worker thread.
/// Used by the benches to compare against the multi-threaded path.
pub fn single_threaded<R: Send>(op: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .expect("single-thread pool")
            .install(op)
    }
    #[cfg(not(feature = "parallel"))]
    {
        op()
    }
}
