//! Thin switch between rayon data-parallel loops and plain sequential ones.
//!
//! Heavy inner loops (membership scans, parallelepiped point enumeration,
//! witness searches) call these helpers instead of touching rayon directly,
//! so the crate builds with `--no-default-features` into a fully sequential
//! binary with identical results. Outputs are collected in input order, which
//! keeps reports byte-stable across thread counts.

/// Maps `items` to a vector, preserving input order.
#[cfg(feature = "parallel")]
pub fn map_vec<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_vec<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Sequential twin of [`map_vec`], always available so benchmarks can compare
/// the two paths in one build.
pub fn map_vec_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// True if any item satisfies `f`. Short-circuits where the backend allows.
#[cfg(feature = "parallel")]
pub fn any<T, F>(items: Vec<T>, f: F) -> bool
where
    T: Send,
    F: Fn(T) -> bool + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().any(f)
}

#[cfg(not(feature = "parallel"))]
pub fn any<T, F>(items: Vec<T>, f: F) -> bool
where
    F: Fn(T) -> bool,
{
    items.into_iter().any(f)
}

/// Caps the global thread pool. A cap of 0 or an already-built pool is a
/// no-op. Call once at process start; library code never calls this.
pub fn limit_threads(threads: usize) {
    #[cfg(feature = "parallel")]
    {
        if threads > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
    }
}
