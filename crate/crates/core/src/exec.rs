//! Execution helpers behind the `parallel` feature.
//!
//! Every helper preserves input order and only uses reductions that are
//! exactly associative and commutative over finite floats, so output is
//! byte-identical at any thread count and equal to the sequential fallback.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How an operation should execute.
///
/// `Parallel` uses the ambient rayon pool when the `parallel` feature is
/// enabled and degrades to the sequential path otherwise. `Sequential` is
/// the single-threaded reference path, always available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    #[default]
    Parallel,
    Sequential,
}

/// Maps `f` over `0..n` preserving index order.
pub fn map_indexed<T, F>(n: usize, mode: ExecMode, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    #[cfg(feature = "parallel")]
    if mode == ExecMode::Parallel {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = mode;
    (0..n).map(f).collect()
}

/// Maximum of `f` over `0..n`; negative infinity when `n == 0`.
pub fn max_over<F>(n: usize, mode: ExecMode, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    #[cfg(feature = "parallel")]
    if mode == ExecMode::Parallel {
        return (0..n)
            .into_par_iter()
            .map(f)
            .reduce(|| f64::NEG_INFINITY, f64::max);
    }
    let _ = mode;
    (0..n).map(f).fold(f64::NEG_INFINITY, f64::max)
}
