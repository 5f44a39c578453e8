//! Data-parallel helpers with a sequential fallback.
//!
//! Every hot loop in the crate maps an index range to values and reduces
//! them with [`pairwise_sum`] in index order, so the parallel and sequential
//! paths produce bitwise-identical results.

use std::sync::atomic::{AtomicU8, Ordering};

use num_complex::Complex64;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

static MODE: AtomicU8 = AtomicU8::new(1);

/// Selects the execution mode for subsequent calls. `Parallel` silently
/// degrades to sequential when the `parallel` feature is disabled.
pub fn set_execution(mode: Execution) {
    MODE.store(matches!(mode, Execution::Parallel) as u8, Ordering::Relaxed);
}

pub fn execution() -> Execution {
    if cfg!(feature = "parallel") && MODE.load(Ordering::Relaxed) == 1 {
        Execution::Parallel
    } else {
        Execution::Sequential
    }
}

/// Ranges shorter than this run sequentially regardless of the mode.
pub const MIN_PARALLEL_LEN: usize = 64;

/// Evaluates `f(i)` for `i in 0..len`, returning results in index order.
pub fn map_range<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    map_range_min(len, MIN_PARALLEL_LEN, f)
}

/// [`map_range`] with an explicit sequential cutoff. Use a cutoff of 1 for
/// coarse-grained work items such as optimizer restarts.
pub fn map_range_min<T, F>(len: usize, min_parallel: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match execution() {
        #[cfg(feature = "parallel")]
        Execution::Parallel if len >= min_parallel => (0..len).into_par_iter().map(f).collect(),
        _ => {
            let _ = min_parallel;
            (0..len).map(f).collect()
        }
    }
}

/// Fallible variant of [`map_range`]; the first error in index order wins.
pub fn try_map_range<T, E, F>(len: usize, f: F) -> Result<Vec<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(usize) -> Result<T, E> + Sync + Send,
{
    map_range(len, f).into_iter().collect()
}

const LEAF: usize = 32;

/// Pairwise (cascade) summation with a fixed split pattern.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

pub fn pairwise_sum_complex(values: &[Complex64]) -> Complex64 {
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum_complex(&values[..mid]) + pairwise_sum_complex(&values[mid..])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive_on_integers() {
        let v: Vec<f64> = (0..1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 499_500.0);
        assert_eq!(pairwise_sum(&[]), 0.0);
    }

    #[test]
    fn map_range_preserves_order() {
        let out = map_range(100, |i| i * i);
        assert!(out.iter().enumerate().all(|(i, &v)| v == i * i));
    }
}
