//! Thin switch between rayon and sequential iteration.

/// How an enumeration is executed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    #[default]
    Auto,
    Sequential,
    Parallel,
}

impl Execution {
    /// Whether this run should use rayon. `Parallel` falls back to sequential
    /// when the crate is built without the `parallel` feature.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self != Execution::Sequential
    }
}

/// Map `f` over `0..n` and collect, in order.
pub fn map_range<T, F>(exec: Execution, n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// Map `f` over `0..n`, keeping only the `Some` results, in order.
pub fn filter_map_range<T, F>(exec: Execution, n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().filter_map(f).collect();
    }
    let _ = exec;
    (0..n).filter_map(f).collect()
}

/// Whether `pred` holds on every element of `items`.
pub fn all<T, F>(exec: Execution, items: &[T], pred: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().all(pred);
    }
    let _ = exec;
    items.iter().all(pred)
}
