//! Execution strategy for the data-parallel inner loops.
//!
//! Every exhaustive check and table build in this crate goes through the two
//! helpers below. With the `parallel` feature they fan out over rayon; without
//! it (or with [`Execution::Sequential`]) they run as plain loops. Results are
//! identical either way: `find_first` always returns the lowest matching index.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when the crate is built without `parallel`.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Below this many items a rayon dispatch costs more than the loop itself.
pub const PARALLEL_THRESHOLD: usize = 1024;

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    #[cfg(feature = "parallel")]
    fn fans_out(self, n: usize) -> bool {
        self.is_parallel() && n >= PARALLEL_THRESHOLD
    }
}

/// Lowest `i < n` for which `f(i)` is `Some`, with its value.
pub fn find_first<T, F>(exec: Execution, n: usize, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.fans_out(n) {
        return (0..n).into_par_iter().find_map_first(f);
    }
    let _ = exec;
    (0..n).find_map(f)
}

/// `(0..n).map(f).collect()`, in index order.
pub fn map_range<T, F>(exec: Execution, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.fans_out(n) {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// Parallel-or-sequential `map` over a slice, preserving order.
pub fn map_slice<S, T, F>(exec: Execution, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    map_range(exec, items.len(), |i| f(&items[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_first_is_lowest_index_in_both_modes() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let hit = find_first(exec, 10_000, |i| (i % 977 == 976).then_some(i));
            assert_eq!(hit, Some(976));
            assert_eq!(find_first(exec, 100, |_| None::<()>), None);
        }
    }

    #[test]
    fn map_range_preserves_order() {
        let seq = map_range(Execution::Sequential, 1000, |i| i * i);
        let par = map_range(Execution::Parallel, 1000, |i| i * i);
        assert_eq!(seq, par);
    }
}
