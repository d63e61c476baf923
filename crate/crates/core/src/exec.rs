//! Execution strategy for the data-parallel loops (subset tables, profile
//! search). Results never depend on the strategy: both paths collect in
//! index order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise runs
    /// sequentially.
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

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// `(0..n).map(f)` collected in order.
    pub fn map_range<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// `(0..n).filter_map(f)` collected in order; stops at the first error
    /// in the sequential path, at some error in the parallel one.
    pub fn try_filter_map_range<T, E, F>(self, n: u64, f: F) -> Result<Vec<T>, E>
    where
        T: Send,
        E: Send,
        F: Fn(u64) -> Result<Option<T>, E> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n)
                .into_par_iter()
                .filter_map(|i| f(i).transpose())
                .collect();
        }
        (0..n).filter_map(|i| f(i).transpose()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_agree() {
        let seq = Execution::Sequential.map_range(1000, |i| i * i);
        let par = Execution::Parallel.map_range(1000, |i| i * i);
        assert_eq!(seq, par);

        let even = |i: u64| -> Result<Option<u64>, ()> { Ok(i.is_multiple_of(2).then_some(i)) };
        assert_eq!(
            Execution::Sequential.try_filter_map_range(500, even),
            Execution::Parallel.try_filter_map_range(500, even)
        );
        let failing = |i: u64| if i == 7 { Err(i) } else { Ok(Some(i)) };
        assert_eq!(Execution::Parallel.try_filter_map_range(100, failing), Err(7));
    }
}
