//! Execution strategy for the exhaustive scans.
//!
//! Every scan in the crate is written against [`Exec`]. With the `parallel`
//! feature the index range is split across the rayon pool; without it (or
//! with [`Exec::Sequential`]) the same closure runs on the calling thread.
//! Results are always merged in index order so output does not depend on the
//! strategy.

use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// `Parallel` when the crate was built with rayon, otherwise `Sequential`.
    pub fn effective(self) -> Exec {
        if cfg!(feature = "parallel") {
            self
        } else {
            Exec::Sequential
        }
    }

    /// Collects `f(i)` for every `i` in `range` that yields `Some`, in index order.
    pub fn filter_map<T, F>(self, range: Range<u64>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
    {
        match self.effective() {
            Exec::Sequential => range.filter_map(f).collect(),
            Exec::Parallel => par::filter_map(range, f),
        }
    }

    /// Applies `f` to every item, preserving order.
    pub fn map<I, T, F>(self, items: &[I], f: F) -> Vec<T>
    where
        I: Sync,
        T: Send,
        F: Fn(&I) -> T + Sync + Send,
    {
        match self.effective() {
            Exec::Sequential => items.iter().map(f).collect(),
            Exec::Parallel => par::map(items, f),
        }
    }
}

/// Sizes the global worker pool. Only the first call has an effect; returns
/// whether the requested size is in force. Always false without `parallel`.
pub fn set_threads(n: usize) -> bool {
    par::set_threads(n)
}

#[cfg(feature = "parallel")]
mod par {
    use rayon::prelude::*;
    use std::ops::Range;

    pub fn filter_map<T, F>(range: Range<u64>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
    {
        range.into_par_iter().filter_map(f).collect()
    }

    pub fn map<I, T, F>(items: &[I], f: F) -> Vec<T>
    where
        I: Sync,
        T: Send,
        F: Fn(&I) -> T + Sync + Send,
    {
        items.par_iter().map(f).collect()
    }

    pub fn set_threads(n: usize) -> bool {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_ok() || rayon::current_num_threads() == n
    }
}

#[cfg(not(feature = "parallel"))]
mod par {
    use std::ops::Range;

    pub fn filter_map<T, F>(range: Range<u64>, f: F) -> Vec<T>
    where
        F: Fn(u64) -> Option<T>,
    {
        range.filter_map(f).collect()
    }

    pub fn map<I, T, F>(items: &[I], f: F) -> Vec<T>
    where
        F: Fn(&I) -> T,
    {
        items.iter().map(f).collect()
    }

    pub fn set_threads(_n: usize) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree_and_keep_order() {
        let f = |i: u64| (i % 7 == 3).then_some(i * i);
        let seq = Exec::Sequential.filter_map(0..10_000, f);
        let par = Exec::Parallel.filter_map(0..10_000, f);
        assert_eq!(seq, par);
        assert!(seq.windows(2).all(|w| w[0] < w[1]));
    }
}
