//! Execution strategy for the data-parallel inner loops.
//!
//! With the `parallel` feature (on by default) the parallel strategy runs on
//! the rayon global pool. Without it, `Strategy::Parallel` silently degrades
//! to the sequential loop, so callers never need their own `cfg` switches.

/// How index-parallel work is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

/// Below this many output items the parallel strategy still runs inline.
pub const PAR_THRESHOLD: usize = 32;

impl Strategy {
    /// Strategy to use for a loop of `len` items.
    pub fn for_len(self, len: usize) -> Strategy {
        if len < PAR_THRESHOLD {
            Strategy::Sequential
        } else {
            self
        }
    }

    /// `(0..len).map(f).collect()`, possibly in parallel. Output order is
    /// always index order.
    pub fn map_range<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Strategy::Sequential => (0..len).map(f).collect(),
            Strategy::Parallel => par_map_range(len, f),
        }
    }

    /// Maps over a slice, keeping input order.
    pub fn map_slice<S, T, F>(self, items: &[S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&S) -> T + Sync + Send,
    {
        self.map_range(items.len(), |i| f(&items[i]))
    }
}

#[cfg(feature = "parallel")]
fn par_map_range<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..len).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map_range<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..len).map(f).collect()
}
