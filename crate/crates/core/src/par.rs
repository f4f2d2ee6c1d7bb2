//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) the helpers dispatch to rayon
//! when asked for [`Execution::Parallel`]; without it every call runs
//! sequentially. Results always come back in input order.

/// How an independent batch of work is scheduled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// `Parallel` only when the crate was built with rayon support.
    pub fn effective(self) -> Execution {
        if cfg!(feature = "parallel") {
            self
        } else {
            Execution::Sequential
        }
    }
}

/// Order-preserving map over a slice.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Order-preserving map over `0..n`.
pub fn map_range<R, F>(exec: Execution, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

/// Order-preserving filter-map over `0..n`.
pub fn filter_map_range<R, F>(exec: Execution, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().filter_map(f).collect()
        }
        _ => (0..n).filter_map(f).collect(),
    }
}

/// Caps the global worker pool. Only the first call in a process has any
/// effect; later calls return `false`.
pub fn init_jobs(jobs: Option<usize>) -> bool {
    #[cfg(feature = "parallel")]
    {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(j) = jobs.filter(|&j| j > 0) {
            b = b.num_threads(j);
        }
        b.build_global().is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree_and_keep_order() {
        let xs: Vec<u32> = (0..1000).collect();
        let a = map(Execution::Sequential, &xs, |x| x * 3);
        let b = map(Execution::Parallel, &xs, |x| x * 3);
        assert_eq!(a, b);
        let c = filter_map_range(Execution::Parallel, 100, |i| (i % 7 == 0).then_some(i));
        assert_eq!(c, (0..100).filter(|i| i % 7 == 0).collect::<Vec<_>>());
    }
}
