//! Data-parallel helpers. With the `parallel` feature the work is spread over
//! the current rayon pool; without it, or with [`Parallelism::Sequential`],
//! everything runs on the calling thread. Outputs are in input order either
//! way.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    Rayon,
}

impl Default for Parallelism {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Parallelism::Rayon
        } else {
            Parallelism::Sequential
        }
    }
}

/// Maps `f` over `range`, keeping the `Some` results in order.
pub fn filter_map_range<R, F>(par: Parallelism, range: std::ops::Range<u64>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> Option<R> + Sync + Send,
{
    match par {
        #[cfg(feature = "parallel")]
        Parallelism::Rayon => {
            use rayon::prelude::*;
            range.into_par_iter().filter_map(f).collect()
        }
        _ => range.filter_map(f).collect(),
    }
}

pub fn map_slice<T, R, F>(par: Parallelism, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match par {
        #[cfg(feature = "parallel")]
        Parallelism::Rayon => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Runs `f` inside a pool of `threads` workers (0 = rayon default).
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        if threads > 0 {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
                return pool.install(f);
            }
        }
    }
    let _ = threads;
    f()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let f = |i: u64| (i % 3 == 0).then_some(i * i);
        let a = filter_map_range(Parallelism::Sequential, 0..1000, f);
        let b = filter_map_range(Parallelism::Rayon, 0..1000, f);
        assert_eq!(a, b);
    }
}
