//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) these run on the rayon pool;
//! without it, or with [`Exec::Sequential`], they run on the calling thread.
//! Results are always produced in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

pub fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Maps `f` over `0..n`, in order.
pub fn map_range<R, F>(exec: Exec, n: u64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// Folds `0..n` in chunks; `chunk` receives a half-open index range.
pub fn sum_chunks<F>(exec: Exec, n: u64, chunk_len: u64, chunk: F) -> u64
where
    F: Fn(u64, u64) -> u64 + Sync + Send,
{
    let chunk_len = chunk_len.max(1);
    let chunks = n.div_ceil(chunk_len);
    let run = |c: u64| chunk(c * chunk_len, ((c + 1) * chunk_len).min(n));
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..chunks).into_par_iter().map(run).sum();
    }
    let _ = exec;
    (0..chunks).map(run).sum()
}

/// Collects, per chunk, the values produced by `chunk`, in index order.
pub fn collect_chunks<R, F>(exec: Exec, n: u64, chunk_len: u64, chunk: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64, u64) -> Vec<R> + Sync + Send,
{
    let chunk_len = chunk_len.max(1);
    let chunks = n.div_ceil(chunk_len);
    let run = |c: u64| chunk(c * chunk_len, ((c + 1) * chunk_len).min(n));
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        let parts: Vec<Vec<R>> = (0..chunks).into_par_iter().map(run).collect();
        return parts.into_iter().flatten().collect();
    }
    let _ = exec;
    (0..chunks).flat_map(run).collect()
}

/// True if any chunk reports true.
pub fn any_chunk<F>(exec: Exec, n: u64, chunk_len: u64, chunk: F) -> bool
where
    F: Fn(u64, u64) -> bool + Sync + Send,
{
    let chunk_len = chunk_len.max(1);
    let chunks = n.div_ceil(chunk_len);
    let run = |c: u64| chunk(c * chunk_len, ((c + 1) * chunk_len).min(n));
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..chunks).into_par_iter().any(run);
    }
    let _ = exec;
    (0..chunks).any(run)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(map(exec, &[1, 2, 3], |x| x * 2), vec![2, 4, 6]);
            assert_eq!(sum_chunks(exec, 1000, 7, |a, b| (a..b).sum()), 499500);
            let v = collect_chunks(exec, 10, 3, |a, b| (a..b).collect());
            assert_eq!(v, (0..10).collect::<Vec<_>>());
            assert!(any_chunk(exec, 100, 9, |a, b| (a..b).any(|x| x == 57)));
            assert_eq!(map_range(exec, 4, |i| i * i), vec![0, 1, 4, 9]);
        }
    }
}
