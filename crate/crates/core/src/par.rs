//! Data-parallel helpers. With the `parallel` feature these fan out over
//! rayon when asked to; without it everything runs on the calling thread.
//! Results always come back in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `items.iter().flat_map(f)` preserving input order.
pub(crate) fn flat_map<T, U, F>(parallel: bool, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Vec<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.par_iter().flat_map_iter(f).collect();
    }
    let _ = parallel;
    items.iter().flat_map(f).collect()
}

/// Index of the maximum of `key` over `items`; ties resolve to the lowest
/// index, so the answer does not depend on scheduling.
pub(crate) fn argmax_by_key<T, K, F>(parallel: bool, items: &[T], key: F) -> Option<usize>
where
    T: Sync,
    K: Ord + Send,
    F: Fn(&T) -> K + Sync + Send,
{
    let pick = |a: (K, usize), b: (K, usize)| {
        if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
            b
        } else {
            a
        }
    };
    #[cfg(feature = "parallel")]
    if parallel {
        return items
            .par_iter()
            .enumerate()
            .map(|(i, t)| (key(t), i))
            .reduce_with(pick)
            .map(|(_, i)| i);
    }
    let _ = parallel;
    items
        .iter()
        .enumerate()
        .map(|(i, t)| (key(t), i))
        .reduce(pick)
        .map(|(_, i)| i)
}
