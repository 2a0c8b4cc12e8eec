//! Sequential and data-parallel execution of independent work items.
//!
//! Every helper preserves input order in its output, so results do not
//! depend on the strategy or on thread scheduling.

/// How independent work items are evaluated.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    Sequential,
    /// Uses the rayon pool when the `parallel` feature is enabled and
    /// falls back to sequential evaluation otherwise.
    Parallel,
}

impl Default for Strategy {
    fn default() -> Strategy {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

pub fn map<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = strategy;
    items.iter().map(f).collect()
}

/// The result of `f` on the first item (in input order) for which it is
/// `Some`.
pub fn find_first<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().find_map_first(f);
    }
    let _ = strategy;
    items.iter().find_map(f)
}

pub fn all<T, F>(strategy: Strategy, items: &[T], pred: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    find_first(strategy, items, |t| if pred(t) { None } else { Some(()) }).is_none()
}

/// Like [`map`] over `0..n`.
pub fn map_range<R, F>(strategy: Strategy, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = strategy;
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let items: Vec<u64> = (0..500).collect();
        for s in [Strategy::Sequential, Strategy::Parallel] {
            assert_eq!(map(s, &items, |x| x * x)[17], 289);
            assert_eq!(find_first(s, &items, |&x| (x % 37 == 36).then_some(x)), Some(36));
            assert!(all(s, &items, |&x| x < 500));
            assert!(!all(s, &items, |&x| x != 250));
            assert_eq!(map_range(s, 4, |i| i + 1), vec![1, 2, 3, 4]);
        }
    }
}
