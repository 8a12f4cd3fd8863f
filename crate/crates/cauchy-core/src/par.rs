//! Data-parallel mapping helper: rayon when the `parallel` feature is on,
//! a plain iterator otherwise. Output order always matches input order, so
//! reports and reductions are deterministic either way.

#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    use rayon::prelude::*;
    items.par_iter().map(|t| f(t)).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}
