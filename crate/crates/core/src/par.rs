//! Internal switch between data-parallel and sequential execution.
//!
//! Callers that need a guaranteed single-threaded path use the public
//! `*_seq` twins; everything else routes through here and picks up rayon
//! when the `parallel` feature (default) is enabled. Both paths preserve
//! input order, so results are identical either way.

#[cfg(feature = "parallel")]
pub(crate) fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}
