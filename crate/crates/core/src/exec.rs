//! Deterministic data-parallel kernels.
//!
//! Reductions are chunked at a fixed block size; per-block partials are
//! computed sequentially and combined in block order. The floating-point
//! summation tree is therefore identical whether a reduction runs on one
//! thread or many, and the `*_seq` twins return bit-identical results to the
//! rayon paths. The sequential twins are always compiled: they are the
//! fallback when the `parallel` feature is disabled and the baseline for the
//! bench suite.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Block size for chunked reductions.
pub const BLOCK: usize = 4096;

/// Sum `f(item)` over all items, block-ordered.
pub fn sum_by<T, F>(items: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync,
{
    #[cfg(feature = "parallel")]
    {
        sum_by_par(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        sum_by_seq(items, f)
    }
}

/// Sequential reference path for [`sum_by`].
pub fn sum_by_seq<T, F>(items: &[T], f: F) -> f64
where
    F: Fn(&T) -> f64,
{
    items
        .chunks(BLOCK)
        .map(|chunk| chunk.iter().map(&f).sum::<f64>())
        .sum()
}

#[cfg(feature = "parallel")]
pub fn sum_by_par<T, F>(items: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync,
{
    items
        .par_chunks(BLOCK)
        .map(|chunk| chunk.iter().map(&f).sum::<f64>())
        .collect::<Vec<_>>()
        .into_iter()
        .sum()
}

/// Map every item to an output value, preserving order.
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_collect_seq(items, f)
    }
}

/// Sequential reference path for [`map_collect`].
pub fn map_collect_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_collect_par<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    items.par_iter().map(f).collect()
}

/// Accumulate per-item contributions into a dense vector of length `len`.
/// `f` adds one item's contributions into the block-local buffer; buffers are
/// merged in block order so the result does not depend on thread count.
pub fn scatter_sum<T, F>(items: &[T], len: usize, f: F) -> Vec<f64>
where
    T: Sync,
    F: Fn(&T, &mut [f64]) + Sync,
{
    #[cfg(feature = "parallel")]
    {
        scatter_sum_par(items, len, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        scatter_sum_seq(items, len, f)
    }
}

/// Sequential reference path for [`scatter_sum`].
pub fn scatter_sum_seq<T, F>(items: &[T], len: usize, f: F) -> Vec<f64>
where
    F: Fn(&T, &mut [f64]),
{
    let mut out = vec![0.0; len];
    for chunk in items.chunks(BLOCK) {
        let mut local = vec![0.0; len];
        for item in chunk {
            f(item, &mut local);
        }
        for (o, l) in out.iter_mut().zip(&local) {
            *o += *l;
        }
    }
    out
}

#[cfg(feature = "parallel")]
pub fn scatter_sum_par<T, F>(items: &[T], len: usize, f: F) -> Vec<f64>
where
    T: Sync,
    F: Fn(&T, &mut [f64]) + Sync,
{
    let blocks: Vec<Vec<f64>> = items
        .par_chunks(BLOCK)
        .map(|chunk| {
            let mut local = vec![0.0; len];
            for item in chunk {
                f(item, &mut local);
            }
            local
        })
        .collect();
    let mut out = vec![0.0; len];
    for local in blocks {
        for (o, l) in out.iter_mut().zip(&local) {
            *o += *l;
        }
    }
    out
}

/// Sort with a total-order comparator; parallel when available. The
/// comparator must be a strict total order so the result is schedule-free.
pub fn sort_by<T, F>(items: &mut [T], cmp: F)
where
    T: Send,
    F: Fn(&T, &T) -> std::cmp::Ordering + Sync,
{
    #[cfg(feature = "parallel")]
    {
        items.par_sort_unstable_by(cmp);
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.sort_unstable_by(cmp);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::mix64;

    #[test]
    fn seq_sum_matches_par_bitwise() {
        let xs: Vec<f64> = (0..20_000u64)
            .map(|i| crate::rng::unit_open(mix64(i)) - 0.5)
            .collect();
        let seq = sum_by_seq(&xs, |x| x * 1.000001);
        let auto = sum_by(&xs, |x| x * 1.000001);
        assert_eq!(seq.to_bits(), auto.to_bits());
    }

    #[test]
    fn seq_scatter_matches_par_bitwise() {
        let items: Vec<(usize, f64)> = (0..10_000u64)
            .map(|i| ((mix64(i) % 37) as usize, crate::rng::unit_open(mix64(i ^ 1))))
            .collect();
        let add = |it: &(usize, f64), buf: &mut [f64]| buf[it.0] += it.1;
        let seq = scatter_sum_seq(&items, 37, add);
        let auto = scatter_sum(&items, 37, add);
        for (a, b) in seq.iter().zip(&auto) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }
}
