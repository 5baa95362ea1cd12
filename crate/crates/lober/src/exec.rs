//! Deterministic map/reduce helpers shared by the numeric kernels.
//!
//! Reductions are chunked at a fixed size and combined in index order with
//! pairwise summation, so results are bit-identical for any worker count and
//! for the sequential build (`--no-default-features`).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Fixed chunk length for deterministic reductions.
pub const CHUNK: usize = 8192;

/// Pairwise (cascade) sum of a slice; fixed association order.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let (lo, hi) = xs.split_at(n / 2);
            pairwise_sum(lo) + pairwise_sum(hi)
        }
    }
}

fn chunk_ranges(n: usize) -> impl Iterator<Item = std::ops::Range<usize>> {
    (0..n.div_ceil(CHUNK)).map(move |c| (c * CHUNK)..(((c + 1) * CHUNK).min(n)))
}

fn sum_range<F: Fn(usize) -> f64>(r: std::ops::Range<usize>, f: &F) -> f64 {
    r.map(f).sum()
}

/// Sum `f(0) + .. + f(n-1)`, chunked and pairwise-combined.
pub fn sum_indexed<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        let partial: Vec<f64> = chunk_ranges(n)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|r| sum_range(r, &f))
            .collect();
        pairwise_sum(&partial)
    }
    #[cfg(not(feature = "parallel"))]
    sum_indexed_seq(n, f)
}

/// Sequential twin of [`sum_indexed`]; same chunking, same result bits.
pub fn sum_indexed_seq<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64,
{
    let partial: Vec<f64> = chunk_ranges(n).map(|r| sum_range(r, &f)).collect();
    pairwise_sum(&partial)
}

/// Minimum of `f(0) .. f(n-1)`; `f` must not return NaN.
pub fn min_indexed<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        chunk_ranges(n)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|r| r.map(&f).fold(f64::INFINITY, f64::min))
            .reduce(|| f64::INFINITY, f64::min)
    }
    #[cfg(not(feature = "parallel"))]
    (0..n).map(f).fold(f64::INFINITY, f64::min)
}

/// `(0..n).map(f)` collected in index order.
pub fn map_collect<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    (0..n).map(f).collect()
}

/// Sequential twin of [`map_collect`].
pub fn map_collect_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Run `f` on fixed chunks of `0..n` and concatenate the per-chunk output
/// in chunk order. The first error (by chunk order) wins.
pub fn try_chunk_concat<T, F>(n: usize, f: F) -> crate::Result<Vec<T>>
where
    T: Send,
    F: Fn(std::ops::Range<usize>) -> crate::Result<Vec<T>> + Sync + Send,
{
    let ranges: Vec<_> = chunk_ranges(n).collect();
    #[cfg(feature = "parallel")]
    let per_chunk: Vec<crate::Result<Vec<T>>> = ranges.into_par_iter().map(&f).collect();
    #[cfg(not(feature = "parallel"))]
    let per_chunk: Vec<crate::Result<Vec<T>>> = ranges.into_iter().map(&f).collect();

    let mut out = Vec::new();
    for r in per_chunk {
        out.extend(r?);
    }
    Ok(out)
}

/// Sequential twin of [`try_chunk_concat`].
pub fn try_chunk_concat_seq<T, F>(n: usize, f: F) -> crate::Result<Vec<T>>
where
    F: Fn(std::ops::Range<usize>) -> crate::Result<Vec<T>>,
{
    let mut out = Vec::new();
    for r in chunk_ranges(n) {
        out.extend(f(r)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive_on_small_input() {
        let xs: Vec<f64> = (0..100).map(|i| i as f64 * 0.1).collect();
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - naive).abs() < 1e-9);
    }

    #[test]
    fn par_and_seq_sums_are_bit_identical() {
        let f = |i: usize| ((i as f64) * 0.7).sin() / (i as f64 + 1.0);
        let a = sum_indexed(100_000, f);
        let b = sum_indexed_seq(100_000, f);
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
