//! Small floating-point helpers shared by the quadrature routines.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

/// Two-sided 99% standard normal quantile.
pub const Z99: f64 = 2.575_829_303_548_900_4;

/// Pairwise (cascade) summation. Error grows like `O(log n)` ulps instead of
/// `O(n)` for naive left-to-right accumulation, and the association order is
/// a pure function of the slice length.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Pairwise summation of `(sum, sum_of_squares)` pairs.
pub fn pairwise_sum2(values: &[(f64, f64)]) -> (f64, f64) {
    const LEAF: usize = 16;
    if values.len() <= LEAF {
        return values
            .iter()
            .fold((0.0, 0.0), |acc, v| (acc.0 + v.0, acc.1 + v.1));
    }
    let mid = values.len() / 2;
    let a = pairwise_sum2(&values[..mid]);
    let b = pairwise_sum2(&values[mid..]);
    (a.0 + b.0, a.1 + b.1)
}

/// `2^e` for integer `e` in the normal range.
#[inline]
pub fn exp2i(e: i32) -> f64 {
    f64::from_bits(((1023 + e) as u64) << 52)
}

/// Least-squares slope of `y` against `x`.
pub fn ls_slope(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
    }
    sxy / sxx
}


/// Samples per independent random stream in [`mc_mean`].
pub const MC_BATCH: u64 = 4096;

/// Seeded Monte Carlo mean of `f(rng)` over `samples` draws.
///
/// Draws are split into batches of [`MC_BATCH`]; batch `b` uses the ChaCha20
/// stream `b` of `seed`, and batch partial sums are reduced pairwise in batch
/// order. The result is therefore independent of the worker count.
///
/// Returns `(mean, 99% CLT half-width)`.
pub fn mc_mean<F>(samples: u64, seed: u64, f: F) -> (f64, f64)
where
    F: Fn(&mut ChaCha20Rng) -> f64 + Sync,
{
    assert!(samples >= 2, "Monte Carlo needs at least two samples");
    let batches = samples.div_ceil(MC_BATCH);
    let partial: Vec<(f64, f64)> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let n = MC_BATCH.min(samples - b * MC_BATCH);
            let mut vals = Vec::with_capacity(n as usize);
            let mut sq = Vec::with_capacity(n as usize);
            for _ in 0..n {
                let v = f(&mut rng);
                vals.push(v);
                sq.push(v * v);
            }
            (pairwise_sum(&vals), pairwise_sum(&sq))
        })
        .collect();
    let (sum, sumsq) = pairwise_sum2(&partial);
    let n = samples as f64;
    let mean = sum / n;
    let var = ((sumsq - n * mean * mean) / (n - 1.0)).max(0.0);
    (mean, Z99 * (var / n).sqrt())
}
