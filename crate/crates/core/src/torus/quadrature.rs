use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use rustfft::FftPlanner;

use super::phase::{phase_turns, unit_phasor, TorusPoint};
use super::{MonteCarloParams, NormEstimate, NormMethod, QuadratureMode, QuadratureSpec};
use crate::error::{Error, Result};
use crate::freq::{Coefficient, SparseTrigPoly};
use crate::numeric::{mc_mean, pairwise_sum};

/// Grid dimensions chosen for a polynomial, with the resource estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridPlan {
    /// Points per axis.
    pub n: [u64; 2],
    /// Whether every axis resolves `2·max|q_i|+1` points.
    pub resolving: bool,
    pub points: u64,
    /// Bytes of per-row working storage (row buffer plus FFT scratch, per
    /// worker).
    pub bytes: u64,
}

fn axis_size(max_freq: u128) -> Option<u64> {
    let need = max_freq.checked_mul(4)?;
    let need = u64::try_from(need).ok()?.max(2);
    need.checked_next_power_of_two()
}

/// Plans the grid for `AutoGrid` / `FixedGrid`; `None` for Monte Carlo or
/// when the automatic size does not fit in 64 bits.
pub fn grid_plan<C: Coefficient>(poly: &SparseTrigPoly<C>, spec: &QuadratureSpec) -> Option<GridPlan> {
    let m = poly.max_abs_frequency();
    let n = match spec.mode {
        QuadratureMode::AutoGrid => [axis_size(m[0])?, axis_size(m[1])?],
        QuadratureMode::FixedGrid(n) => [n, n],
        QuadratureMode::MonteCarlo { .. } => return None,
    };
    let resolving = (0..2).all(|i| (n[i] as u128) > 2 * m[i]);
    let points = n[0].checked_mul(n[1])?;
    let long = n[0].max(n[1]);
    let workers = rayon::current_num_threads() as u64;
    let bytes = long.checked_mul(2 * 16)?.checked_mul(workers)?;
    Some(GridPlan {
        n,
        resolving,
        points,
        bytes,
    })
}

/// `∫_{T^2} |poly|` by the requested method.
///
/// Grid mode streams one row at a time: the coefficients are folded onto the
/// row's frequency axis (exact aliasing at grid points), a single 1-D inverse
/// FFT yields the row values, and row sums are reduced pairwise in row order.
/// The full 2-D grid is never materialised.
pub fn l1_norm<C: Coefficient>(poly: &SparseTrigPoly<C>, spec: &QuadratureSpec) -> Result<NormEstimate> {
    if poly.is_empty() {
        return Ok(NormEstimate::exact(0.0));
    }
    match spec.mode {
        QuadratureMode::MonteCarlo { samples, seed } => monte_carlo(poly, samples, seed),
        QuadratureMode::FixedGrid(n) if n < 2 => Err(Error::InvalidParameter(format!(
            "fixed grid needs at least 2 points per axis, got {n}"
        ))),
        _ => {
            let plan = grid_plan(poly, spec);
            let over = match plan {
                None => Some("grid size does not fit in 64 bits".to_string()),
                Some(p) if p.bytes > spec.max_memory_hint => Some(format!(
                    "row buffers need {} bytes, budget {}",
                    p.bytes, spec.max_memory_hint
                )),
                Some(p) if p.points > spec.max_grid_points => Some(format!(
                    "{} grid points, budget {}",
                    p.points, spec.max_grid_points
                )),
                Some(_) => None,
            };
            match (over, spec.fallback) {
                (None, _) => Ok(grid(poly, plan.expect("checked above"))),
                (Some(_), Some(MonteCarloParams { samples, seed })) => {
                    monte_carlo(poly, samples, seed)
                }
                (Some(why), None) => Err(Error::ResourceExceeded(why)),
            }
        }
    }
}

fn grid<C: Coefficient>(poly: &SparseTrigPoly<C>, plan: GridPlan) -> NormEstimate {
    // FFT along the longer axis; the L¹ norm is invariant under swapping
    // coordinates.
    let swap = plan.n[1] > plan.n[0];
    let (n_fft, n_rows) = if swap {
        (plan.n[1], plan.n[0])
    } else {
        (plan.n[0], plan.n[1])
    };
    let rows_pow2 = n_rows.is_power_of_two();
    let terms: Vec<(usize, u128, Complex64)> = poly
        .iter()
        .map(|(q, c)| {
            let (a, b) = if swap { (q.k2, q.k1) } else { (q.k1, q.k2) };
            let ia = a.rem_euclid(n_fft as i128) as usize;
            let ib = b.rem_euclid(n_rows as i128) as u128;
            (ia, ib, c.to_complex())
        })
        .collect();

    let fft = FftPlanner::<f64>::new().plan_fft_inverse(n_fft as usize);
    let row_sum = |j: u64, buf: &mut Vec<Complex64>, scratch: &mut Vec<Complex64>, abs: &mut Vec<f64>| {
        buf.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        for &(ia, ib, c) in &terms {
            let m = (ib * j as u128) % n_rows as u128;
            let w = if rows_pow2 {
                let shift = 128 - n_rows.trailing_zeros();
                unit_phasor(if shift == 128 { 0 } else { m << shift })
            } else {
                let (s, co) = (TAU * m as f64 / n_rows as f64).sin_cos();
                Complex64::new(co, s)
            };
            buf[ia] += c * w;
        }
        fft.process_with_scratch(buf, scratch);
        abs.clear();
        abs.extend(buf.iter().map(|v| v.norm()));
        pairwise_sum(abs)
    };

    let workers = rayon::current_num_threads() as u64;
    let chunk = n_rows.div_ceil(workers).max(1);
    let chunks: Vec<(u64, u64)> = (0..n_rows)
        .step_by(chunk as usize)
        .map(|lo| (lo, (lo + chunk).min(n_rows)))
        .collect();
    let scratch_len = fft.get_inplace_scratch_len();
    let sums: Vec<f64> = chunks
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut buf = vec![Complex64::new(0.0, 0.0); n_fft as usize];
            let mut scratch = vec![Complex64::new(0.0, 0.0); scratch_len];
            let mut abs = Vec::with_capacity(n_fft as usize);
            (lo..hi)
                .map(|j| row_sum(j, &mut buf, &mut scratch, &mut abs))
                .collect::<Vec<f64>>()
        })
        .flatten_iter()
        .collect();
    let value = pairwise_sum(&sums) / (plan.points as f64);

    let w = poly.gradient_weights();
    let error_bound = PI * w[0] / plan.n[0] as f64 + PI * w[1] / plan.n[1] as f64;
    NormEstimate {
        value,
        error_bound,
        method: if plan.resolving {
            NormMethod::GridExact
        } else {
            NormMethod::GridBounded
        },
        samples_or_gridsize: plan.points,
        rng_seed: None,
    }
}

fn monte_carlo<C: Coefficient>(poly: &SparseTrigPoly<C>, samples: u64, seed: u64) -> Result<NormEstimate> {
    if samples < 2 {
        return Err(Error::InvalidParameter(format!(
            "Monte Carlo needs at least 2 samples, got {samples}"
        )));
    }
    let terms: Vec<_> = poly.iter().map(|(q, c)| (*q, c.to_complex())).collect();
    let (value, half) = mc_mean(samples, seed, |rng| {
        let p = TorusPoint {
            u: [rng.random::<u128>(), rng.random::<u128>()],
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for (q, c) in &terms {
            acc += c * unit_phasor(phase_turns(q, &p));
        }
        acc.norm()
    });
    Ok(NormEstimate {
        value,
        error_bound: half,
        method: NormMethod::MonteCarlo,
        samples_or_gridsize: samples,
        rng_seed: Some(seed),
    })
}
