//! `∫_{R^2} |ℱ⁻¹F|` for bump sums `F = factor · Σ_q w_q G(2^θ(· − q))`.
//!
//! Each bump transforms in closed form: with `y = 2^{-θ} x`,
//!
//! ```text
//! ℱ⁻¹[w G(2^θ(· − q))](x) = 2^{-2θ} w e^{2πi⟨q, x⟩} Ǧ(y),
//! ```
//!
//! so after the change of variables the norm is `∫ |Σ_q w_q e^{2πi⟨q, 2^θ y⟩}| Ǧ(y) dy`.
//! For the ratio factor `ξ₂/ξ₁` the factor is replaced on each bump by its
//! second-order Taylor jet at `q`, whose monomials `η^α` turn `Ǧ` into the
//! products of kernel moments `m_{α₁}(y₁) m_{α₂}(y₂)`.
//!
//! Monte Carlo draws `y` from the density `Ǧ` (each coordinate is a sum of
//! two independent `sinc^2` variables) and carries `frac(y)` as a 128-bit
//! fixed-point fraction, so the phases `⟨q, 2^θ y⟩ mod 1` are exact even for
//! frequencies near `2^125`. The grid mode integrates over a truncated box
//! and adds an explicit tail estimate.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bumps::{BumpFactor, BumpSum};
use super::fejer::{big_g_check_tail_mass, g_moments};
use crate::error::{Error, Result};
use crate::numeric::{exp2i, mc_mean, pairwise_sum};
use crate::torus::{unit_phasor, NormEstimate, NormMethod, QuadratureMode, QuadratureSpec};

/// A plane norm together with the truncation used to obtain it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneNormEstimate {
    /// `value` includes the tail estimate; `error_bound` includes the
    /// quadrature error, the tail estimate and the Taylor remainder.
    pub estimate: NormEstimate,
    /// Half-side of the integration box in the rescaled variable `y`
    /// (`None` for Monte Carlo, which integrates over all of `R^2`).
    pub truncation_radius: Option<f64>,
    /// Estimated mass outside the box.
    pub tail: f64,
    /// Heuristic size of the neglected third-order Taylor terms (ratio
    /// factor only).
    pub taylor_remainder: f64,
}

/// Multi-indices of the second-order jet, in coefficient order.
const ALPHAS: [(usize, usize); 6] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];

/// Per-bump jet coefficients `w_q 2^{-θ|α|} D^α f(q)/α!`.
struct Jets {
    theta: u32,
    freqs: Vec<[i128; 2]>,
    coef: Vec<[Complex64; 6]>,
    order: usize,
    remainder: f64,
    /// `Σ_q |w_q|·sup|f|` over the bumps: scale of the integrand's envelope.
    envelope: f64,
}

impl Jets {
    fn new(f: &BumpSum) -> Result<Self> {
        let theta = f.theta();
        let h = f.half_width();
        let mut freqs = Vec::with_capacity(f.len());
        let mut coef = Vec::with_capacity(f.len());
        let mut remainder = 0.0;
        let mut envelope = 0.0;
        let order = match f.factor() {
            BumpFactor::One => 1,
            BumpFactor::Ratio => 6,
        };
        if order == 6 && !f.off_first_axis() {
            return Err(Error::InvalidParameter(
                "ratio factor needs every bump clear of the axis ξ₁ = 0".into(),
            ));
        }
        for (q, w) in f.bumps() {
            freqs.push([q.k1, q.k2]);
            let z = Complex64::new(0.0, 0.0);
            let mut c = [z; 6];
            match f.factor() {
                BumpFactor::One => {
                    c[0] = *w;
                    envelope += w.norm();
                }
                BumpFactor::Ratio => {
                    let [q1, q2] = q.as_f64();
                    let jet = [
                        q2 / q1,
                        -q2 / (q1 * q1),
                        1.0 / q1,
                        q2 / (q1 * q1 * q1),
                        -1.0 / (q1 * q1),
                        0.0,
                    ];
                    for (k, (a1, a2)) in ALPHAS.iter().enumerate() {
                        c[k] = w * jet[k] * exp2i(-(theta as i32) * (a1 + a2) as i32);
                    }
                    // Third-order terms: ∂₁₁₁f/3! = −q₂/q₁⁴ and ∂₁₁₂f/2! = 1/q₁³,
                    // bounded over the bump, times |η|^3 ≤ h^3. The factor 4
                    // stands in for the L¹ norm of the transformed remainder
                    // (heuristic, not a certified bound).
                    let a = q1.abs() - h;
                    let r3 = (q2.abs() + h) / a.powi(4) + 1.0 / a.powi(3);
                    remainder += 4.0 * w.norm() * r3 * h * h * h;
                    envelope += w.norm() * (q2.abs() + h) / a;
                }
            }
            coef.push(c);
        }
        Ok(Jets {
            theta,
            freqs,
            coef,
            order,
            remainder,
            envelope,
        })
    }

    /// `|Σ_α M_α(y) T_α(y)|` given the moments and per-bump phasors.
    fn combine(&self, m1: &[Complex64; 3], m2: &[Complex64; 3], t: &[Complex64; 6]) -> f64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, (a1, a2)) in ALPHAS.iter().enumerate().take(self.order) {
            acc += m1[*a1] * m2[*a2] * t[k];
        }
        acc.norm()
    }
}

/// One `sinc^2(x) = (sin πx / πx)^2` variate, by rejection from the envelope
/// `min(1, 1/(π x)^2)` (acceptance rate π/4).
fn sample_sinc2(rng: &mut ChaCha20Rng) -> f64 {
    loop {
        let uniform_part: bool = rng.random();
        let x = if uniform_part {
            (2.0 * rng.random::<f64>() - 1.0) / PI
        } else {
            let u = 1.0 - rng.random::<f64>(); // (0, 1]
            let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
            sign / (PI * u)
        };
        let px = PI * x;
        let (sinc2, env) = if px.abs() < 1e-8 {
            (1.0, 1.0)
        } else {
            let s = px.sin() / px;
            (s * s, (1.0 / (px * px)).min(1.0))
        };
        if rng.random::<f64>() * env < sinc2 {
            return x;
        }
    }
}

/// Bits of `frac(y)` taken from the `f64` draw; the remaining low bits of
/// the 128-bit fraction are filled uniformly (a smoothing of width `2^-20`,
/// far below the scale on which `Ǧ` varies).
const COARSE_FRAC_BITS: u32 = 20;

/// One coordinate of a `Ǧ`-distributed point: the `f64` value (for the
/// weights) and `frac(y)` as a 128-bit fixed-point fraction (for the
/// phases). Phases `⟨q, 2^θ y⟩ mod 1` depend on `y` only through `frac(y)`,
/// because `q` and `2^θ` are integers, so they are exact modulo `2^{-128}`
/// turns for every frequency that fits in `i128`.
fn sample_coordinate(rng: &mut ChaCha20Rng) -> (f64, u128) {
    let y = sample_sinc2(rng) + sample_sinc2(rng);
    let frac = y - y.floor();
    let coarse = ((frac * exp2i(COARSE_FRAC_BITS as i32)) as u128).min((1 << COARSE_FRAC_BITS) - 1);
    let fine = rng.random::<u128>() >> COARSE_FRAC_BITS;
    (y, (coarse << (128 - COARSE_FRAC_BITS)) | fine)
}

fn mc_norm(jets: &Jets, samples: u64, seed: u64) -> NormEstimate {
    let theta = jets.theta;
    let (mean, half) = mc_mean(samples, seed, |rng| {
        let (y1, u1) = sample_coordinate(rng);
        let (y2, u2) = sample_coordinate(rng);
        let m1 = g_moments(y1);
        let m2 = g_moments(y2);
        let z = Complex64::new(0.0, 0.0);
        let mut t = [z; 6];
        for (q, c) in jets.freqs.iter().zip(&jets.coef) {
            let turns = (q[0] as u128)
                .wrapping_mul(u1)
                .wrapping_add((q[1] as u128).wrapping_mul(u2))
                .wrapping_shl(theta);
            let e = unit_phasor(turns);
            for k in 0..jets.order {
                t[k] += c[k] * e;
            }
        }
        jets.combine(&m1, &m2, &t) / (m1[0].re * m2[0].re)
    });
    NormEstimate {
        value: mean,
        error_bound: half + jets.remainder,
        method: NormMethod::MonteCarlo,
        samples_or_gridsize: samples,
        rng_seed: Some(seed),
    }
}

/// Midpoint-rule integral of the integrand over `[−R, R]^2` with `n` cells
/// per axis.
fn grid_box(jets: &Jets, r: f64, n: usize) -> f64 {
    let h = 2.0 * r / n as f64;
    let coords: Vec<f64> = (0..n).map(|i| -r + h * (i as f64 + 0.5)).collect();
    let moments: Vec<[Complex64; 3]> = coords.iter().map(|&y| g_moments(y)).collect();
    let k = exp2i(jets.theta as i32);
    // Per-axis phasors e^{2πi q_i 2^θ y}; grid mode only runs for moderate
    // frequencies, so f64 phases are accurate.
    let phasors: Vec<Vec<[Complex64; 2]>> = jets
        .freqs
        .iter()
        .map(|q| {
            coords
                .iter()
                .map(|&y| {
                    let a = [q[0] as f64 * k * y, q[1] as f64 * k * y];
                    let fr = [a[0] - a[0].round(), a[1] - a[1].round()];
                    [
                        Complex64::from_polar(1.0, 2.0 * PI * fr[0]),
                        Complex64::from_polar(1.0, 2.0 * PI * fr[1]),
                    ]
                })
                .collect()
        })
        .collect();
    let rows: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut vals = Vec::with_capacity(n);
            for j in 0..n {
                let z = Complex64::new(0.0, 0.0);
                let mut t = [z; 6];
                for (c, ph) in jets.coef.iter().zip(&phasors) {
                    let e = ph[i][0] * ph[j][1];
                    for kk in 0..jets.order {
                        t[kk] += c[kk] * e;
                    }
                }
                vals.push(jets.combine(&moments[i], &moments[j], &t));
            }
            pairwise_sum(&vals)
        })
        .collect();
    pairwise_sum(&rows) * h * h
}

/// `∫_{R^2} |ℱ⁻¹ f|`.
///
/// * `MonteCarlo` samples all of `R^2` by importance sampling with density
///   `Ǧ`; `truncation_radius` is ignored.
/// * `AutoGrid` / `FixedGrid(n)` integrate over `[−R, R]^2` in the rescaled
///   variable `y = 2^{-θ} x`. With `truncation_radius = None`, `R` starts at
///   8 and doubles until the tail estimate drops below 1% of the box
///   integral. The tail estimate is `Σ|w_q|·sup|factor|` times the mass of
///   `Ǧ` outside the box; it is added to the value and to the error bound.
///   The quadrature error is estimated by comparison with the half-resolution
///   grid.
///
/// Grids exceeding `spec.max_grid_points` (counting bumps × points) fall back
/// to Monte Carlo when `spec.fallback` is set, else fail with
/// [`Error::ResourceExceeded`].
pub fn inv_ft_l1(
    f: &BumpSum,
    truncation_radius: Option<f64>,
    spec: &QuadratureSpec,
) -> Result<PlaneNormEstimate> {
    let jets = Jets::new(f)?;
    if f.is_empty() {
        return Ok(PlaneNormEstimate {
            estimate: NormEstimate::exact(0.0),
            truncation_radius: None,
            tail: 0.0,
            taylor_remainder: 0.0,
        });
    }
    let mc = |samples: u64, seed: u64| -> Result<PlaneNormEstimate> {
        if samples < 2 {
            return Err(Error::InvalidParameter("Monte Carlo needs at least 2 samples".into()));
        }
        Ok(PlaneNormEstimate {
            estimate: mc_norm(&jets, samples, seed),
            truncation_radius: None,
            tail: 0.0,
            taylor_remainder: jets.remainder,
        })
    };
    let fixed_n = match spec.mode {
        QuadratureMode::MonteCarlo { samples, seed } => return mc(samples, seed),
        QuadratureMode::FixedGrid(n) => Some(n),
        QuadratureMode::AutoGrid => None,
    };
    if let Some(r) = truncation_radius {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidParameter(format!("truncation radius {r}")));
        }
    }
    let max_freq = jets
        .freqs
        .iter()
        .map(|q| q[0].unsigned_abs().max(q[1].unsigned_abs()))
        .max()
        .unwrap_or(0) as f64
        * exp2i(f.theta() as i32);
    let spacing = (1.0 / (8.0 * max_freq.max(1.0))).min(0.05);
    let over_budget = |r: f64| -> Option<usize> {
        let n = match fixed_n {
            Some(n) => n as f64,
            None => (2.0 * r / spacing).ceil(),
        };
        let work = n * n * jets.freqs.len() as f64;
        if n < 2.0 || work > spec.max_grid_points as f64 * 4.0 || max_freq > 1e12 {
            None
        } else {
            Some(n as usize)
        }
    };
    let fallback = |why: String| -> Result<PlaneNormEstimate> {
        match spec.fallback {
            Some(p) => mc(p.samples, p.seed),
            None => Err(Error::ResourceExceeded(why)),
        }
    };

    let mut r = truncation_radius.unwrap_or(8.0);
    loop {
        let Some(n) = over_budget(r) else {
            return fallback(format!(
                "plane grid for {} bumps, radius {r}, frequency {max_freq:e} exceeds budget",
                jets.freqs.len()
            ));
        };
        let fine = grid_box(&jets, r, n);
        let tail = jets.envelope * big_g_check_tail_mass(r);
        if truncation_radius.is_none() && tail >= 0.01 * fine {
            r *= 2.0;
            continue;
        }
        let coarse = grid_box(&jets, r, (n / 2).max(1));
        let quad_err = (fine - coarse).abs() / 3.0;
        return Ok(PlaneNormEstimate {
            estimate: NormEstimate {
                value: fine + tail,
                error_bound: quad_err + tail + jets.remainder,
                method: NormMethod::GridBounded,
                samples_or_gridsize: (n as u64) * (n as u64),
                rng_seed: None,
            },
            truncation_radius: Some(r),
            tail,
            taylor_remainder: jets.remainder,
        });
    }
}

/// `ℱ⁻¹ f` at a point `x` of `R^2`, from the closed form of each bump
/// (Taylor jet for the ratio factor).
pub fn inv_ft_at(f: &BumpSum, x: [f64; 2]) -> Result<Complex64> {
    let jets = Jets::new(f)?;
    let k = exp2i(f.theta() as i32);
    let y = [x[0] / k, x[1] / k];
    let m1 = g_moments(y[0]);
    let m2 = g_moments(y[1]);
    let z = Complex64::new(0.0, 0.0);
    let mut acc = z;
    for (q, c) in jets.freqs.iter().zip(&jets.coef) {
        let phase = q[0] as f64 * x[0] + q[1] as f64 * x[1];
        let e = Complex64::from_polar(1.0, 2.0 * PI * (phase - phase.round()));
        for (kk, (a1, a2)) in ALPHAS.iter().enumerate().take(jets.order) {
            acc += c[kk] * e * m1[*a1] * m2[*a2];
        }
    }
    Ok(acc / (k * k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freq::Frequency;
    use crate::kernel::bumps::h_theta_centers;
    use rand::SeedableRng;

    fn single(q: Frequency, theta: u32) -> BumpSum {
        BumpSum::new(theta, vec![(q, Complex64::new(1.0, 0.0))], BumpFactor::One).unwrap()
    }

    #[test]
    fn kernel_transform_is_nonnegative_and_integrates_to_one() {
        let g = single(Frequency::ZERO, 0);
        for i in -40..40 {
            for j in -40..40 {
                let v = inv_ft_at(&g, [i as f64 * 0.37, j as f64 * 0.53]).unwrap();
                assert!(v.re >= -1e-12 && v.im.abs() < 1e-12);
            }
        }
        let grid = inv_ft_l1(&g, None, &QuadratureSpec::auto()).unwrap();
        assert!((grid.estimate.value - 1.0).abs() < 2e-3, "{grid:?}");
        assert!(grid.tail > 0.0 && grid.truncation_radius.is_some());
        let mc = inv_ft_l1(&g, None, &QuadratureSpec::monte_carlo(10_000, 1)).unwrap();
        assert_eq!(mc.estimate.value, 1.0);
    }

    #[test]
    fn dilation_does_not_change_the_norm() {
        let g1 = single(Frequency::ZERO, 1);
        let est = inv_ft_l1(&g1, None, &QuadratureSpec::auto()).unwrap();
        assert!((est.estimate.value - 1.0).abs() < 2e-3);
    }

    #[test]
    fn sinc2_sampler_has_the_right_distribution() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let n = 200_000;
        let mut inside = 0;
        for _ in 0..n {
            if sample_sinc2(&mut rng).abs() < 1.0 {
                inside += 1;
            }
        }
        // ∫_{-1}^{1} sinc² = 0.9028...
        let p = inside as f64 / n as f64;
        assert!((p - 0.902_8).abs() < 0.004, "{p}");
    }

    #[test]
    fn plain_bump_sum_matches_torus_norm() {
        // With the plain factor the norm equals ‖Σ w_q e_q‖_{L¹(T²)}.
        let centers = [Frequency::new(4, 1), Frequency::new(32, 3)];
        let h = h_theta_centers(&centers, 2).unwrap();
        let torus = crate::torus::l1_norm(
            &crate::freq::modified_riesz_product(&centers).unwrap(),
            &QuadratureSpec::auto(),
        )
        .unwrap();
        let plane = inv_ft_l1(&h, None, &QuadratureSpec::monte_carlo(200_000, 3)).unwrap();
        let e = &plane.estimate;
        assert!(
            (e.value - torus.value).abs() < e.error_bound + torus.error_bound,
            "{e:?} vs {torus:?}"
        );
    }

    #[test]
    fn ratio_on_one_small_bump_is_nearly_constant() {
        let q = Frequency::new(1 << 20, 3);
        let b = single(q, 2).with_factor(BumpFactor::Ratio);
        let est = inv_ft_l1(&b, None, &QuadratureSpec::monte_carlo(20_000, 2)).unwrap();
        let want = 3.0 / (1 << 20) as f64;
        assert!((est.estimate.value / want - 1.0).abs() < 0.01, "{est:?}");
    }

    #[test]
    fn grid_and_monte_carlo_agree_for_the_ratio_factor() {
        let q = Frequency::new(3, 2);
        let b = single(q, 1).with_factor(BumpFactor::Ratio);
        let grid = inv_ft_l1(&b, None, &QuadratureSpec::auto()).unwrap();
        let mc = inv_ft_l1(&b, None, &QuadratureSpec::monte_carlo(200_000, 4)).unwrap();
        let tol = grid.estimate.error_bound + mc.estimate.error_bound;
        assert!((grid.estimate.value - mc.estimate.value).abs() < tol, "{grid:?} {mc:?}");
    }

    #[test]
    fn phases_are_exact_for_huge_frequencies() {
        // The bump at 2^124 (1, 1) and its negative form a cosine; the norm of
        // 2 cos(2π⟨q, x⟩) Ǧ is 4/π regardless of the size of q.
        let q = Frequency::new(1 << 124, (1 << 124) + 1);
        let b = BumpSum::new(
            3,
            vec![(q, Complex64::new(1.0, 0.0)), (-q, Complex64::new(1.0, 0.0))],
            BumpFactor::One,
        )
        .unwrap();
        let est = inv_ft_l1(&b, None, &QuadratureSpec::monte_carlo(100_000, 8)).unwrap();
        assert!((est.estimate.value - 4.0 / PI).abs() < est.estimate.error_bound);
    }

    #[test]
    fn plane_norm_matches_torus_norm_near_the_top_of_the_lattice() {
        // Frequencies above 2^96 with many trailing zeros: any truncation of
        // the fractional part of y would alias them.
        let centers = [
            Frequency::new(1 << 100, 1 << 96),
            Frequency::new(1 << 112, 3 << 108),
            Frequency::new(1 << 124, 1 << 121),
        ];
        let h = h_theta_centers(&centers, 2).unwrap();
        let torus = crate::torus::l1_norm(
            &crate::freq::modified_riesz_product(&centers).unwrap(),
            &QuadratureSpec::monte_carlo(100_000, 1),
        )
        .unwrap();
        let plane = inv_ft_l1(&h, None, &QuadratureSpec::monte_carlo(100_000, 2)).unwrap();
        let e = &plane.estimate;
        assert!(
            (e.value - torus.value).abs() < e.error_bound + torus.error_bound,
            "{e:?} vs {torus:?}"
        );
        assert!(e.value <= 2.0);
    }

    #[test]
    fn oversized_grid_is_reported() {
        let q = Frequency::new(1 << 40, 1);
        let b = single(q, 4);
        let e = inv_ft_l1(&b, None, &QuadratureSpec::auto()).unwrap_err();
        assert!(matches!(e, Error::ResourceExceeded(_)));
        let ok = inv_ft_l1(&b, None, &QuadratureSpec::auto_with_fallback(1000, 1)).unwrap();
        assert_eq!(ok.estimate.method, NormMethod::MonteCarlo);
    }
}
