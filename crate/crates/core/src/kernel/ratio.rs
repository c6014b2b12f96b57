use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bumps::{bumps_disjoint, min_sup_separation, BumpFactor, BumpSum};
use super::invft::inv_ft_l1;
use crate::error::{Error, Result};
use crate::freq::{build_lambda_set, Frequency};
use crate::numeric::exp2i;
use crate::scheme::IntegerScheme;
use crate::torus::{NormEstimate, QuadratureSpec};

/// `‖ℱ⁻¹((ξ₂/ξ₁) H^θ)‖_{L¹(R^2)}` for the scheme's bump sum.
pub fn ratio_multiplier_l1(
    scheme: &IntegerScheme,
    theta: u32,
    spec: &QuadratureSpec,
) -> Result<NormEstimate> {
    ratio_multiplier_l1_centers(&scheme.centers, theta, spec)
}

/// As [`ratio_multiplier_l1`] for arbitrary integer centers.
pub fn ratio_multiplier_l1_centers(
    centers: &[Frequency],
    theta: u32,
    spec: &QuadratureSpec,
) -> Result<NormEstimate> {
    let bumps = ratio_bumps(centers, theta)?;
    Ok(inv_ft_l1(&bumps, None, spec)?.estimate)
}

fn ratio_bumps(centers: &[Frequency], theta: u32) -> Result<BumpSum> {
    let lambda = build_lambda_set(centers)?;
    let bumps = lambda
        .iter()
        .map(|(q, e)| (*q, Complex64::new(exp2i(-(e.chi as i32)), 0.0)))
        .collect();
    let sum = BumpSum::new(theta, bumps, BumpFactor::Ratio)?;
    if !sum.off_first_axis() {
        return Err(Error::BumpOverlap {
            theta,
            separation: 0.0,
        });
    }
    Ok(sum)
}

/// Smallest `θ ≥ 1` for which the bumps around `Λ_s` are disjoint and clear
/// of the axis `ξ₁ = 0`.
pub fn smallest_valid_theta(centers: &[Frequency]) -> Result<u32> {
    let lambda = build_lambda_set(centers)?;
    let points: Vec<Frequency> = lambda.iter().map(|(q, _)| *q).collect();
    if points.iter().any(|q| q.k1 == 0) {
        return Err(Error::InvalidCenters(
            "a signed sum lies on the axis ξ₁ = 0".into(),
        ));
    }
    let sep = min_sup_separation(&points).unwrap_or(u128::MAX);
    // Every |q₁| ≥ 1 > 2^{-θ} once θ ≥ 1, so disjointness decides.
    Ok((1..).find(|&t| bumps_disjoint(sep, t)).unwrap())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaSearchParams {
    /// Relative change between consecutive θ below which the search stops.
    pub rel_tol: f64,
    pub theta_max: u32,
}

impl Default for ThetaSearchParams {
    fn default() -> Self {
        ThetaSearchParams {
            rel_tol: 0.05,
            theta_max: 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaChoice {
    pub theta: u32,
    pub s: usize,
    pub ratio_norm: NormEstimate,
    pub search_trace: Vec<(u32, NormEstimate)>,
}

/// Increases `θ` from the smallest valid value until the ratio norm changes
/// by less than `rel_tol` between consecutive values, and returns the later
/// of the two.
///
/// Every `θ` is evaluated with the same quadrature spec (for Monte Carlo the
/// same seed, i.e. common random numbers across `θ`).
pub fn theta_search(
    scheme: &IntegerScheme,
    spec: &QuadratureSpec,
    params: &ThetaSearchParams,
) -> Result<ThetaChoice> {
    theta_search_centers(&scheme.centers, spec, params)
}

pub fn theta_search_centers(
    centers: &[Frequency],
    spec: &QuadratureSpec,
    params: &ThetaSearchParams,
) -> Result<ThetaChoice> {
    let start = smallest_valid_theta(centers)?;
    let mut trace: Vec<(u32, NormEstimate)> = Vec::new();
    for theta in start..=params.theta_max {
        let est = ratio_multiplier_l1_centers(centers, theta, spec)?;
        if let Some((_, prev)) = trace.last() {
            if (est.value - prev.value).abs() < params.rel_tol * prev.value.abs() {
                trace.push((theta, est.clone()));
                return Ok(ThetaChoice {
                    theta,
                    s: centers.len(),
                    ratio_norm: est,
                    search_trace: trace,
                });
            }
        }
        trace.push((theta, est));
    }
    Err(Error::NoStabilization {
        theta_max: params.theta_max,
    })
}
