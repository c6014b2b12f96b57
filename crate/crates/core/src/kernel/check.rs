use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use super::bumps::{h_theta_centers, FejerTransfer};
use super::{PlaneFunction, PlanePoint};
use crate::error::{Error, Result};
use crate::freq::{modified_riesz_product, Frequency};

/// Residuals of `H^θ(ξ) = W(R̂_s)(2^θ ξ)` at random points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub theta: u32,
    pub points: usize,
    /// Points that fell inside some bump (the rest test the zero set).
    pub points_in_support: usize,
    pub max_residual: f64,
}

/// Evaluates both sides at `points` random points: each is a random
/// `q ∈ Λ_s` plus a uniform offset in `[−1.5·2^{-θ}, 1.5·2^{-θ}]^2`, so about
/// half the points land inside a bump and the rest probe the gaps.
///
/// The right side is built independently of the bump sum: the modified
/// Riesz product on the dilated centers `2^θ c^k`, expanded, then
/// transferred.
pub fn transfer_identity_check(
    centers: &[Frequency],
    theta: u32,
    points: usize,
    seed: u64,
) -> Result<IdentityCheck> {
    let h = h_theta_centers(centers, theta)?;
    let k = 1i128
        .checked_shl(theta)
        .filter(|_| theta < 126)
        .ok_or_else(|| Error::InvalidParameter(format!("theta = {theta} too large")))?;
    let dilated = centers
        .iter()
        .map(|c| {
            c.checked_scale(k).ok_or_else(|| {
                Error::InvalidParameter(format!("2^{theta} · {c} does not fit in i128"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let w = FejerTransfer::from_poly(&modified_riesz_product(&dilated)?);
    let lattice: Vec<Frequency> = h.bumps().iter().map(|b| b.0).collect();
    let width = 1.5 * h.half_width();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut max_residual: f64 = 0.0;
    let mut inside = 0;
    for _ in 0..points {
        let q = lattice[rng.random_range(0..lattice.len())];
        let off = [
            rng.random_range(-width..width),
            rng.random_range(-width..width),
        ];
        let p = PlanePoint::new(q, off);
        let lhs = h.eval(&p);
        let rhs = w.eval_dilated(theta, &p).ok_or_else(|| {
            Error::InvalidParameter(format!("2^{theta} · ξ leaves the 128-bit range"))
        })?;
        if lhs.norm() > 0.0 {
            inside += 1;
        }
        max_residual = max_residual.max((lhs - rhs).norm());
    }
    Ok(IdentityCheck {
        theta,
        points,
        points_in_support: inside,
        max_residual,
    })
}
