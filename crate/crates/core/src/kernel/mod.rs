//! Plane-side machinery: the kernel `g`, bump sums `Σ w_q G(2^θ(ξ − q))`, the
//! lattice-to-plane transfer `W(φ)(ξ) = Σ_n G(n − ξ) φ(n)`, and `L¹(R^2)`
//! norms of inverse Fourier transforms of bump sums, optionally multiplied by
//! the ratio `ξ₂/ξ₁`.
//!
//! Plane points are stored as an exact lattice base plus a small `f64`
//! offset, so that bumps around frequencies of size `2^120` can still be
//! evaluated at sub-unit resolution.

mod bumps;
mod check;
mod cutoff;
mod fejer;
mod invft;
mod ratio;

pub use bumps::{fejer_transfer, h_theta, h_theta_centers, BumpFactor, BumpSum, FejerTransfer};
pub use check::{transfer_identity_check, IdentityCheck};
pub use cutoff::{
    cutoff_bound_check, cutoff_lhs, derivative_sup, eta, fit_cutoff_constant, CutoffParams, CutoffRow,
    CutoffTable, CutoffTestFunction, CUTOFF_DESCRIPTION,
};
pub use fejer::{
    big_g, big_g_check, big_g_check_tail_mass, g_check, g_check_tail_mass, g_kernel, g_moments,
};
pub use invft::{inv_ft_at, inv_ft_l1, PlaneNormEstimate};
pub use ratio::{
    ratio_multiplier_l1, ratio_multiplier_l1_centers, smallest_valid_theta, theta_search, theta_search_centers,
    ThetaChoice, ThetaSearchParams,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::freq::Frequency;

/// A point of `R^2` written as `base + offset` with `offset ∈ [0, 1)^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanePoint {
    pub base: Frequency,
    pub offset: [f64; 2],
}

impl PlanePoint {
    /// Normalises `base + offset` so that the offset lies in `[0, 1)^2`.
    ///
    /// Panics if the offset is not finite or the base overflows.
    pub fn new(base: Frequency, offset: [f64; 2]) -> Self {
        assert!(offset.iter().all(|v| v.is_finite()), "non-finite plane offset");
        let f = [offset[0].floor(), offset[1].floor()];
        let shift = Frequency::new(f[0] as i128, f[1] as i128);
        let base = base.checked_add(shift).expect("plane point base overflow");
        let mut off = [offset[0] - f[0], offset[1] - f[1]];
        // `x − floor(x)` can round up to exactly 1 for tiny negative x.
        let mut carry = [0i128; 2];
        for i in 0..2 {
            if off[i] >= 1.0 {
                off[i] = 0.0;
                carry[i] = 1;
            }
        }
        let base = base
            .checked_add(Frequency::new(carry[0], carry[1]))
            .expect("plane point base overflow");
        PlanePoint { base, offset: off }
    }

    pub fn from_f64(x: [f64; 2]) -> Self {
        Self::new(Frequency::ZERO, x)
    }

    pub fn lattice(n: Frequency) -> Self {
        PlanePoint {
            base: n,
            offset: [0.0, 0.0],
        }
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [
            self.base.k1 as f64 + self.offset[0],
            self.base.k2 as f64 + self.offset[1],
        ]
    }

    /// `self − q` in floating point; infinite when the lattice difference
    /// does not fit.
    pub fn minus(&self, q: &Frequency) -> [f64; 2] {
        match self.base.checked_sub(*q) {
            Some(d) => [d.k1 as f64 + self.offset[0], d.k2 as f64 + self.offset[1]],
            None => [f64::INFINITY, f64::INFINITY],
        }
    }

    /// `2^θ · self`, or `None` on overflow.
    pub fn scale_pow2(&self, theta: u32) -> Option<Self> {
        let k = 1i128.checked_shl(theta)?;
        if theta >= 126 {
            return None;
        }
        let base = self.base.checked_scale(k)?;
        let f = (theta as f64).exp2();
        let off = [self.offset[0] * f, self.offset[1] * f];
        let fl = [off[0].floor(), off[1].floor()];
        let shift = Frequency::new(fl[0] as i128, fl[1] as i128);
        Some(PlanePoint::new(
            base.checked_add(shift)?,
            [off[0] - fl[0], off[1] - fl[1]],
        ))
    }
}

/// Where a plane function may be nonzero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Support {
    Global,
    /// Union of closed sup-norm balls `{ξ : |ξ − c|_∞ ≤ radius}`, with the
    /// centers on the integer lattice.
    Balls { centers: Vec<Frequency>, radius: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Smoothness {
    /// Smooth away from finitely many lines, globally Lipschitz.
    PiecewiseSmooth,
    Smooth,
}

/// An evaluable function `R^2 → C`.
pub trait PlaneFunction: Sync {
    fn eval(&self, p: &PlanePoint) -> Complex64;
    fn support(&self) -> Support;
    fn smoothness(&self) -> Smoothness;

    fn eval_f64(&self, x: [f64; 2]) -> Complex64 {
        self.eval(&PlanePoint::from_f64(x))
    }
}
