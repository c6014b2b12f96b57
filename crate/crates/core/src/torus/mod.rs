//! Evaluation and L¹ norms of sparse trigonometric polynomials on `T^2`.
//!
//! The torus is the unit square `[0,1)^2` with normalised Lebesgue measure.
//! Points are carried as 128-bit fixed-point fractions, which makes every
//! phase `⟨q,ξ⟩ mod 1` exact even for frequencies near `2^121`.

mod growth;
mod phase;
mod quadrature;

use serde::{Deserialize, Serialize};

pub use growth::{growth_profile, CenterGenerator, GrowthBuilder, GrowthRow};
pub use phase::{eval_at, eval_at_point, phase_turns, unit_phasor, TorusPoint};
pub use quadrature::{grid_plan, l1_norm, GridPlan};

/// How an L¹ estimate was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormMethod {
    /// Equispaced grid resolving at least `2·max|q|+1` points per axis.
    GridExact,
    /// Equispaced grid coarser than that; the gradient bound still applies.
    GridBounded,
    MonteCarlo,
}

/// A norm value with its error bound.
///
/// For grid methods `error_bound` is the deterministic modulus-of-continuity
/// bound; for Monte Carlo it is a 99% CLT half-width.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub error_bound: f64,
    pub method: NormMethod,
    pub samples_or_gridsize: u64,
    pub rng_seed: Option<u64>,
}

impl NormEstimate {
    pub fn exact(value: f64) -> Self {
        NormEstimate {
            value,
            error_bound: 0.0,
            method: NormMethod::GridExact,
            samples_or_gridsize: 1,
            rng_seed: None,
        }
    }

    pub fn lower(&self) -> f64 {
        self.value - self.error_bound
    }

    pub fn upper(&self) -> f64 {
        self.value + self.error_bound
    }

    /// The same estimate multiplied by a nonnegative constant.
    pub fn scaled(&self, k: f64) -> Self {
        NormEstimate {
            value: self.value * k,
            error_bound: self.error_bound * k,
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureMode {
    /// Smallest power-of-two grid with at least `4·max|q|` points per axis.
    AutoGrid,
    /// `n × n` equispaced grid.
    FixedGrid(u64),
    MonteCarlo { samples: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub mode: QuadratureMode,
    /// Budget for the per-row working buffers, in bytes.
    #[serde(default = "default_memory")]
    pub max_memory_hint: u64,
    /// Budget for the total number of grid points (a time budget).
    #[serde(default = "default_points")]
    pub max_grid_points: u64,
    /// Monte Carlo parameters used when an automatic grid is over budget;
    /// `None` turns the overrun into [`crate::Error::ResourceExceeded`].
    #[serde(default)]
    pub fallback: Option<MonteCarloParams>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonteCarloParams {
    pub samples: u64,
    pub seed: u64,
}

pub const DEFAULT_MC_SAMPLES: u64 = 1_000_000;

fn default_memory() -> u64 {
    1 << 30
}

fn default_points() -> u64 {
    1 << 26
}

impl QuadratureSpec {
    pub fn auto() -> Self {
        QuadratureSpec {
            mode: QuadratureMode::AutoGrid,
            max_memory_hint: default_memory(),
            max_grid_points: default_points(),
            fallback: None,
        }
    }

    pub fn auto_with_fallback(samples: u64, seed: u64) -> Self {
        QuadratureSpec {
            fallback: Some(MonteCarloParams { samples, seed }),
            ..Self::auto()
        }
    }

    pub fn fixed(n: u64) -> Self {
        QuadratureSpec {
            mode: QuadratureMode::FixedGrid(n),
            ..Self::auto()
        }
    }

    pub fn monte_carlo(samples: u64, seed: u64) -> Self {
        QuadratureSpec {
            mode: QuadratureMode::MonteCarlo { samples, seed },
            ..Self::auto()
        }
    }
}
