use std::path::Path;

use anyhow::Result;
use riesz_witness::kernel::ThetaSearchParams;
use riesz_witness::scheme::SchemeCase;
use riesz_witness::symbol::{by_id, ClassifyParams, MultiplierSymbol, CATALOG_IDS};
use riesz_witness::torus::{GrowthBuilder, QuadratureSpec};
use riesz_witness::witness::WitnessParams;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::ConfigError;

/// Reads a JSON config, or the defaults when no path is given.
pub fn load<C: DeserializeOwned + Default>(path: Option<&Path>) -> Result<C> {
    let Some(path) = path else {
        return Ok(C::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
    let cfg = serde_json::from_str(&text)
        .map_err(|e| ConfigError(format!("malformed config {}: {e}", path.display())))?;
    Ok(cfg)
}

/// A catalog id or an expression in `x` and `y`.
pub fn resolve_symbol(spec: &str) -> Result<MultiplierSymbol> {
    if CATALOG_IDS.contains(&spec) {
        return Ok(by_id(spec)?);
    }
    MultiplierSymbol::from_expression(spec)
        .map_err(|e| ConfigError(format!("symbol {spec:?} is neither a catalog id nor a valid expression: {e}")).into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Automatic grid, Monte Carlo fallback when over budget.
    Grid,
    MonteCarlo,
}

pub fn quadrature(method: Method, samples: u64, seed: u64) -> QuadratureSpec {
    match method {
        Method::Grid => QuadratureSpec::auto_with_fallback(samples, seed),
        Method::MonteCarlo => QuadratureSpec::monte_carlo(samples, seed),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RieszNormConfig {
    pub s_min: usize,
    pub s_max: usize,
    /// Collinear centers `ratio^{j-1} (1, 0)`.
    pub ratio: i128,
    pub method: Method,
    pub samples: u64,
    pub seed: u64,
    pub threads: Option<usize>,
}

impl Default for RieszNormConfig {
    fn default() -> Self {
        RieszNormConfig {
            s_min: 1,
            s_max: 6,
            ratio: 16,
            method: Method::Grid,
            samples: 1_000_000,
            seed: 1,
            threads: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ZGrowthConfig {
    pub builder: GrowthBuilder,
    pub s_min: usize,
    pub s_max: usize,
    pub ratio: i128,
    pub method: Method,
    pub samples: u64,
    pub seed: u64,
    pub threads: Option<usize>,
}

impl Default for ZGrowthConfig {
    fn default() -> Self {
        ZGrowthConfig {
            builder: GrowthBuilder::SymmetricZ,
            s_min: 1,
            s_max: 6,
            ratio: 16,
            method: Method::MonteCarlo,
            samples: 1_000_000,
            seed: 1,
            threads: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SchemeConfig {
    pub symbol: String,
    pub case: SchemeCase,
    pub s: usize,
    pub epsilon: f64,
    pub n_sep: u32,
    /// Common slope `c₂/c₁` as `[numerator, denominator]`.
    pub slope: Option<[u64; 2]>,
    /// Also emit the integer-rescaled scheme.
    pub rescale: bool,
    pub seed: u64,
    pub threads: Option<usize>,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        SchemeConfig {
            symbol: "dyadic-cos".into(),
            case: SchemeCase::IIa,
            s: 3,
            epsilon: 0.01,
            n_sep: 8,
            slope: None,
            rescale: true,
            seed: 1,
            threads: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TransferConfig {
    pub symbol: String,
    pub case: SchemeCase,
    pub s: usize,
    pub epsilon: f64,
    pub n_sep: u32,
    /// Bump scale; the smallest valid value when absent.
    pub theta: Option<u32>,
    /// Random points for the identity check.
    pub points: usize,
    /// Monte Carlo samples for the plane norms.
    pub samples: u64,
    pub seed: u64,
    pub threads: Option<usize>,
}

impl Default for TransferConfig {
    fn default() -> Self {
        TransferConfig {
            symbol: "dyadic-cos".into(),
            case: SchemeCase::IIa,
            s: 2,
            epsilon: 0.01,
            n_sep: 8,
            theta: None,
            points: 100,
            samples: 100_000,
            seed: 1,
            threads: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifyConfig {
    pub symbol: String,
    pub params: ClassifyParams,
    pub seed: u64,
    pub threads: Option<usize>,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            symbol: "dyadic-cos".into(),
            params: ClassifyParams::default(),
            seed: 1,
            threads: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WitnessConfig {
    pub symbol: String,
    pub case: SchemeCase,
    pub s_list: Vec<usize>,
    pub n_sep: u32,
    pub c_hat: Option<f64>,
    pub z_samples: u64,
    pub h_samples: u64,
    pub theta: ThetaSearchParams,
    pub direct_p: bool,
    /// Continuous symbol whose `‖P‖` is also measured on the same schemes.
    pub control: Option<String>,
    pub seed: u64,
    pub threads: Option<usize>,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        let p = WitnessParams::default();
        WitnessConfig {
            symbol: "dyadic-cos".into(),
            case: SchemeCase::IIa,
            s_list: p.s_list,
            n_sep: p.n_sep,
            c_hat: p.c_hat,
            z_samples: p.z_samples,
            h_samples: p.h_samples,
            theta: p.theta,
            direct_p: p.direct_p,
            control: None,
            seed: p.seed,
            threads: None,
        }
    }
}

impl WitnessConfig {
    pub fn params(&self) -> WitnessParams {
        WitnessParams {
            s_list: self.s_list.clone(),
            n_sep: self.n_sep,
            c_hat: self.c_hat,
            z_samples: self.z_samples,
            h_samples: self.h_samples,
            seed: self.seed,
            theta: self.theta,
            direct_p: self.direct_p,
        }
    }
}
