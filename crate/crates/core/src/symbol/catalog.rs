use std::f64::consts::PI;

use super::{DeclaredClass, MultiplierSymbol};
use crate::error::{Error, Result};

/// Identifiers of the built-in symbols.
pub const CATALOG_IDS: [&str; 6] = [
    "one",
    "gaussian",
    "riesz",
    "riesz-product",
    "dyadic-cos",
    "dyadic-step",
];

fn dyadic_phase(x: f64) -> f64 {
    (PI * x.abs().log2()).cos()
}

/// Looks up a built-in symbol.
///
/// * `one` — the constant 1.
/// * `gaussian` — `e^{-|ξ|^2}`, continuous at the origin.
/// * `riesz` — `ξ₁/|ξ|`, homogeneous of degree zero.
/// * `riesz-product` — `ξ₁ξ₂/|ξ|^2`, homogeneous of degree zero.
/// * `dyadic-cos` — `cos(π log₂|ξ₁|)`: equals `(-1)^k` at `ξ₁ = ±2^{-k}`,
///   symmetric under `ξ ↦ -ξ`. Discontinuous on the whole `ξ₁ = 0` axis
///   (value 0 is assigned there).
/// * `dyadic-step` — `½(1 + sgn(ξ₁) cos(π log₂|ξ₁|))`: 1 at `2^{-2k}`, 0 at
///   `-2^{-2k}`, so its two radial limits along `±(1,0)` differ.
pub fn by_id(id: &str) -> Result<MultiplierSymbol> {
    let sym = match id {
        "one" => MultiplierSymbol::new(id, DeclaredClass::Continuous, Some(1.0), |_, _| 1.0, |_, _| false),
        "gaussian" => MultiplierSymbol::new(
            id,
            DeclaredClass::Continuous,
            Some(1.0),
            |x, y| (-(x * x + y * y)).exp(),
            |_, _| false,
        ),
        "riesz" => MultiplierSymbol::new(
            id,
            DeclaredClass::Homogeneous0,
            Some(1.0),
            |x, y| {
                let r = x.hypot(y);
                if r == 0.0 {
                    0.0
                } else {
                    x / r
                }
            },
            |_, _| false,
        ),
        "riesz-product" => MultiplierSymbol::new(
            id,
            DeclaredClass::Homogeneous0,
            Some(0.5),
            |x, y| {
                let r2 = x * x + y * y;
                if r2 == 0.0 {
                    0.0
                } else {
                    x * y / r2
                }
            },
            |_, _| false,
        ),
        "dyadic-cos" => MultiplierSymbol::new(
            id,
            DeclaredClass::OscillatorySymmetric,
            Some(1.0),
            |x, _| if x == 0.0 { 0.0 } else { dyadic_phase(x) },
            |x, _| x == 0.0,
        ),
        "dyadic-step" => MultiplierSymbol::new(
            id,
            DeclaredClass::OscillatoryAsymmetric,
            Some(1.0),
            |x, _| {
                if x == 0.0 {
                    0.5
                } else {
                    0.5 * (1.0 + x.signum() * dyadic_phase(x))
                }
            },
            |x, _| x == 0.0,
        ),
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown symbol id {other:?}; known: {}",
                CATALOG_IDS.join(", ")
            )))
        }
    };
    Ok(sym)
}

/// All built-in symbols in catalog order.
pub fn catalog() -> Vec<MultiplierSymbol> {
    CATALOG_IDS
        .iter()
        .map(|id| by_id(id).expect("catalog ids resolve"))
        .collect()
}
