use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::MultiplierSymbol;
use crate::error::{Error, Result};
use crate::freq::Frequency;

/// Lattice points at which a symbol is sampled.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleWindow {
    /// All `n` with `max(|n₁|, |n₂|) ≤ radius`.
    Box(i64),
    Points(Vec<Frequency>),
}

/// The lattice restriction `n ↦ m(εn)` over a window.
///
/// Sampling is exact pointwise evaluation; a point on the symbol's
/// discontinuity locus is an error rather than a silently chosen value.
pub fn deleeuw_sample(
    symbol: &MultiplierSymbol,
    epsilon: f64,
    window: &SampleWindow,
) -> Result<BTreeMap<Frequency, f64>> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!("scale {epsilon} must be positive")));
    }
    let points: Vec<Frequency> = match window {
        SampleWindow::Box(r) => {
            if *r < 0 {
                return Err(Error::InvalidParameter("window radius must be nonnegative".into()));
            }
            let r = *r as i128;
            let mut v = Vec::new();
            for a in -r..=r {
                for b in -r..=r {
                    v.push(Frequency::new(a, b));
                }
            }
            v
        }
        SampleWindow::Points(p) => p.clone(),
    };
    let mut out = BTreeMap::new();
    for n in points {
        if n.is_zero() {
            // The origin carries the mean, which the lattice restriction does
            // not read from a symbol defined off the origin.
            continue;
        }
        let (x, y) = (epsilon * n.k1 as f64, epsilon * n.k2 as f64);
        if symbol.is_singular(x, y) {
            return Err(Error::SampleOnSingularity {
                symbol: symbol.id().to_string(),
                x,
                y,
            });
        }
        out.insert(n, symbol.eval(x, y));
    }
    Ok(out)
}
