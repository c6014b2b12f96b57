use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::MultiplierSymbol;
use crate::error::{Error, Result};

/// Test profile `f` of the modulated family `h_λ(x) = λ e^{2πi⟨x,ξ₀⟩} f(λx)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeProfile {
    /// `f(x) = e^{-π|x|^2}`: `ℱf(0) = 1`, `‖∇f‖₁ = π`.
    Gaussian,
    /// Any smooth nonnegative profile described by its two constants.
    Custom { ft_at_zero: f64, grad_l1: f64 },
}

impl ProbeProfile {
    fn constants(&self) -> (f64, f64) {
        match *self {
            ProbeProfile::Gaussian => (1.0, PI),
            ProbeProfile::Custom { ft_at_zero, grad_l1 } => (ft_at_zero, grad_l1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub lambda: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeTable {
    pub xi0: [f64; 2],
    pub m_abs: f64,
    pub rows: Vec<ProbeRow>,
    /// Linear extrapolation to `λ = 0` from the two smallest positive `λ`.
    pub extrapolated: Option<f64>,
}

/// Lower bounds `‖T_m h_λ‖ / ‖h_λ‖` along the family `h_λ`:
///
/// `ratio(λ) = |2π m(ξ₀) ℱf(0)| / (2π ℱf(0) + λ‖∇f‖₁)`,
///
/// which increases to `|m(ξ₀)|` as `λ → 0`.
pub fn sup_norm_probe(
    symbol: &MultiplierSymbol,
    xi0: [f64; 2],
    profile: ProbeProfile,
    lambdas: &[f64],
) -> Result<ProbeTable> {
    if xi0 == [0.0, 0.0] {
        return Err(Error::InvalidParameter("probe point must be nonzero".into()));
    }
    if let Some(l) = lambdas.iter().find(|l| !(**l >= 0.0 && l.is_finite())) {
        return Err(Error::InvalidParameter(format!("λ = {l} is not a nonnegative number")));
    }
    if symbol.is_singular(xi0[0], xi0[1]) {
        return Err(Error::SampleOnSingularity {
            symbol: symbol.id().to_string(),
            x: xi0[0],
            y: xi0[1],
        });
    }
    let (f0, grad) = profile.constants();
    let m_abs = symbol.eval(xi0[0], xi0[1]).abs();
    let rows: Vec<ProbeRow> = lambdas
        .iter()
        .map(|&lambda| ProbeRow {
            lambda,
            ratio: (2.0 * PI * m_abs * f0) / (2.0 * PI * f0 + lambda * grad),
        })
        .collect();

    let mut pos: Vec<&ProbeRow> = rows.iter().filter(|r| r.lambda > 0.0).collect();
    pos.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    pos.dedup_by(|a, b| a.lambda == b.lambda);
    let extrapolated = match pos.as_slice() {
        [a, b, ..] => Some((b.lambda * a.ratio - a.lambda * b.ratio) / (b.lambda - a.lambda)),
        _ => None,
    };
    Ok(ProbeTable {
        xi0,
        m_abs,
        rows,
        extrapolated,
    })
}
