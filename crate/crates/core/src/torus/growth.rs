use serde::{Deserialize, Serialize};

use super::{l1_norm, NormEstimate, QuadratureSpec};
use crate::error::{Error, Result};
use crate::freq::{exp_polynomial, z_polynomial, Frequency};

/// Which Riesz-type sum to measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthBuilder {
    /// `Σ (-1)^j cos(2π⟨c^j,ξ⟩) Π_{k<j}(1+cos)`.
    SymmetricZ,
    /// `Σ e^{2πi⟨c^j,ξ⟩} Π_{k<j}(1+cos)`.
    AsymmetricExp,
}

/// Source of the first `s` centers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterGenerator {
    /// `c^j = ratio^{j-1} · (1, 0)`.
    Collinear { ratio: i128 },
    /// A fixed list, truncated to the first `s` entries.
    Explicit(Vec<Frequency>),
}

impl CenterGenerator {
    pub fn centers(&self, s: usize) -> Result<Vec<Frequency>> {
        match self {
            CenterGenerator::Collinear { ratio } => {
                if *ratio < 2 {
                    return Err(Error::InvalidParameter(format!(
                        "collinear ratio must be at least 2, got {ratio}"
                    )));
                }
                let mut out = Vec::with_capacity(s);
                let mut c: i128 = 1;
                for j in 0..s {
                    if j > 0 {
                        c = c.checked_mul(*ratio).ok_or_else(|| {
                            Error::InvalidParameter(format!("ratio^{j} overflows i128"))
                        })?;
                    }
                    out.push(Frequency::new(c, 0));
                }
                Ok(out)
            }
            CenterGenerator::Explicit(v) => {
                if v.len() < s {
                    return Err(Error::InvalidParameter(format!(
                        "{} explicit centers, {s} requested",
                        v.len()
                    )));
                }
                Ok(v[..s].to_vec())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub s: usize,
    pub norm: NormEstimate,
    /// `norm / s`, error bound scaled alike.
    pub per_s: NormEstimate,
}

/// L¹ norms of the chosen Riesz-type sum for each `s` in the range.
pub fn growth_profile(
    builder: GrowthBuilder,
    generator: &CenterGenerator,
    s_range: std::ops::RangeInclusive<usize>,
    spec: &QuadratureSpec,
) -> Result<Vec<GrowthRow>> {
    let mut rows = Vec::new();
    for s in s_range {
        if s == 0 {
            return Err(Error::InvalidParameter("s must be positive".into()));
        }
        let centers = generator.centers(s)?;
        let poly = match builder {
            GrowthBuilder::SymmetricZ => {
                let signs: Vec<i8> = (1..=s).map(|j| if j % 2 == 0 { 1 } else { -1 }).collect();
                z_polynomial(&centers, &signs)?
            }
            GrowthBuilder::AsymmetricExp => exp_polynomial(&centers)?,
        };
        let norm = l1_norm(&poly, spec)?;
        let per_s = norm.scaled(1.0 / s as f64);
        rows.push(GrowthRow { s, norm, per_s });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cosine_and_exponential() {
        let g = CenterGenerator::Collinear { ratio: 16 };
        let z = growth_profile(GrowthBuilder::SymmetricZ, &g, 1..=1, &QuadratureSpec::fixed(4096)).unwrap();
        assert!((z[0].norm.value - 2.0 / std::f64::consts::PI).abs() < 1e-6);
        let e = growth_profile(GrowthBuilder::AsymmetricExp, &g, 1..=1, &QuadratureSpec::auto()).unwrap();
        assert!((e[0].norm.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn generator_validation() {
        assert!(CenterGenerator::Collinear { ratio: 1 }.centers(2).is_err());
        assert!(CenterGenerator::Explicit(vec![Frequency::new(1, 0)]).centers(2).is_err());
        assert!(CenterGenerator::Collinear { ratio: 1 << 60 }.centers(4).is_err());
    }
}
