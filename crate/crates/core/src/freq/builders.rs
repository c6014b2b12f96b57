//! Expansion of Riesz-type products into sparse polynomials.
//!
//! Every builder first validates the center sequence through
//! [`build_lambda_set`] and then expands by genuine sparse multiplication, so
//! the coefficient tables can be cross-checked against the `Λ_s`
//! bookkeeping.

use super::{build_lambda_set, Dyadic, Frequency, SparseTrigPoly};
use crate::error::{Error, Result};

type DPoly = SparseTrigPoly<Dyadic>;

fn half() -> Dyadic {
    Dyadic::new(1, 1)
}

/// `cos(2π⟨c,ξ⟩) = ½e^{c} + ½e^{-c}`.
fn cosine(c: Frequency) -> DPoly {
    DPoly::from_terms([(c, half()), (-c, half())])
}

/// `1 + cos(2π⟨c,ξ⟩)`.
fn one_plus_cosine(c: Frequency) -> DPoly {
    DPoly::from_terms([(Frequency::ZERO, Dyadic::ONE), (c, half()), (-c, half())])
}

/// Prefix products `Π_{k<j}(1 + cos 2π⟨c^k,ξ⟩)` for `j = 1..=s`.
fn prefix_products(centers: &[Frequency]) -> Result<Vec<DPoly>> {
    let mut out = Vec::with_capacity(centers.len());
    let mut acc = DPoly::constant(Dyadic::ONE);
    for c in centers {
        out.push(acc.clone());
        acc = acc.mul(&one_plus_cosine(*c))?;
    }
    Ok(out)
}

/// The full Riesz product `Π_{k=1}^{s}(1 + cos 2π⟨c^k,ξ⟩)`: constant term 1
/// and coefficient `2^{-χ(q)}` at every `q ∈ Λ_s`.
pub fn riesz_product_expand(centers: &[Frequency]) -> Result<DPoly> {
    build_lambda_set(centers)?;
    let mut acc = DPoly::constant(Dyadic::ONE);
    for c in centers {
        acc = acc.mul(&one_plus_cosine(*c))?;
    }
    acc.refresh_real_flag();
    Ok(acc)
}

/// The Riesz product with its constant term removed, `R_s = Π(1 + cos) − 1`.
pub fn modified_riesz_product(centers: &[Frequency]) -> Result<DPoly> {
    let mut p = riesz_product_expand(centers)?.without_constant();
    p.refresh_real_flag();
    Ok(p)
}

/// The signed Riesz sum `Σ_j σ_j cos(2π⟨c^j,ξ⟩) Π_{k<j}(1 + cos 2π⟨c^k,ξ⟩)`.
///
/// Its coefficient at `q ∈ Λ_s` is `σ_{top(q)} 2^{-χ(q)}`.
pub fn z_polynomial(centers: &[Frequency], signs: &[i8]) -> Result<DPoly> {
    if signs.len() != centers.len() {
        return Err(Error::InvalidParameter(format!(
            "{} signs given for {} centers",
            signs.len(),
            centers.len()
        )));
    }
    if let Some(bad) = signs.iter().find(|s| **s != 1 && **s != -1) {
        return Err(Error::InvalidParameter(format!("sign {bad} is not ±1")));
    }
    build_lambda_set(centers)?;
    let prefixes = prefix_products(centers)?;
    let mut out = DPoly::zero();
    for ((c, sigma), pre) in centers.iter().zip(signs).zip(&prefixes) {
        let term = pre.mul(&cosine(*c))?;
        out = out.add(&term.scale(&Dyadic::from_int(*sigma as i128)));
    }
    out.refresh_real_flag();
    Ok(out)
}

/// The one-sided sum `Σ_j e^{2πi⟨c^j,ξ⟩} Π_{k<j}(1 + cos 2π⟨c^k,ξ⟩)`.
///
/// Its coefficient at `q ∈ Λ_s` is `2^{-(χ(q)-1)}` when the top sign of `q`
/// is `+1` and zero otherwise.
pub fn exp_polynomial(centers: &[Frequency]) -> Result<DPoly> {
    build_lambda_set(centers)?;
    let prefixes = prefix_products(centers)?;
    let mut out = DPoly::zero();
    for (c, pre) in centers.iter().zip(&prefixes) {
        out = out.add(&pre.mul(&DPoly::monomial(*c, Dyadic::ONE))?);
    }
    out.refresh_real_flag();
    Ok(out)
}
