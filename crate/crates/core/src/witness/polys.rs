use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::freq::{exp_polynomial, z_polynomial, Dyadic, Frequency, SparseTrigPoly};
use crate::scheme::{IntegerScheme, SchemeCase};
use crate::symbol::{deleeuw_sample, MultiplierSymbol, SampleWindow};

/// `P(ξ) = Σ_{q ∈ Λ_s} m(q) 2^{-χ(q)} e^{2πi⟨q,ξ⟩}`, where `m` is read at
/// the integer points through the scheme's dilation (`q ↦ m(q/scale)`).
pub fn p_polynomial(symbol: &MultiplierSymbol, scheme: &IntegerScheme) -> Result<SparseTrigPoly> {
    let lambda = scheme.lambda_set()?;
    let points: Vec<Frequency> = lambda.iter().map(|(q, _)| *q).collect();
    let values = deleeuw_sample(symbol, 1.0 / scheme.scale_f64(), &SampleWindow::Points(points))?;
    let mut p = SparseTrigPoly::zero();
    for (q, e) in lambda.iter() {
        let m = values[q];
        if m != 0.0 {
            let w = Dyadic::signed_pow2_neg(1, e.chi).to_f64();
            p.add_term(*q, Complex64::new(m * w, 0.0));
        }
    }
    p.refresh_real_flag();
    Ok(p)
}

/// Index `k` (1-based) and sign of the unique top-level ball `B(±c^k, r_k)`
/// containing `q`, by exact comparison of squared distances.
fn ball_of(scheme: &IntegerScheme, q: &Frequency) -> Result<(usize, i8)> {
    let mut found: Option<(usize, i8)> = None;
    for (k, (c, r)) in scheme.centers.iter().zip(&scheme.radii).enumerate() {
        let r2 = r * r;
        for sign in [1i8, -1] {
            let target = if sign > 0 { *c } else { -*c };
            let d = q
                .checked_sub(target)
                .ok_or_else(|| Error::ScaleOverflow(format!("{q} − {target}")))?;
            if BigRational::from_integer(d.norm_sq()) <= r2 {
                if found.is_some() {
                    return Err(Error::BallAssignmentAmbiguous(*q));
                }
                found = Some((k + 1, sign));
            }
        }
    }
    found.ok_or(Error::BallAssignmentAmbiguous(*q))
}

/// The target polynomial read off the balls: in the symmetric case
/// `a(q) = (−1)^k 2^{-χ(q)}` for `q ∈ B(±c^k, r_k)`; in the asymmetric case
/// `a(q) = 2^{-χ(q)}` on the balls around `+c^k` and `0` on those around
/// `−c^k`.
///
/// The result is checked coefficient for coefficient against the signed
/// Riesz sum with signs `(−1)^j` (symmetric case) or against half the
/// exponential Riesz sum (asymmetric case; its coefficients are
/// `2^{1−χ(q)}`). A mismatch is an [`Error::IdentityMismatch`].
pub fn z_target(scheme: &IntegerScheme) -> Result<SparseTrigPoly<Dyadic>> {
    let lambda = scheme.lambda_set()?;
    let mut z = SparseTrigPoly::zero();
    for (q, e) in lambda.iter() {
        let (k, sign) = ball_of(scheme, q)?;
        let coeff = match scheme.case {
            SchemeCase::IIa => {
                let sgn = if k % 2 == 0 { 1 } else { -1 };
                Some(Dyadic::signed_pow2_neg(sgn, e.chi))
            }
            SchemeCase::IIb => (sign > 0).then(|| Dyadic::signed_pow2_neg(1, e.chi)),
        };
        if let Some(c) = coeff {
            z.add_term(*q, c);
        }
    }
    z.refresh_real_flag();

    let reference = match scheme.case {
        SchemeCase::IIa => {
            let signs: Vec<i8> = (1..=scheme.s).map(|j| if j % 2 == 0 { 1 } else { -1 }).collect();
            z_polynomial(&scheme.centers, &signs)?
        }
        SchemeCase::IIb => exp_polynomial(&scheme.centers)?.map(|_, c| c.halve_by(1)),
    };
    if reference.len() != z.len() {
        return Err(Error::IdentityMismatch(format!(
            "target has {} terms, closed form {}",
            z.len(),
            reference.len()
        )));
    }
    for (q, c) in reference.iter() {
        if z.get(q) != Some(c) {
            return Err(Error::IdentityMismatch(format!(
                "coefficient at {q}: target {:?}, closed form {c}",
                z.get(q)
            )));
        }
    }
    Ok(z)
}

/// `ε 3^s` together with the exact coefficient distance `Σ |P̂(q) − Ẑ(q)|`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GapBound {
    pub bound: f64,
    pub measured: f64,
}

/// Bounds `‖Z − P‖_{L¹(T²)}` by the coefficient distance, and that by
/// `ε 3^s`; fails with [`Error::GapExceeded`] if the second step does not
/// hold.
pub fn gap_bound(
    scheme: &IntegerScheme,
    p: &SparseTrigPoly,
    z: &SparseTrigPoly<Dyadic>,
) -> Result<GapBound> {
    let bound = scheme.epsilon * 3f64.powi(scheme.s as i32);
    let zc = z.to_complex();
    let measured = p.sub(&zc).abs_sum();
    if measured > bound {
        return Err(Error::GapExceeded { measured, bound });
    }
    Ok(GapBound { bound, measured })
}

/// `‖m‖_∞`: the declared hint, else the largest sampled value on `Λ_s`.
pub(crate) fn sup_norm_on(symbol: &MultiplierSymbol, scheme: &IntegerScheme) -> Result<f64> {
    if let Some(h) = symbol.sup_norm_hint {
        return Ok(h);
    }
    let lambda = scheme.lambda_set()?;
    let points: Vec<Frequency> = lambda.iter().map(|(q, _)| *q).collect();
    let v = deleeuw_sample(symbol, 1.0 / scheme.scale_f64(), &SampleWindow::Points(points))?;
    Ok(v.values().fold(0.0, |a: f64, b| a.max(b.abs())))
}
