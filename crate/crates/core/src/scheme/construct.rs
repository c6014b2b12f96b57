use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::verify::{symbol_condition_holds, verify_conditions};
use super::{inv_pow2, rational_to_f64, AccumulationFrame, Coord, LacunaryScheme, SchemeCase};
use crate::error::{Error, Result};
use crate::symbol::MultiplierSymbol;

/// Largest admissible slope `|c_2|/|c_1|` for depth `s`: `1/(3^{s+2} s)`.
pub fn e_slope_bound(s: usize) -> BigRational {
    BigRational::new(
        BigInt::one(),
        BigInt::from(3).pow(s as u32 + 2) * BigInt::from(s),
    )
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructParams {
    pub s: usize,
    pub epsilon: f64,
    /// Separation exponent `N`.
    #[serde(default = "default_n")]
    pub n_sep: u32,
    pub case: SchemeCase,
    /// Common slope `c_2/c_1` of all centers as `[numerator, denominator]`;
    /// defaults to the largest slope allowed at depth `s`.
    #[serde(default)]
    pub slope: Option<[u64; 2]>,
    /// The outermost center satisfies `c^s_1 ≤ 2^{-start_exponent}`.
    #[serde(default = "default_start")]
    pub start_exponent: u32,
    /// Number of dyadic scales tried for each center before giving up.
    #[serde(default = "default_budget")]
    pub scale_budget: u32,
    /// Number of radius halvings tried at each scale.
    #[serde(default = "default_halvings")]
    pub radius_halvings: u32,
    /// Accumulation values of the symbol; defaults to the standard frame of
    /// the case.
    #[serde(default)]
    pub frame: Option<AccumulationFrame>,
}

fn default_n() -> u32 {
    8
}
fn default_start() -> u32 {
    1
}
fn default_budget() -> u32 {
    64
}
fn default_halvings() -> u32 {
    48
}

impl ConstructParams {
    pub fn new(case: SchemeCase, s: usize, epsilon: f64) -> Self {
        ConstructParams {
            s,
            epsilon,
            n_sep: default_n(),
            case,
            slope: None,
            start_exponent: default_start(),
            scale_budget: default_budget(),
            radius_halvings: default_halvings(),
            frame: None,
        }
    }

    pub fn slope_rational(&self) -> BigRational {
        match self.slope {
            Some([p, q]) => BigRational::new(BigInt::from(p), BigInt::from(q)),
            None => e_slope_bound(self.s),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.s == 0 {
            return Err(Error::InvalidParameter("s must be at least 1".into()));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidParameter(format!("epsilon {} must be positive", self.epsilon)));
        }
        if self.n_sep == 0 {
            return Err(Error::InvalidParameter("separation exponent N must be at least 1".into()));
        }
        if let Some([p, q]) = self.slope {
            if p == 0 || q == 0 {
                return Err(Error::InvalidParameter("slope must be a positive fraction".into()));
            }
        }
        if self.slope_rational() > e_slope_bound(self.s) {
            return Err(Error::InvalidParameter(format!(
                "slope {} exceeds the admissible bound {} at s = {}",
                self.slope_rational(),
                e_slope_bound(self.s),
                self.s
            )));
        }
        Ok(())
    }
}

/// Builds centers `c^n = 2^{-j_n}(1, κ)` and radii by backward induction,
/// `n = s, s−1, …, 1`.
///
/// For each `n` the scale `j_n` starts at the smallest value with
/// `|c^n| < 2^{-N} r_{n+1}` and increases until the symbol condition can be
/// met; the radius starts at `κ 2^{-j_n}/2` (strictly inside the axis
/// clearance) and is halved until the sampled symbol condition holds with
/// margin. Every other condition then follows exactly, and the finished
/// scheme is re-verified before it is returned.
pub fn construct_scheme(symbol: &MultiplierSymbol, params: &ConstructParams) -> Result<LacunaryScheme> {
    params.validate()?;
    let s = params.s;
    let kappa = params.slope_rational();
    let frame = params.frame.unwrap_or_else(|| AccumulationFrame::standard(params.case));
    let one_plus_k2 = BigRational::one() + &kappa * &kappa;
    let sep_sq = {
        let k = inv_pow2(params.n_sep);
        &k * &k
    };

    let mut centers: Vec<[Coord; 2]> = vec![[Coord::Approx(0.0), Coord::Approx(0.0)]; s];
    let mut radii: Vec<BigRational> = vec![BigRational::zero(); s];
    let mut j_next = params.start_exponent;
    let mut outer_radius: Option<BigRational> = None;

    for n in (1..=s).rev() {
        // Smallest admissible scale.
        let mut j = j_next;
        if let Some(r_up) = &outer_radius {
            let bound = &sep_sq * r_up * r_up;
            loop {
                let x = inv_pow2(j);
                if &x * &x * &one_plus_k2 < bound {
                    break;
                }
                j += 1;
            }
        }

        let mut found = None;
        'scales: for jj in j..j + params.scale_budget {
            let x = inv_pow2(jj);
            let y = &x * &kappa;
            let center_f = [rational_to_f64(&x), rational_to_f64(&y)];
            if !symbol_condition_holds(symbol, params.case, &frame, params.epsilon, n, center_f, 0.0) {
                continue;
            }
            let mut r = &y / BigRational::from_integer(BigInt::from(2));
            for _ in 0..=params.radius_halvings {
                if symbol_condition_holds(
                    symbol,
                    params.case,
                    &frame,
                    params.epsilon,
                    n,
                    center_f,
                    rational_to_f64(&r),
                ) {
                    found = Some((jj, x, y, r));
                    break 'scales;
                }
                r /= BigRational::from_integer(BigInt::from(2));
            }
        }
        let (jj, x, y, r) = found.ok_or_else(|| Error::ConstructionFailed {
            condition: "A".into(),
            depth: n,
        })?;
        debug_assert!(r.is_positive());
        centers[n - 1] = [Coord::Exact(x), Coord::Exact(y)];
        radii[n - 1] = r.clone();
        outer_radius = Some(r);
        j_next = jj + 1;
    }

    let scheme = LacunaryScheme {
        s,
        centers,
        radii,
        epsilon: params.epsilon,
        n_sep: params.n_sep,
        case: params.case,
        symbol_id: symbol.id().to_string(),
        frame,
    };
    let report = verify_conditions(&scheme, symbol);
    if let Some(key) = report.failing().first() {
        let depth = report.get(key).and_then(|c| c.first_violation).unwrap_or(0);
        return Err(Error::ConstructionFailed {
            condition: key.to_string(),
            depth,
        });
    }
    Ok(scheme)
}
