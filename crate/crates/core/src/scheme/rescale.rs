use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::{AccumulationFrame, Coord, LacunaryScheme, SchemeCase};
use crate::error::{Error, Result};
use crate::freq::{build_lambda_set, Frequency, LambdaSet};
use crate::symbol::MultiplierSymbol;

/// Per axis, the sum of all `|c^j_i|` must stay below `2^126`, so every
/// signed subset sum and every difference of two such sums fits in `i128`.
pub const COORDINATE_HEADROOM_BITS: u32 = 126;

/// A scheme whose centers have been multiplied onto `Z^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegerScheme {
    pub s: usize,
    pub scale: BigInt,
    pub centers: Vec<Frequency>,
    /// Radii multiplied by the same scale.
    pub radii: Vec<BigRational>,
    pub epsilon: f64,
    pub n_sep: u32,
    pub case: SchemeCase,
    pub symbol_id: String,
    pub frame: AccumulationFrame,
}

impl IntegerScheme {
    pub fn scale_f64(&self) -> f64 {
        self.scale.to_f64().unwrap_or(f64::INFINITY)
    }

    /// The companion symbol `ξ ↦ m(ξ/scale)` that the integer centers see.
    pub fn rescaled_symbol(&self, symbol: &MultiplierSymbol) -> MultiplierSymbol {
        symbol.rescaled(self.scale_f64())
    }

    pub fn lambda_set(&self) -> Result<LambdaSet> {
        build_lambda_set(&self.centers)
    }

    /// The integer scheme viewed as a rational scheme, for re-verification.
    pub fn as_scheme(&self) -> LacunaryScheme {
        LacunaryScheme {
            s: self.s,
            centers: self
                .centers
                .iter()
                .map(|q| {
                    [
                        Coord::Exact(BigRational::from_integer(BigInt::from(q.k1))),
                        Coord::Exact(BigRational::from_integer(BigInt::from(q.k2))),
                    ]
                })
                .collect(),
            radii: self.radii.clone(),
            epsilon: self.epsilon,
            n_sep: self.n_sep,
            case: self.case,
            symbol_id: self.symbol_id.clone(),
            frame: self.frame,
        }
    }
}

/// Multiplies the scheme by the least common multiple of all center
/// denominators.
pub fn rescale_to_integers(scheme: &LacunaryScheme) -> Result<IntegerScheme> {
    let mut exact = Vec::with_capacity(scheme.s);
    for (i, c) in scheme.centers.iter().enumerate() {
        match c {
            [Coord::Exact(a), Coord::Exact(b)] => exact.push([a.clone(), b.clone()]),
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "center {} has an approximate coordinate",
                    i + 1
                )))
            }
        }
    }
    let scale = exact
        .iter()
        .flat_map(|p| p.iter())
        .fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let scale_r = BigRational::from_integer(scale.clone());
    let limit = BigInt::one() << COORDINATE_HEADROOM_BITS;
    let mut axis_sum = [BigInt::from(0), BigInt::from(0)];
    let mut centers = Vec::with_capacity(scheme.s);
    for p in &exact {
        let mut k = [0i128; 2];
        for i in 0..2 {
            let v = (&p[i] * &scale_r).to_integer();
            axis_sum[i] += v.abs();
            if axis_sum[i] >= limit {
                return Err(Error::ScaleOverflow(format!(
                    "scale {scale} puts axis-{} coordinate sums past 2^{COORDINATE_HEADROOM_BITS}",
                    i + 1
                )));
            }
            k[i] = v.to_i128().expect("bounded above");
        }
        centers.push(Frequency::new(k[0], k[1]));
    }
    Ok(IntegerScheme {
        s: scheme.s,
        radii: scheme.radii.iter().map(|r| r * &scale_r).collect(),
        scale,
        centers,
        epsilon: scheme.epsilon,
        n_sep: scheme.n_sep,
        case: scheme.case,
        symbol_id: scheme.symbol_id.clone(),
        frame: scheme.frame,
    })
}
