//! Lacunary ball schemes: construction by backward induction, exact
//! verification of the geometric conditions, and rescaling to the lattice.
//!
//! A scheme is a sequence of centers `c^1, …, c^s` (rational points, smallest
//! first) with radii `r_1 < … < r_s`. Geometric conditions are decided in
//! exact rational arithmetic; only the symbol condition `A`/`A′` involves
//! floating-point evaluation.

mod construct;
mod json;
mod rescale;
mod verify;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use construct::{construct_scheme, e_slope_bound, ConstructParams};
pub use json::SchemeDocument;
pub use rescale::{rescale_to_integers, IntegerScheme, COORDINATE_HEADROOM_BITS};
pub use verify::{verify_conditions, verify_geometry, ConditionOutcome, VerificationReport, CONDITION_KEYS};

/// A center coordinate. `Approx` exists so that a float-contaminated scheme
/// can be represented and rejected by condition `C`.
#[derive(Clone, Debug, PartialEq)]
pub enum Coord {
    Exact(BigRational),
    Approx(f64),
}

impl Coord {
    pub fn is_exact(&self) -> bool {
        matches!(self, Coord::Exact(_))
    }

    /// Exact value; an `Approx` coordinate is read as the binary rational it
    /// literally stores.
    pub fn to_rational(&self) -> BigRational {
        match self {
            Coord::Exact(r) => r.clone(),
            Coord::Approx(v) => BigRational::from_float(*v).unwrap_or_else(BigRational::zero),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Coord::Exact(r) => rational_to_f64(r),
            Coord::Approx(v) => *v,
        }
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn pow2(k: u32) -> BigInt {
    BigInt::one() << k
}

/// `2^{-k}` as a rational.
pub(crate) fn inv_pow2(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), pow2(k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SchemeCase {
    /// Symmetric oscillation: `m ≈ (-1)^k` on both balls `B(±c^k, r_k)`.
    IIa,
    /// Asymmetric oscillation: `m ≈ 1` on `B(c^k, r_k)`, `m ≈ 0` on
    /// `B(-c^k, r_k)`.
    IIb,
}

/// Affine normalisation of the symbol's two accumulation values.
///
/// For IIa the values `a > b` are sent to `±1` via `(2m − a − b)/(a − b)`;
/// for IIb the values `a`, `b` are sent to `1`, `0` via `(m − b)/(a − b)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AccumulationFrame {
    pub limit_a: f64,
    pub limit_b: f64,
}

impl AccumulationFrame {
    pub fn standard(case: SchemeCase) -> Self {
        match case {
            SchemeCase::IIa => AccumulationFrame { limit_a: 1.0, limit_b: -1.0 },
            SchemeCase::IIb => AccumulationFrame { limit_a: 1.0, limit_b: 0.0 },
        }
    }

    pub fn normalize(&self, case: SchemeCase, m: f64) -> f64 {
        let (a, b) = (self.limit_a, self.limit_b);
        match case {
            SchemeCase::IIa => (2.0 * m - a - b) / (a - b),
            SchemeCase::IIb => (m - b) / (a - b),
        }
    }
}

/// Center/radius data plus the parameters the conditions refer to.
/// Index `0` of each vector is `c^1` / `r_1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LacunaryScheme {
    pub s: usize,
    pub centers: Vec<[Coord; 2]>,
    pub radii: Vec<BigRational>,
    pub epsilon: f64,
    /// Separation exponent `N`.
    pub n_sep: u32,
    pub case: SchemeCase,
    pub symbol_id: String,
    pub frame: AccumulationFrame,
}

impl LacunaryScheme {
    pub fn exact_centers(&self) -> Vec<[BigRational; 2]> {
        self.centers
            .iter()
            .map(|c| [c[0].to_rational(), c[1].to_rational()])
            .collect()
    }

    pub fn centers_f64(&self) -> Vec<[f64; 2]> {
        self.centers.iter().map(|c| [c[0].to_f64(), c[1].to_f64()]).collect()
    }
}
