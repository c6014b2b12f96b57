//! Exact integer-lattice frequency algebra.
//!
//! Frequencies are points of `Z^2` stored as `i128` pairs, which comfortably
//! holds the geometrically growing centers of a lacunary scheme (about 2^121
//! for the largest runs). Coefficients of every Riesz-type product are signed
//! powers of two, so they are kept exactly as [`Dyadic`] numbers until the
//! evaluation boundary.

mod builders;
mod dyadic;
mod lambda;
mod poly;

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use builders::{exp_polynomial, modified_riesz_product, riesz_product_expand, z_polynomial};
pub use dyadic::Dyadic;
pub use lambda::{build_lambda_set, LambdaEntry, LambdaSet, MAX_LAMBDA_DEPTH};
pub use poly::{Coefficient, SparseTrigPoly};

/// A point of the integer lattice `Z^2`.
///
/// The derived order is lexicographic in `(k1, k2)`, which fixes the iteration
/// order of every map keyed by frequencies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Frequency {
    pub k1: i128,
    pub k2: i128,
}

impl Frequency {
    pub const ZERO: Frequency = Frequency { k1: 0, k2: 0 };

    pub const fn new(k1: i128, k2: i128) -> Self {
        Frequency { k1, k2 }
    }

    pub fn is_zero(&self) -> bool {
        self.k1 == 0 && self.k2 == 0
    }

    pub fn checked_add(self, o: Frequency) -> Option<Frequency> {
        Some(Frequency::new(self.k1.checked_add(o.k1)?, self.k2.checked_add(o.k2)?))
    }

    pub fn checked_sub(self, o: Frequency) -> Option<Frequency> {
        Some(Frequency::new(self.k1.checked_sub(o.k1)?, self.k2.checked_sub(o.k2)?))
    }

    pub fn checked_scale(self, k: i128) -> Option<Frequency> {
        Some(Frequency::new(self.k1.checked_mul(k)?, self.k2.checked_mul(k)?))
    }

    /// Exact squared Euclidean norm.
    pub fn norm_sq(&self) -> BigInt {
        let a = BigInt::from(self.k1);
        let b = BigInt::from(self.k2);
        &a * &a + &b * &b
    }

    /// Euclidean norm in floating point (relative error about one ulp).
    pub fn norm(&self) -> f64 {
        (self.k1 as f64).hypot(self.k2 as f64)
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> u128 {
        self.k1.unsigned_abs().max(self.k2.unsigned_abs())
    }

    pub fn as_f64(&self) -> [f64; 2] {
        [self.k1 as f64, self.k2 as f64]
    }
}

impl Neg for Frequency {
    type Output = Frequency;
    fn neg(self) -> Frequency {
        Frequency::new(-self.k1, -self.k2)
    }
}

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k1, self.k2)
    }
}

impl From<(i128, i128)> for Frequency {
    fn from(p: (i128, i128)) -> Self {
        Frequency::new(p.0, p.1)
    }
}

// JSON numbers lose precision past 2^53, so coordinates travel as decimal
// strings.
impl Serialize for Frequency {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.k1.to_string(), self.k2.to_string()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Frequency {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b] = <[String; 2]>::deserialize(d)?;
        let k1 = a.parse().map_err(serde::de::Error::custom)?;
        let k2 = b.parse().map_err(serde::de::Error::custom)?;
        Ok(Frequency::new(k1, k2))
    }
}
