use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;

/// An exact dyadic rational `mant · 2^(-exp)`.
///
/// Canonical form: the mantissa is odd unless the value is zero, in which
/// case `exp == 0`. Equality is therefore structural.
///
/// Arithmetic panics on mantissa overflow past `i128`; the Riesz-type
/// expansions in this crate never come close (their coefficients are single
/// signed powers of two).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: i128,
    exp: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { mant: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { mant: 1, exp: 0 };

    pub fn new(mant: i128, exp: u32) -> Self {
        if mant == 0 {
            return Dyadic::ZERO;
        }
        let tz = mant.trailing_zeros().min(exp);
        Dyadic {
            mant: mant >> tz,
            exp: exp - tz,
        }
    }

    pub fn from_int(v: i128) -> Self {
        Dyadic::new(v, 0)
    }

    /// `sign · 2^(-k)`.
    pub fn signed_pow2_neg(sign: i8, k: u32) -> Self {
        assert!(sign == 1 || sign == -1, "sign must be ±1");
        Dyadic::new(sign as i128, k)
    }

    pub fn mantissa(&self) -> i128 {
        self.mant
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant == 0
    }

    pub fn to_f64(&self) -> f64 {
        // Exact whenever the mantissa fits in 53 bits.
        self.mant as f64 * 0.5f64.powi(self.exp as i32)
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    fn align(a: &Dyadic, b: &Dyadic) -> (i128, i128, u32) {
        let e = a.exp.max(b.exp);
        let shift = |d: &Dyadic| -> i128 {
            let by = e - d.exp;
            d.mant
                .checked_mul(1i128.checked_shl(by).filter(|_| by < 127).expect("dyadic overflow"))
                .expect("dyadic overflow")
        };
        (shift(a), shift(b), e)
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        let (x, y, e) = Dyadic::align(self, o);
        Dyadic::new(x.checked_add(y).expect("dyadic overflow"), e)
    }

    pub fn sub(&self, o: &Dyadic) -> Dyadic {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        Dyadic::new(
            self.mant.checked_mul(o.mant).expect("dyadic overflow"),
            self.exp.checked_add(o.exp).expect("dyadic overflow"),
        )
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mant: -self.mant,
            exp: self.exp,
        }
    }

    /// Multiply by `2^(-k)`.
    pub fn halve_by(&self, k: u32) -> Dyadic {
        Dyadic::new(self.mant, self.exp + k)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (x, y, _) = Dyadic::align(self, other);
        x.cmp(&y)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.mant)
        } else {
            write!(f, "{}/2^{}", self.mant, self.exp)
        }
    }
}

impl From<Dyadic> for Complex64 {
    fn from(d: Dyadic) -> Self {
        Complex64::new(d.to_f64(), 0.0)
    }
}
