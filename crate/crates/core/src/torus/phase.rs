use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::freq::{Coefficient, Frequency, SparseTrigPoly};

/// A point of `T^2` as 128-bit binary fractions: `ξ_i = u_i / 2^128`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorusPoint {
    pub u: [u128; 2],
}

const TWO_POW_128: f64 = 340_282_366_920_938_463_463_374_607_431_768_211_456.0;

fn frac_to_fixed(x: f64) -> u128 {
    let mut frac = x - x.floor();
    if !(0.0..1.0).contains(&frac) {
        frac = 0.0;
    }
    // `frac` has at most 53 significant bits, so the product is an exact
    // integer below 2^128.
    (frac * TWO_POW_128) as u128
}

impl TorusPoint {
    /// Reduces `(x, y)` mod 1 and converts exactly to fixed point.
    pub fn from_f64(x: f64, y: f64) -> Self {
        TorusPoint {
            u: [frac_to_fixed(x), frac_to_fixed(y)],
        }
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [self.u[0] as f64 / TWO_POW_128, self.u[1] as f64 / TWO_POW_128]
    }
}

/// `⟨q, ξ⟩ mod 1` as a 128-bit fraction of a turn. Exact: two's-complement
/// wrapping arithmetic is arithmetic modulo `2^128`.
#[inline]
pub fn phase_turns(q: &Frequency, p: &TorusPoint) -> u128 {
    (q.k1 as u128)
        .wrapping_mul(p.u[0])
        .wrapping_add((q.k2 as u128).wrapping_mul(p.u[1]))
}

/// `e^{2πi t}` for a fixed-point turn count `t`. The angle is folded into
/// `[-π, π)` before the trigonometric call.
#[inline]
pub fn unit_phasor(turns: u128) -> Complex64 {
    let centred = (turns >> 64) as u64 as i64 as f64 * (1.0 / 18_446_744_073_709_551_616.0);
    let (s, c) = (TAU * centred).sin_cos();
    Complex64::new(c, s)
}

/// `Σ c_q e^{2πi⟨q,ξ⟩}` at a fixed-point torus point.
pub fn eval_at_point<C: Coefficient>(poly: &SparseTrigPoly<C>, p: &TorusPoint) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (q, c) in poly.iter() {
        acc += c.to_complex() * unit_phasor(phase_turns(q, p));
    }
    acc
}

/// `Σ c_q e^{2πi⟨q,ξ⟩}` at `ξ = (x, y)` (reduced mod 1).
pub fn eval_at<C: Coefficient>(poly: &SparseTrigPoly<C>, point: [f64; 2]) -> Complex64 {
    eval_at_point(poly, &TorusPoint::from_f64(point[0], point[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freq::Dyadic;

    #[test]
    fn constant_is_one_everywhere() {
        let p = SparseTrigPoly::constant(Dyadic::ONE);
        for pt in [[0.0, 0.0], [0.3, 0.9], [-4.25, 7.5]] {
            let v = eval_at(&p, pt);
            assert_eq!(v, Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn cosine_zero_at_quarter_period() {
        let h = Dyadic::new(1, 1);
        let p = SparseTrigPoly::from_terms([
            (Frequency::new(3, 0), h),
            (Frequency::new(-3, 0), h),
        ]);
        let v = eval_at(&p, [1.0 / 12.0, 0.7]);
        assert!(v.norm() < 1e-15, "{v}");
    }

    #[test]
    fn huge_frequency_phase_is_exact() {
        // q = 2^120 at ξ = 2^-121: exactly half a turn.
        let q = Frequency::new(1i128 << 120, 0);
        let p = TorusPoint { u: [1u128 << 7, 0] };
        assert_eq!(phase_turns(&q, &p), 1u128 << 127);
        let z = unit_phasor(phase_turns(&q, &p));
        assert!((z.re + 1.0).abs() < 1e-15 && z.im.abs() < 1e-15);
    }

    #[test]
    fn negative_frequency_conjugates() {
        let p = TorusPoint::from_f64(0.123, 0.456);
        let a = unit_phasor(phase_turns(&Frequency::new(7, -3), &p));
        let b = unit_phasor(phase_turns(&Frequency::new(-7, 3), &p));
        assert!((a - b.conj()).norm() < 1e-15);
    }

    #[test]
    fn fixed_point_roundtrip() {
        let p = TorusPoint::from_f64(0.375, -0.25);
        assert_eq!(p.to_f64(), [0.375, 0.75]);
    }
}
