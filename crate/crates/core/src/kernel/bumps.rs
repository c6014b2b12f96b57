use std::collections::BTreeMap;

use num_complex::Complex64;

use super::fejer::{big_g, g_kernel};
use super::{PlaneFunction, PlanePoint, Smoothness, Support};
use crate::error::{Error, Result};
use crate::freq::{build_lambda_set, Coefficient, Frequency, SparseTrigPoly};
use crate::numeric::exp2i;
use crate::scheme::IntegerScheme;

/// Extra factor applied on top of the bump sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BumpFactor {
    One,
    /// Multiply by `ξ₂/ξ₁`.
    Ratio,
}

/// `ξ ↦ factor(ξ) · Σ_q w_q G(2^θ(ξ − q))` with pairwise disjoint bumps.
#[derive(Clone, Debug)]
pub struct BumpSum {
    theta: u32,
    bumps: Vec<(Frequency, Complex64)>,
    factor: BumpFactor,
}

/// Smallest sup-norm distance between two of the given lattice points.
pub(crate) fn min_sup_separation(points: &[Frequency]) -> Option<u128> {
    let mut best: Option<u128> = None;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let d = a.k1.abs_diff(b.k1).max(a.k2.abs_diff(b.k2));
            best = Some(best.map_or(d, |m| m.min(d)));
        }
    }
    best
}

/// Whether bumps of sup-radius `2^{-θ}` around points at sup-distance `sep`
/// are disjoint with room to spare: `sep > 2 · 2^{-θ}`.
pub(crate) fn bumps_disjoint(sep: u128, theta: u32) -> bool {
    match theta {
        0 => sep > 2,
        1 => sep > 1,
        _ => sep >= 1,
    }
}

impl BumpSum {
    /// Fails with [`Error::BumpOverlap`] unless the bumps are pairwise
    /// separated by more than `2 · 2^{-θ}` in the sup norm.
    pub fn new(theta: u32, bumps: Vec<(Frequency, Complex64)>, factor: BumpFactor) -> Result<Self> {
        if theta > 60 {
            return Err(Error::InvalidParameter(format!("theta = {theta} exceeds 60")));
        }
        let mut bumps = bumps;
        bumps.sort_by(|a, b| a.0.cmp(&b.0));
        let points: Vec<Frequency> = bumps.iter().map(|b| b.0).collect();
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BumpOverlap {
                theta,
                separation: 0.0,
            });
        }
        if let Some(sep) = min_sup_separation(&points) {
            if !bumps_disjoint(sep, theta) {
                return Err(Error::BumpOverlap {
                    theta,
                    separation: sep as f64,
                });
            }
        }
        Ok(BumpSum {
            theta,
            bumps,
            factor,
        })
    }

    pub fn theta(&self) -> u32 {
        self.theta
    }

    /// Bump half-width `2^{-θ}`.
    pub fn half_width(&self) -> f64 {
        exp2i(-(self.theta as i32))
    }

    pub fn bumps(&self) -> &[(Frequency, Complex64)] {
        &self.bumps
    }

    pub fn factor(&self) -> BumpFactor {
        self.factor
    }

    pub fn with_factor(&self, factor: BumpFactor) -> Self {
        BumpSum {
            factor,
            ..self.clone()
        }
    }

    pub fn len(&self) -> usize {
        self.bumps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bumps.is_empty()
    }

    /// Whether every bump stays clear of the axis `ξ₁ = 0`:
    /// `|q₁| > 2^{-θ}` for every center.
    pub fn off_first_axis(&self) -> bool {
        self.bumps.iter().all(|(q, _)| {
            let a = q.k1.unsigned_abs();
            a > 1 || (a == 1 && self.theta >= 1)
        })
    }

    /// The lattice symbol `φ(2^θ q) = w_q` whose transfer, evaluated at
    /// `2^θ ξ`, reproduces this bump sum (without factor).
    pub fn lattice_symbol(&self) -> Result<FejerTransfer> {
        let k = 1i128 << self.theta;
        let mut phi = BTreeMap::new();
        for (q, w) in &self.bumps {
            let n = q.checked_scale(k).ok_or_else(|| {
                Error::InvalidParameter(format!("2^{} · {q} does not fit in i128", self.theta))
            })?;
            phi.insert(n, *w);
        }
        Ok(FejerTransfer { phi })
    }
}

impl PlaneFunction for BumpSum {
    fn eval(&self, p: &PlanePoint) -> Complex64 {
        let h = self.half_width();
        let k = (self.theta as f64).exp2();
        let mut acc = Complex64::new(0.0, 0.0);
        for (q, w) in &self.bumps {
            let d = p.minus(q);
            if d[0].abs() < h && d[1].abs() < h {
                acc += w * big_g(k * d[0], k * d[1]);
            }
        }
        match self.factor {
            BumpFactor::One => acc,
            BumpFactor::Ratio => {
                if acc == Complex64::new(0.0, 0.0) {
                    return acc;
                }
                let x = p.to_f64();
                acc * (x[1] / x[0])
            }
        }
    }

    fn support(&self) -> Support {
        Support::Balls {
            centers: self.bumps.iter().map(|b| b.0).collect(),
            radius: self.half_width(),
        }
    }

    fn smoothness(&self) -> Smoothness {
        Smoothness::PiecewiseSmooth
    }
}

/// `H^θ(ξ) = Σ_{q ∈ Λ_s} 2^{-χ(q)} G(2^θ(ξ − q))` for the scheme's centers.
pub fn h_theta(scheme: &IntegerScheme, theta: u32) -> Result<BumpSum> {
    h_theta_centers(&scheme.centers, theta)
}

/// As [`h_theta`] from explicit integer centers.
pub fn h_theta_centers(centers: &[Frequency], theta: u32) -> Result<BumpSum> {
    let lambda = build_lambda_set(centers)?;
    let bumps = lambda
        .iter()
        .map(|(q, e)| (*q, Complex64::new(exp2i(-(e.chi as i32)), 0.0)))
        .collect();
    BumpSum::new(theta, bumps, BumpFactor::One)
}

/// `W(φ)(ξ) = Σ_n G(n − ξ) φ(n)` for a finitely supported lattice function.
#[derive(Clone, Debug, Default)]
pub struct FejerTransfer {
    phi: BTreeMap<Frequency, Complex64>,
}

/// Builds `W(φ)`.
pub fn fejer_transfer(phi: BTreeMap<Frequency, Complex64>) -> FejerTransfer {
    FejerTransfer { phi }
}

impl FejerTransfer {
    pub fn from_poly<C: Coefficient>(p: &SparseTrigPoly<C>) -> Self {
        FejerTransfer {
            phi: p.iter().map(|(q, c)| (*q, c.to_complex())).collect(),
        }
    }

    pub fn phi(&self) -> &BTreeMap<Frequency, Complex64> {
        &self.phi
    }

    /// `W(φ)(2^θ ξ)`; `None` when `2^θ ξ` leaves the representable range.
    pub fn eval_dilated(&self, theta: u32, xi: &PlanePoint) -> Option<Complex64> {
        Some(self.eval(&xi.scale_pow2(theta)?))
    }
}

impl PlaneFunction for FejerTransfer {
    fn eval(&self, p: &PlanePoint) -> Complex64 {
        // G(n − ξ) vanishes unless |n_i − ξ_i| < 1, leaving the four lattice
        // corners of the cell containing ξ.
        let mut acc = Complex64::new(0.0, 0.0);
        for e1 in 0..2i128 {
            let w1 = g_kernel(e1 as f64 - p.offset[0]);
            if w1 == 0.0 {
                continue;
            }
            for e2 in 0..2i128 {
                let w2 = g_kernel(e2 as f64 - p.offset[1]);
                if w2 == 0.0 {
                    continue;
                }
                let Some(n) = p.base.checked_add(Frequency::new(e1, e2)) else {
                    continue;
                };
                if let Some(v) = self.phi.get(&n) {
                    acc += v * (w1 * w2);
                }
            }
        }
        acc
    }

    fn support(&self) -> Support {
        Support::Balls {
            centers: self.phi.keys().copied().collect(),
            radius: 1.0,
        }
    }

    fn smoothness(&self) -> Smoothness {
        Smoothness::PiecewiseSmooth
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freq::modified_riesz_product;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(a: i128, b: i128) -> Frequency {
        Frequency::new(a, b)
    }

    #[test]
    fn transfer_of_a_delta_is_the_kernel() {
        let w = fejer_transfer([(Frequency::ZERO, Complex64::new(1.0, 0.0))].into());
        assert_eq!(w.eval_f64([0.5, 0.0]).re, 0.25);
        assert_eq!(w.eval_f64([-0.5, 0.5]).re, 1.0 / 16.0);
        assert_eq!(w.eval_f64([1.0, 0.0]).re, 0.0);
    }

    #[test]
    fn transfer_interpolates() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let phi: BTreeMap<_, _> = (0..50)
            .map(|_| {
                (
                    f(rng.random_range(-20..20), rng.random_range(-20..20)),
                    Complex64::new(rng.random(), rng.random()),
                )
            })
            .collect();
        let w = fejer_transfer(phi.clone());
        for a in -21..21 {
            for b in -21..21 {
                let n = f(a, b);
                let want = phi.get(&n).copied().unwrap_or_default();
                assert_eq!(w.eval(&PlanePoint::lattice(n)), want);
            }
        }
    }

    #[test]
    fn bump_values_and_support() {
        let h = h_theta_centers(&[f(8, 1), f(64, 3)], 2).unwrap();
        assert_eq!(h.len(), 8);
        assert_eq!(h.eval(&PlanePoint::lattice(f(8, 1))).re, 0.5);
        assert_eq!(h.eval(&PlanePoint::lattice(f(72, 4))).re, 0.25);
        assert_eq!(h.eval(&PlanePoint::lattice(f(-56, -2))).re, 0.25);
        assert_eq!(h.eval_f64([8.125, 1.0]).re, 0.5 * 0.25);
        assert_eq!(h.eval_f64([8.25, 1.0]).re, 0.0);
        assert_eq!(h.eval_f64([0.0, 1.0]).re, 0.0);
        assert_eq!(h.eval_f64([8.0, 0.0]).re, 0.0);
        assert_eq!(h.eval_f64([36.0, 2.0]).re, 0.0);
    }

    #[test]
    fn overlap_is_rejected() {
        let e = h_theta_centers(&[f(1, 0), f(2, 1)], 1).unwrap_err();
        assert!(matches!(e, Error::BumpOverlap { theta: 1, .. }));
        assert!(h_theta_centers(&[f(1, 0), f(2, 1)], 2).is_ok());
        assert!(h_theta_centers(&[f(2, 0), f(8, 1)], 1).is_ok());
    }

    #[test]
    fn bump_sum_is_the_dilated_transfer() {
        let centers = [f(4, 1), f(32, 3), f(256, 7)];
        let theta = 3;
        let h = h_theta_centers(&centers, theta).unwrap();
        let dilated: Vec<Frequency> = centers.iter().map(|c| c.checked_scale(8).unwrap()).collect();
        let w = FejerTransfer::from_poly(&modified_riesz_product(&dilated).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let lambda: Vec<Frequency> = h.bumps().iter().map(|b| b.0).collect();
        for _ in 0..200 {
            let q = lambda[rng.random_range(0..lambda.len())];
            let off = [rng.random_range(-0.15..0.15), rng.random_range(-0.15..0.15)];
            let p = PlanePoint::new(q, off);
            let a = h.eval(&p);
            let b = w.eval_dilated(theta, &p).unwrap();
            assert!((a - b).norm() < 1e-12, "{p:?}: {a} vs {b}");
        }
        let via_symbol = h.lattice_symbol().unwrap();
        assert_eq!(via_symbol.phi().len(), w.phi().len());
    }

    #[test]
    fn ratio_factor() {
        let h = h_theta_centers(&[f(8, 2)], 3).unwrap().with_factor(BumpFactor::Ratio);
        let v = h.eval_f64([8.0625, 2.0]).re;
        let g = g_kernel(0.5);
        assert!((v - 0.5 * g * 2.0 / 8.0625).abs() < 1e-15);
        assert!(h.off_first_axis());
    }
}
