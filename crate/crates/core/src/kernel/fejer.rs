//! The clipped-parabola kernel `g(t) = max(1 − |t|, 0)^2`, its tensor square
//! `G`, and their inverse Fourier transforms.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

#[inline]
pub fn g_kernel(t: f64) -> f64 {
    let u = 1.0 - t.abs();
    if u > 0.0 {
        u * u
    } else {
        0.0
    }
}

/// `G(ξ) = g(ξ₁) g(ξ₂)`.
#[inline]
pub fn big_g(x: f64, y: f64) -> f64 {
    g_kernel(x) * g_kernel(y)
}

/// `ǧ(x) = ∫ g(t) e^{2πixt} dt = 4(a − sin a)/a^3` with `a = 2πx`.
///
/// Strictly positive, `ǧ(0) = 2/3`, total integral `g(0) = 1`. It is the
/// self-convolution of the density `sinc^2`.
pub fn g_check(x: f64) -> f64 {
    let a = TAU * x;
    if a.abs() < 0.1 {
        // a − sin a = a³/6 − a⁵/120 + a⁷/5040 − a⁹/362880 + …
        let a2 = a * a;
        4.0 * (1.0 / 6.0 - a2 / 120.0 + a2 * a2 / 5040.0 - a2 * a2 * a2 / 362_880.0
            + a2 * a2 * a2 * a2 / 39_916_800.0)
    } else {
        4.0 * (a - a.sin()) / (a * a * a)
    }
}

/// `Ǧ(y) = ǧ(y₁) ǧ(y₂)`, a probability density on `R^2`.
#[inline]
pub fn big_g_check(y: [f64; 2]) -> f64 {
    g_check(y[0]) * g_check(y[1])
}

/// Upper bound for `∫_{|x|>R} ǧ`, from `ǧ(x) ≤ 4/a^2 + 4/|a|^3`.
pub fn g_check_tail_mass(r: f64) -> f64 {
    2.0 / (PI * PI * r) + 1.0 / (2.0 * PI * PI * PI * r * r)
}

/// Upper bound for the mass of `Ǧ` outside the square `[−R, R]^2`.
pub fn big_g_check_tail_mass(r: f64) -> f64 {
    let t = g_check_tail_mass(r).min(1.0);
    1.0 - (1.0 - t) * (1.0 - t)
}

/// Moments `m_k(y) = ∫_{-1}^{1} t^k g(t) e^{2πiyt} dt` for `k = 0, 1, 2`.
pub fn g_moments(y: f64) -> [Complex64; 3] {
    let a = TAU * y;
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for (k, slot) in out.iter_mut().enumerate() {
        let ik = half_moment(k, a);
        let mirrored = ik.conj();
        *slot = if k % 2 == 0 { ik + mirrored } else { ik - mirrored };
    }
    out
}

/// `I_k(a) = ∫_0^1 t^k (1 − t)^2 e^{iat} dt`.
fn half_moment(k: usize, a: f64) -> Complex64 {
    if a.abs() < 2.0 {
        // Σ_m (ia)^m/m! · B(k+m+1, 3), B(p, 3) = 2/(p(p+1)(p+2)).
        let mut sum = Complex64::new(0.0, 0.0);
        let mut pw = Complex64::new(1.0, 0.0);
        for m in 0..40 {
            let p = (k + m + 1) as f64;
            sum += pw * (2.0 / (p * (p + 1.0) * (p + 2.0)));
            pw *= Complex64::new(0.0, a) / (m as f64 + 1.0);
            if pw.norm() < 1e-18 {
                break;
            }
        }
        sum
    } else {
        // Repeated integration by parts, exact for the polynomial
        // p(t) = t^k (1 − t)^2:
        // ∫_0^1 p e^{iat} = Σ_n (−1)^n [p^{(n)}(1) e^{ia} − p^{(n)}(0)] / (ia)^{n+1}.
        let mut coeffs = vec![0.0; k + 3];
        coeffs[k] = 1.0;
        coeffs[k + 1] = -2.0;
        coeffs[k + 2] = 1.0;
        let e = Complex64::new(a.cos(), a.sin());
        let ia = Complex64::new(0.0, a);
        let mut sum = Complex64::new(0.0, 0.0);
        let mut denom = ia;
        let mut sign = 1.0;
        while !coeffs.is_empty() {
            let at1: f64 = coeffs.iter().sum();
            let at0 = coeffs[0];
            sum += (e * at1 - at0) * sign / denom;
            // Differentiate.
            coeffs = coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * i as f64)
                .collect();
            denom *= ia;
            sign = -sign;
        }
        sum
    }
}
