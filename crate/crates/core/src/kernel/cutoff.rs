//! Numerical check of the cutoff estimate
//! `‖ℱ⁻¹(η_ε f)‖_{L¹} ≤ C(η)(|f(0)| + ε sup_{|x|≤1} Σ_{|α|≤3} |D^α f(x)|)`
//! with `η_ε(ξ) = η(ξ/ε)`.
//!
//! By dilation invariance of the `L¹` norm of an inverse transform,
//! `‖ℱ⁻¹(η_ε f)‖ = ‖ℱ⁻¹(η · f(ε ·))‖`, which is computed by a 2-D FFT of
//! samples on a periodic box around the unit ball.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::pairwise_sum;

/// Smooth test functions on the unit ball.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CutoffTestFunction {
    Constant { value: f64 },
    /// `ξ₁^a ξ₂^b`.
    Monomial { a: u32, b: u32 },
    /// `(q₂ + ξ₂)/(q₁ + ξ₁) − q₂/q₁`, the ratio recentered at `q`.
    RecenteredRatio { q: [f64; 2] },
}

impl CutoffTestFunction {
    pub fn eval(&self, x: [f64; 2]) -> f64 {
        match *self {
            CutoffTestFunction::Constant { value } => value,
            CutoffTestFunction::Monomial { a, b } => x[0].powi(a as i32) * x[1].powi(b as i32),
            CutoffTestFunction::RecenteredRatio { q } => {
                // Cancellation-free form of the difference of two ratios.
                (q[0] * x[1] - q[1] * x[0]) / (q[0] * (q[0] + x[0]))
            }
        }
    }

    fn validate(&self) -> Result<()> {
        if let CutoffTestFunction::RecenteredRatio { q } = self {
            if !(q[0].abs() > 2.0 && q[1].is_finite()) {
                return Err(Error::InvalidParameter(
                    "recentered ratio needs |q₁| > 2 so the unit ball stays off the axis".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        match self {
            CutoffTestFunction::Constant { value } => format!("constant {value}"),
            CutoffTestFunction::Monomial { a, b } => format!("x^{a} y^{b}"),
            CutoffTestFunction::RecenteredRatio { q } => format!("ratio at ({}, {})", q[0], q[1]),
        }
    }
}

/// The cutoff `η(u) = exp(1 − 1/(1 − |u|²))` on `|u| < 1` (so `η(0) = 1`)
/// and the FFT resolution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutoffParams {
    /// FFT size per axis.
    pub grid_n: usize,
    /// Side of the periodic sampling box.
    pub period: f64,
    /// Finite-difference step for the derivative sup.
    pub fd_step: f64,
}

impl Default for CutoffParams {
    fn default() -> Self {
        CutoffParams {
            grid_n: 1024,
            period: 16.0,
            fd_step: 1e-2,
        }
    }
}

pub const CUTOFF_DESCRIPTION: &str = "eta(u) = exp(1 - 1/(1 - |u|^2)) for |u| < 1, else 0";

pub fn eta(u: [f64; 2]) -> f64 {
    let r2 = u[0] * u[0] + u[1] * u[1];
    if r2 >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - r2)).exp()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutoffRow {
    pub epsilon: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutoffTable {
    pub function: CutoffTestFunction,
    pub cutoff: String,
    pub params: CutoffParams,
    /// `C(η)`, fitted on the monomials of degree ≤ 2 at `ε = 1`.
    pub c_eta: f64,
    /// `|f(0)|`.
    pub f_at_zero: f64,
    /// `sup_{|x|≤1} Σ_{|α|≤3} |D^α f(x)|` by finite differences.
    pub derivative_sup: f64,
    pub rows: Vec<CutoffRow>,
}

impl CutoffTable {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// `‖ℱ⁻¹(η(u) f(εu))‖_{L¹(R^2)}` by FFT.
pub fn cutoff_lhs(f: &CutoffTestFunction, epsilon: f64, params: &CutoffParams) -> Result<f64> {
    let n = params.grid_n;
    if n < 16 || !n.is_power_of_two() || params.period < 2.0 {
        return Err(Error::InvalidParameter(format!(
            "cutoff grid n = {n}, period = {}",
            params.period
        )));
    }
    let du = params.period / n as f64;
    let coord = |j: usize| -params.period / 2.0 + j as f64 * du;
    let mut data: Vec<Complex64> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let u = [coord(idx / n), coord(idx % n)];
            let e = eta(u);
            let v = if e == 0.0 {
                0.0
            } else {
                e * f.eval([epsilon * u[0], epsilon * u[1]])
            };
            Complex64::new(v, 0.0)
        })
        .collect();
    let fft = FftPlanner::new().plan_fft_inverse(n);
    let pass = |buf: &mut Vec<Complex64>| {
        buf.par_chunks_mut(n).for_each(|row| fft.process(row));
    };
    pass(&mut data);
    let mut t = vec![Complex64::new(0.0, 0.0); n * n];
    t.par_chunks_mut(n).enumerate().for_each(|(c, col)| {
        for (r, v) in col.iter_mut().enumerate() {
            *v = data[r * n + c];
        }
    });
    pass(&mut t);
    let rows: Vec<f64> = t
        .par_chunks(n)
        .map(|row| pairwise_sum(&row.iter().map(|v| v.norm()).collect::<Vec<_>>()))
        .collect();
    // Riemann sum in u (du²) against the dual grid spacing 1/period (squared):
    // du² / period² = 1/n².
    Ok(pairwise_sum(&rows) / (n * n) as f64)
}

/// Sample points of the closed unit disk: the center plus 8 radii × 32
/// angles.
fn disk_sample() -> Vec<[f64; 2]> {
    let mut pts = vec![[0.0, 0.0]];
    for i in 1..=8 {
        let r = i as f64 / 8.0;
        for k in 0..32 {
            let a = std::f64::consts::TAU * k as f64 / 32.0;
            pts.push([r * a.cos(), r * a.sin()]);
        }
    }
    pts
}

/// `Σ_{|α|≤3} |D^α f(x)|` by central differences.
fn derivative_sum(f: &CutoffTestFunction, x: [f64; 2], h: f64) -> f64 {
    let fv = |i: i32, j: i32| f.eval([x[0] + i as f64 * h, x[1] + j as f64 * h]);
    // One-dimensional central stencils for orders 0..3 (offsets −2..2).
    const STENCIL: [[f64; 5]; 4] = [
        [0.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, -0.5, 0.0, 0.5, 0.0],
        [0.0, 1.0, -2.0, 1.0, 0.0],
        [-0.5, 1.0, 0.0, -1.0, 0.5],
    ];
    let mut total = 0.0;
    for a in 0..4usize {
        for b in 0..(4 - a) {
            let mut d = 0.0;
            for (i, wa) in STENCIL[a].iter().enumerate() {
                if *wa == 0.0 {
                    continue;
                }
                for (j, wb) in STENCIL[b].iter().enumerate() {
                    if *wb == 0.0 {
                        continue;
                    }
                    d += wa * wb * fv(i as i32 - 2, j as i32 - 2);
                }
            }
            total += (d / h.powi((a + b) as i32)).abs();
        }
    }
    total
}

pub fn derivative_sup(f: &CutoffTestFunction, h: f64) -> f64 {
    disk_sample()
        .into_iter()
        .map(|x| derivative_sum(f, x, h))
        .fold(0.0, f64::max)
}

/// `C(η) = max lhs/(|f(0)| + sup Σ|D^α f|)` over the monomials of degree at
/// most two at `ε = 1`. For a monomial of degree `d` the left side scales
/// like `ε^d` and the right side like `ε^{min(d,1)}`, so `ε = 1` is the
/// extremal scale on `(0, 1]`.
pub fn fit_cutoff_constant(params: &CutoffParams) -> Result<f64> {
    let mut c: f64 = 0.0;
    for (a, b) in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)] {
        let f = CutoffTestFunction::Monomial { a, b };
        let lhs = cutoff_lhs(&f, 1.0, params)?;
        let rhs = f.eval([0.0, 0.0]).abs() + derivative_sup(&f, params.fd_step);
        c = c.max(lhs / rhs);
    }
    Ok(c)
}

/// Tabulates both sides of the cutoff estimate for each `ε`.
pub fn cutoff_bound_check(
    f: &CutoffTestFunction,
    params: &CutoffParams,
    epsilons: &[f64],
) -> Result<CutoffTable> {
    f.validate()?;
    if epsilons.iter().any(|e| !(*e > 0.0 && *e <= 1.0)) {
        return Err(Error::InvalidParameter("epsilon must lie in (0, 1]".into()));
    }
    let c_eta = fit_cutoff_constant(params)?;
    let f0 = f.eval([0.0, 0.0]).abs();
    let dsup = derivative_sup(f, params.fd_step);
    let mut rows = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let lhs = cutoff_lhs(f, eps, params)?;
        let rhs = c_eta * (f0 + eps * dsup);
        rows.push(CutoffRow {
            epsilon: eps,
            lhs,
            rhs,
            holds: lhs <= rhs * (1.0 + 1e-9),
        });
    }
    Ok(CutoffTable {
        function: f.clone(),
        cutoff: CUTOFF_DESCRIPTION.to_string(),
        params: *params,
        c_eta,
        f_at_zero: f0,
        derivative_sup: dsup,
        rows,
    })
}
