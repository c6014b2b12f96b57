//! Assembly of the lower-bound chain for one symbol.
//!
//! For each depth `s` the engine builds a ball scheme with
//! `ε_s = ĉ · 3^{-s-1} · s`, moves it onto the integer lattice, picks the bump
//! scale `θ`, and reports
//!
//! * `h_norm_upper = ‖ℱ⁻¹H‖ + ‖ℱ⁻¹((ξ₂/ξ₁)H)‖` (the test-function side),
//! * `‖Z‖` for the target polynomial read off the balls,
//! * the coefficient gap bound `ε 3^s`,
//! * `p_norm_lower = ‖Z‖ − err − ε 3^s` and `ratio = p_norm_lower / h_norm_upper`.
//!
//! `ĉ` is a measured growth constant: `min_{s ≤ 6} ‖Z_s‖/s` for the signed
//! Riesz sum on ratio-16 collinear centers.

mod polys;

pub use polys::{gap_bound, p_polynomial, z_target, GapBound};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Result, StageExt};
use crate::kernel::{h_theta, inv_ft_l1, theta_search, ThetaChoice, ThetaSearchParams};
use crate::scheme::{
    construct_scheme, rescale_to_integers, ConstructParams, IntegerScheme, SchemeCase,
    SchemeDocument,
};
use crate::symbol::MultiplierSymbol;
use crate::torus::{
    growth_profile, l1_norm, CenterGenerator, GrowthBuilder, GrowthRow, NormEstimate,
    QuadratureSpec,
};

/// Largest depth used for the growth-constant calibration.
pub const CALIBRATION_MAX_S: usize = 6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct WitnessParams {
    pub s_list: Vec<usize>,
    /// Separation exponent `N` of the constructed schemes. The default 4
    /// keeps depth-6 schemes inside the 128-bit lattice.
    pub n_sep: u32,
    /// Growth constant; measured by [`calibrate_growth_constant`] if absent.
    pub c_hat: Option<f64>,
    pub z_samples: u64,
    pub h_samples: u64,
    pub seed: u64,
    pub theta: ThetaSearchParams,
    /// Also estimate `‖P‖` directly (Monte Carlo, same points as `‖Z‖`).
    pub direct_p: bool,
}

impl Default for WitnessParams {
    fn default() -> Self {
        WitnessParams {
            s_list: (1..=6).collect(),
            n_sep: 4,
            c_hat: None,
            z_samples: 1_000_000,
            h_samples: 100_000,
            seed: 1,
            theta: ThetaSearchParams::default(),
            direct_p: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub s: usize,
    pub case: SchemeCase,
    pub epsilon: f64,
    /// `log₂` of the integer rescaling factor.
    pub scale_bits: f64,
    pub theta: ThetaChoice,
    /// `‖ℱ⁻¹H‖` at the chosen `θ`.
    pub h_norm: NormEstimate,
    pub h_norm_upper: NormEstimate,
    pub z_norm: NormEstimate,
    pub pz_gap_bound: f64,
    pub pz_gap_measured: f64,
    pub p_norm_lower: f64,
    pub p_norm_direct: Option<NormEstimate>,
    pub ratio: f64,
    pub scheme_fingerprint: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessRun {
    pub symbol_id: String,
    pub case: SchemeCase,
    pub c_hat: f64,
    pub calibration: Vec<GrowthRow>,
    pub reports: Vec<WitnessReport>,
}

/// `ĉ = min_{s ≤ 6} ‖Z_s‖/s` for `σ_j = (−1)^j` on ratio-16 collinear centers,
/// by grid quadrature (the centers lie on one axis, so the grid is thin).
pub fn calibrate_growth_constant() -> Result<(f64, Vec<GrowthRow>)> {
    let rows = growth_profile(
        GrowthBuilder::SymmetricZ,
        &CenterGenerator::Collinear { ratio: 16 },
        1..=CALIBRATION_MAX_S,
        &QuadratureSpec::auto(),
    )?;
    let c = rows
        .iter()
        .map(|r| r.per_s.value)
        .fold(f64::INFINITY, f64::min);
    Ok((c, rows))
}

/// `ε_s = ĉ · 3^{-s-1} · s`.
pub fn witness_epsilon(c_hat: f64, s: usize) -> f64 {
    c_hat * 3f64.powi(-(s as i32) - 1) * s as f64
}

/// First 16 hex digits of the SHA-256 of the scheme's JSON document.
pub fn scheme_fingerprint(scheme: &IntegerScheme) -> Result<String> {
    let doc = serde_json::to_string(&SchemeDocument::from_integer_scheme(scheme))?;
    let digest = Sha256::digest(doc.as_bytes());
    Ok(hex::encode(&digest[..8]))
}

fn stream_seed(seed: u64, s: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(s as u64)
}

/// Builds and rescales the depth-`s` scheme used by the witness.
pub fn witness_scheme(
    symbol: &MultiplierSymbol,
    case: SchemeCase,
    s: usize,
    c_hat: f64,
    n_sep: u32,
) -> Result<IntegerScheme> {
    let mut cp = ConstructParams::new(case, s, witness_epsilon(c_hat, s));
    cp.n_sep = n_sep;
    let scheme = construct_scheme(symbol, &cp).stage("construct")?;
    rescale_to_integers(&scheme).stage("rescale")
}

fn one_report(
    symbol: &MultiplierSymbol,
    case: SchemeCase,
    s: usize,
    c_hat: f64,
    params: &WitnessParams,
) -> Result<WitnessReport> {
    let scheme = witness_scheme(symbol, case, s, c_hat, params.n_sep)?;
    let seed = stream_seed(params.seed, s);
    let h_spec = QuadratureSpec::monte_carlo(params.h_samples, seed);
    let theta = theta_search(&scheme, &h_spec, &params.theta).stage("theta_search")?;
    let h = h_theta(&scheme, theta.theta).stage("h_theta")?;
    let h_norm = inv_ft_l1(&h, None, &h_spec).stage("h_norm")?.estimate;
    let h_norm_upper = NormEstimate {
        value: h_norm.value + theta.ratio_norm.value,
        error_bound: h_norm.error_bound + theta.ratio_norm.error_bound,
        ..h_norm.clone()
    };

    let z = z_target(&scheme).stage("z_target")?;
    let p = p_polynomial(symbol, &scheme).stage("p_polynomial")?;
    let gap = gap_bound(&scheme, &p, &z).stage("gap_bound")?;
    let z_spec = QuadratureSpec::monte_carlo(params.z_samples, seed);
    let z_norm = l1_norm(&z, &z_spec).stage("z_norm")?;
    let p_norm_direct = if params.direct_p {
        Some(l1_norm(&p, &z_spec).stage("p_norm")?)
    } else {
        None
    };
    let p_norm_lower = z_norm.value - z_norm.error_bound - gap.bound;
    Ok(WitnessReport {
        s,
        case,
        epsilon: scheme.epsilon,
        scale_bits: scheme.scale.bits() as f64,
        ratio: p_norm_lower / h_norm_upper.value,
        theta,
        h_norm,
        h_norm_upper,
        z_norm,
        pz_gap_bound: gap.bound,
        pz_gap_measured: gap.measured,
        p_norm_lower,
        p_norm_direct,
        scheme_fingerprint: scheme_fingerprint(&scheme)?,
    })
}

/// Runs the chain for every `s` in `params.s_list` (independently, in
/// parallel; results in input order).
pub fn witness_report(
    symbol: &MultiplierSymbol,
    case: SchemeCase,
    params: &WitnessParams,
) -> Result<WitnessRun> {
    let (c_hat, calibration) = match params.c_hat {
        Some(c) => (c, Vec::new()),
        None => calibrate_growth_constant().stage("calibrate")?,
    };
    let reports = params
        .s_list
        .par_iter()
        .map(|&s| one_report(symbol, case, s, c_hat, params).stage(&format!("s = {s}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(WitnessRun {
        symbol_id: symbol.id().to_string(),
        case,
        c_hat,
        calibration,
        reports,
    })
}

/// Direct `‖P‖` for a control symbol read on schemes built for another
/// (discontinuous) symbol.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ControlRow {
    pub s: usize,
    pub p_norm: NormEstimate,
    pub sup_norm: f64,
}

pub fn control_p_norms(
    control: &MultiplierSymbol,
    scheme_symbol: &MultiplierSymbol,
    case: SchemeCase,
    c_hat: f64,
    params: &WitnessParams,
) -> Result<Vec<ControlRow>> {
    params
        .s_list
        .par_iter()
        .map(|&s| {
            let scheme = witness_scheme(scheme_symbol, case, s, c_hat, params.n_sep)?;
            let p = p_polynomial(control, &scheme).stage("p_polynomial")?;
            let spec = QuadratureSpec::monte_carlo(params.z_samples, stream_seed(params.seed, s));
            let p_norm = l1_norm(&p, &spec).stage("p_norm")?;
            Ok(ControlRow {
                s,
                p_norm,
                sup_norm: polys::sup_norm_on(control, &scheme)?,
            })
        })
        .collect()
}

/// CSV header matching [`WitnessReport::csv_row`].
pub const CSV_HEADER: &str = "s,case,epsilon,scale_bits,theta,h_norm,ratio_norm,h_norm_upper,h_norm_upper_err,z_norm,z_norm_err,gap_bound,gap_measured,p_norm_lower,p_norm_direct,p_norm_direct_err,ratio,scheme_fingerprint";

impl WitnessReport {
    pub fn csv_row(&self) -> String {
        let (pd, pe) = match &self.p_norm_direct {
            Some(p) => (p.value.to_string(), p.error_bound.to_string()),
            None => (String::new(), String::new()),
        };
        format!(
            "{},{:?},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.s,
            self.case,
            self.epsilon,
            self.scale_bits,
            self.theta.theta,
            self.h_norm.value,
            self.theta.ratio_norm.value,
            self.h_norm_upper.value,
            self.h_norm_upper.error_bound,
            self.z_norm.value,
            self.z_norm.error_bound,
            self.pz_gap_bound,
            self.pz_gap_measured,
            self.p_norm_lower,
            pd,
            pe,
            self.ratio,
            self.scheme_fingerprint
        )
    }
}
