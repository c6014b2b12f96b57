use std::path::Path;

use anyhow::Result;
use riesz_witness::freq::{modified_riesz_product, riesz_product_expand};
use riesz_witness::kernel::{
    h_theta, inv_ft_l1, ratio_multiplier_l1, smallest_valid_theta, transfer_identity_check,
    BumpFactor, BumpSum,
};
use riesz_witness::scheme::{
    construct_scheme, rescale_to_integers, verify_conditions, ConstructParams, SchemeDocument,
};
use riesz_witness::symbol::classify_radial;
use riesz_witness::torus::{growth_profile, l1_norm, CenterGenerator, QuadratureSpec};
use riesz_witness::witness::{control_p_norms, witness_report, CSV_HEADER};
use riesz_witness::Frequency;
use serde_json::json;

use crate::config::*;
use crate::output::{Meta, Outputs};
use crate::{progress, ConfigError};

fn check_range(s_min: usize, s_max: usize) -> Result<()> {
    if s_min == 0 || s_min > s_max {
        return Err(ConfigError(format!("invalid depth range {s_min}..={s_max}")).into());
    }
    Ok(())
}

pub fn riesz_norm(cfg: &RieszNormConfig, meta: &Meta, out: &Path) -> Result<()> {
    check_range(cfg.s_min, cfg.s_max)?;
    let spec = quadrature(cfg.method, cfg.samples, cfg.seed);
    let generator = CenterGenerator::Collinear { ratio: cfg.ratio };
    let mut rows = Vec::new();
    for s in cfg.s_min..=cfg.s_max {
        progress(&format!("riesz-norm: s = {s}"));
        let centers = generator.centers(s)?;
        let pi = l1_norm(&riesz_product_expand(&centers)?, &spec)?;
        let r = l1_norm(&modified_riesz_product(&centers)?, &spec)?;
        rows.push(format!(
            "{s},{},{},{},{},{:?}",
            pi.value, pi.error_bound, r.value, r.error_bound, r.method
        ));
    }
    let mut o = Outputs::new(out);
    o.csv(
        "riesz_norm.csv",
        meta,
        "s,product_norm,product_err,modified_norm,modified_err,method",
        &rows,
    );
    finish(o)
}

pub fn z_growth(cfg: &ZGrowthConfig, meta: &Meta, out: &Path) -> Result<()> {
    check_range(cfg.s_min, cfg.s_max)?;
    let spec = quadrature(cfg.method, cfg.samples, cfg.seed);
    progress("z-growth: measuring");
    let profile = growth_profile(
        cfg.builder,
        &CenterGenerator::Collinear { ratio: cfg.ratio },
        cfg.s_min..=cfg.s_max,
        &spec,
    )?;
    let rows: Vec<String> = profile
        .iter()
        .map(|r| {
            format!(
                "{},{},{},{},{:?}",
                r.s, r.norm.value, r.norm.error_bound, r.per_s.value, r.norm.method
            )
        })
        .collect();
    let mut o = Outputs::new(out);
    o.csv("z_growth.csv", meta, "s,norm,norm_err,norm_per_s,method", &rows);
    finish(o)
}

fn build_params(case: riesz_witness::scheme::SchemeCase, s: usize, eps: f64, n: u32) -> ConstructParams {
    let mut cp = ConstructParams::new(case, s, eps);
    cp.n_sep = n;
    cp
}

pub fn scheme(cfg: &SchemeConfig, meta: &Meta, out: &Path) -> Result<()> {
    let symbol = resolve_symbol(&cfg.symbol)?;
    let mut cp = build_params(cfg.case, cfg.s, cfg.epsilon, cfg.n_sep);
    cp.slope = cfg.slope;
    progress("scheme: constructing");
    let scheme = construct_scheme(&symbol, &cp)?;
    let report = verify_conditions(&scheme, &symbol);
    let integer = if cfg.rescale {
        Some(SchemeDocument::from_integer_scheme(&rescale_to_integers(&scheme)?))
    } else {
        None
    };
    let mut o = Outputs::new(out);
    o.json(
        "scheme.json",
        meta,
        json!({
            "scheme": SchemeDocument::from_scheme(&scheme),
            "integer_scheme": integer,
            "verification": report,
            "all_passed": report.all_passed(),
        }),
    )?;
    finish(o)
}

pub fn transfer_check(cfg: &TransferConfig, meta: &Meta, out: &Path) -> Result<()> {
    let symbol = resolve_symbol(&cfg.symbol)?;
    progress("transfer-check: constructing scheme");
    let scheme = construct_scheme(&symbol, &build_params(cfg.case, cfg.s, cfg.epsilon, cfg.n_sep))?;
    let integer = rescale_to_integers(&scheme)?;
    let theta = match cfg.theta {
        Some(t) => t,
        None => smallest_valid_theta(&integer.centers)?,
    };
    progress("transfer-check: identity");
    let identity = transfer_identity_check(&integer.centers, theta, cfg.points, cfg.seed)?;
    progress("transfer-check: plane norms");
    let g = BumpSum::new(
        0,
        vec![(Frequency::ZERO, num_one())],
        BumpFactor::One,
    )?;
    let g_norm = inv_ft_l1(&g, None, &QuadratureSpec::auto())?;
    let mc = QuadratureSpec::monte_carlo(cfg.samples, cfg.seed);
    let h_norm = inv_ft_l1(&h_theta(&integer, theta)?, None, &mc)?;
    let ratio_norm = ratio_multiplier_l1(&integer, theta, &mc)?;
    let torus_norm = l1_norm(&modified_riesz_product(&integer.centers)?, &mc)?;
    let mut o = Outputs::new(out);
    o.json(
        "transfer.json",
        meta,
        json!({
            "s": cfg.s,
            "theta": theta,
            "identity": identity,
            "kernel_norm": g_norm,
            "h_norm": h_norm,
            "ratio_norm": ratio_norm,
            "riesz_torus_norm": torus_norm,
        }),
    )?;
    finish(o)
}

fn num_one() -> num_complex::Complex64 {
    num_complex::Complex64::new(1.0, 0.0)
}

pub fn classify(cfg: &ClassifyConfig, meta: &Meta, out: &Path) -> Result<()> {
    let symbol = resolve_symbol(&cfg.symbol)?;
    if cfg.params.direction_count < 2 || cfg.params.direction_count % 2 != 0 || cfg.params.scale_depth < 2 {
        return Err(ConfigError("classify needs an even direction count ≥ 2 and scale depth ≥ 2".into()).into());
    }
    progress("classify: sampling rays");
    let c = classify_radial(&symbol, &cfg.params);
    let mut o = Outputs::new(out);
    o.json("classify.json", meta, serde_json::to_value(&c)?)?;
    finish(o)
}

pub fn witness(cfg: &WitnessConfig, meta: &Meta, out: &Path) -> Result<()> {
    let symbol = resolve_symbol(&cfg.symbol)?;
    if cfg.s_list.is_empty() || cfg.s_list.contains(&0) {
        return Err(ConfigError("s_list must be a nonempty list of positive depths".into()).into());
    }
    let control = cfg.control.as_deref().map(resolve_symbol).transpose()?;
    let params = cfg.params();
    progress(&format!("witness: {} depths", params.s_list.len()));
    let run = witness_report(&symbol, cfg.case, &params)?;
    let control_rows = match &control {
        Some(c) => {
            progress("witness: control symbol");
            Some(control_p_norms(c, &symbol, cfg.case, run.c_hat, &params)?)
        }
        None => None,
    };
    let rows: Vec<String> = run.reports.iter().map(|r| r.csv_row()).collect();
    let mut o = Outputs::new(out);
    o.json(
        "witness.json",
        meta,
        json!({
            "run": run,
            "control": control_rows,
            "assumption": "The lattice restriction of a bounded plane multiplier is a torus multiplier with no larger norm; the chain uses this as a black box and does not verify it numerically.",
        }),
    )?;
    o.csv("witness.csv", meta, CSV_HEADER, &rows);
    finish(o)
}

fn finish(o: Outputs) -> Result<()> {
    for p in o.commit()? {
        progress(&format!("wrote {}", p.display()));
    }
    Ok(())
}
