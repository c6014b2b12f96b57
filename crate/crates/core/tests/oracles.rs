//! Independent oracles: direct product evaluation, brute-force sum sets and
//! Parseval on exact grids.

use std::collections::BTreeMap;

use num_complex::Complex64;
use riesz_witness::freq::{
    build_lambda_set, exp_polynomial, modified_riesz_product, riesz_product_expand, z_polynomial,
};
use riesz_witness::torus::{eval_at, l1_norm};
use riesz_witness::{Dyadic, Error, Frequency, NormMethod, QuadratureSpec, SparseTrigPoly};

fn centers(s: usize) -> Vec<Frequency> {
    (0..s)
        .map(|j| {
            let p = 8i128.pow(j as u32);
            Frequency::new(2 * p, p)
        })
        .collect()
}

fn cos_at(c: &Frequency, x: [f64; 2]) -> f64 {
    (std::f64::consts::TAU * (c.k1 as f64 * x[0] + c.k2 as f64 * x[1])).cos()
}

const POINTS: [[f64; 2]; 5] = [[0.1, 0.2], [0.37, 0.81], [0.5, 0.5], [0.013, 0.77], [0.91, 0.05]];

#[test]
fn riesz_product_matches_direct_product() {
    for s in 1..=4 {
        let c = centers(s);
        let p = riesz_product_expand(&c).unwrap();
        for x in POINTS {
            let direct: f64 = c.iter().map(|q| 1.0 + cos_at(q, x)).product();
            assert!((eval_at(&p, x).re - direct).abs() < 1e-11, "s = {s}, x = {x:?}");
        }
    }
}

#[test]
fn signed_and_one_sided_sums_match_direct_evaluation() {
    for s in 1..=4 {
        let c = centers(s);
        let signs: Vec<i8> = (1..=s).map(|j| if j % 2 == 0 { 1 } else { -1 }).collect();
        let z = z_polynomial(&c, &signs).unwrap();
        let e = exp_polynomial(&c).unwrap();
        for x in POINTS {
            let mut pre = 1.0;
            let mut zd = 0.0;
            let mut ed = Complex64::new(0.0, 0.0);
            for (q, sg) in c.iter().zip(&signs) {
                let t = std::f64::consts::TAU * (q.k1 as f64 * x[0] + q.k2 as f64 * x[1]);
                zd += *sg as f64 * t.cos() * pre;
                ed += Complex64::from_polar(1.0, t) * pre;
                pre *= 1.0 + t.cos();
            }
            assert!((eval_at(&z, x).re - zd).abs() < 1e-11);
            assert!((eval_at(&e, x) - ed).norm() < 1e-11);
        }
    }
}

#[test]
fn lambda_set_agrees_with_brute_force_enumeration() {
    for s in 1..=5 {
        let c = centers(s);
        let lambda = build_lambda_set(&c).unwrap();
        let mut brute: BTreeMap<Frequency, u32> = BTreeMap::new();
        for code in 0..3usize.pow(s as u32) {
            let (mut k, mut q, mut chi) = (code, Frequency::ZERO, 0);
            for cj in &c {
                let z = (k % 3) as i128 - 1;
                k /= 3;
                chi += (z != 0) as u32;
                q = Frequency::new(q.k1 + z * cj.k1, q.k2 + z * cj.k2);
            }
            if !q.is_zero() {
                assert!(brute.insert(q, chi).is_none(), "collision at {q}");
            }
        }
        assert_eq!(lambda.len(), brute.len());
        for (q, entry) in lambda.iter() {
            assert_eq!(brute.get(q), Some(&entry.chi));
        }
    }
}

#[test]
fn product_coefficients_are_powers_of_one_half() {
    let c = centers(4);
    let p = riesz_product_expand(&c).unwrap();
    let lambda = build_lambda_set(&c).unwrap();
    assert_eq!(p.coeff(&Frequency::ZERO), Dyadic::ONE);
    assert_eq!(p.len(), lambda.len() + 1);
    for (q, entry) in lambda.iter() {
        assert_eq!(p.coeff(q), Dyadic::new(1, entry.chi));
    }
}

#[test]
fn non_lacunary_centers_collide() {
    let err = build_lambda_set(&[Frequency::new(1, 0), Frequency::new(2, 0)]).unwrap_err();
    assert!(matches!(err, Error::RepresentationCollision { .. }));
}

#[test]
fn parseval_on_an_exact_grid() {
    let c = centers(3);
    let p = modified_riesz_product(&c).unwrap();
    let n = 512usize;
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            let v = eval_at(&p, [i as f64 / n as f64, j as f64 / n as f64]);
            sum += v.norm_sqr();
        }
    }
    let mean = sum / (n * n) as f64;
    assert!((mean - p.square_sum()).abs() < 1e-10, "{mean} vs {}", p.square_sum());
}

#[test]
fn nonnegative_product_has_unit_mean_and_modified_product_at_most_two() {
    for s in 1..=4 {
        let c = centers(s);
        let prod = l1_norm(&riesz_product_expand(&c).unwrap(), &QuadratureSpec::auto()).unwrap();
        assert_eq!(prod.method, NormMethod::GridExact);
        assert!((prod.value - 1.0).abs() < 1e-9);
        let r = l1_norm(&modified_riesz_product(&c).unwrap(), &QuadratureSpec::auto()).unwrap();
        assert!(r.value <= 2.0 + 1e-9);
    }
}

#[test]
fn monte_carlo_and_grid_agree_within_error_bars() {
    let p: SparseTrigPoly<Dyadic> = z_polynomial(&centers(3), &[-1, 1, -1]).unwrap();
    let grid = l1_norm(&p, &QuadratureSpec::auto()).unwrap();
    let mc = l1_norm(&p, &QuadratureSpec::monte_carlo(200_000, 3)).unwrap();
    assert_eq!(mc.method, NormMethod::MonteCarlo);
    assert!((grid.value - mc.value).abs() <= mc.error_bound + 1e-3);
}
