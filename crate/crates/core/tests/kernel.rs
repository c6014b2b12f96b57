use num_complex::Complex64;

use riesz_witness::kernel::{
    cutoff_bound_check, g_check, h_theta, inv_ft_l1, smallest_valid_theta,
    transfer_identity_check, BumpFactor, BumpSum, CutoffParams, CutoffTestFunction,
};
use riesz_witness::scheme::{construct_scheme, rescale_to_integers, ConstructParams, SchemeCase};
use riesz_witness::symbol::by_id;
use riesz_witness::{Error, Frequency, QuadratureSpec};

#[test]
fn kernel_is_nonnegative_with_unit_mass() {
    for x in [-3.0, -0.7, 0.0, 0.2, 1.0, 5.5] {
        assert!(g_check(x) >= 0.0);
    }
    let g = BumpSum::new(0, vec![(Frequency::ZERO, Complex64::new(1.0, 0.0))], BumpFactor::One).unwrap();
    let n = inv_ft_l1(&g, None, &QuadratureSpec::auto()).unwrap();
    assert!((n.estimate.value - 1.0).abs() < 0.01);
}

#[test]
fn transfer_identity_holds_on_a_constructed_scheme() {
    let symbol = by_id("dyadic-cos").unwrap();
    let scheme = construct_scheme(&symbol, &ConstructParams::new(SchemeCase::IIa, 2, 0.01)).unwrap();
    let integer = rescale_to_integers(&scheme).unwrap();
    let theta = smallest_valid_theta(&integer.centers).unwrap();
    let check = transfer_identity_check(&integer.centers, theta, 100, 3).unwrap();
    assert!(check.points_in_support > 0);
    assert!(check.max_residual <= 1e-9);

    let h = inv_ft_l1(&h_theta(&integer, theta).unwrap(), None, &QuadratureSpec::monte_carlo(50_000, 1)).unwrap();
    assert!(h.estimate.value <= 2.02);
}

#[test]
fn overlapping_bumps_are_refused() {
    let one = Complex64::new(1.0, 0.0);
    let err = BumpSum::new(0, vec![(Frequency::new(1, 0), one), (Frequency::new(2, 0), one)], BumpFactor::One)
        .unwrap_err();
    assert!(matches!(err, Error::BumpOverlap { .. }));
}

#[test]
fn cutoff_bound_holds_for_a_recentered_ratio() {
    let params = CutoffParams { grid_n: 256, ..CutoffParams::default() };
    let f = CutoffTestFunction::RecenteredRatio { q: [40.0, 3.0] };
    let table = cutoff_bound_check(&f, &params, &[0.5, 0.25, 0.125]).unwrap();
    assert!(table.all_hold(), "{:?}", table.rows);
    assert!(cutoff_bound_check(&f, &params, &[2.0]).is_err());
}
