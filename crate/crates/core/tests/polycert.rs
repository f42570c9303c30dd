use qaccess_core::poly::{
    bisection_count, canonical_p, certify_domain, certify_point, closed_form_discriminant, discriminant,
    fit_p2_coefficients, oracle_discriminant, sturm_count, y_coefficients, Endpoint, GridSpec, Polynomial,
    DELTA_CONVENTION,
};
use qaccess_core::sampling::{random_polynomial, rng_for};
use qaccess_core::stationary::{build_p_exact, StationaryParams};
use rand::Rng;

#[test]
fn witness_discriminant_matches_exact_value() {
    // disc₆ of −64(1+t)(t⁴+4t³+8t²+8t+7) read as a sextic with vanishing
    // leading coefficient: 64² · disc₅, computed independently.
    let oracle = 170005193383307227693056.0;
    let got = oracle_discriminant(0.5, 4.0, 1.0).unwrap();
    assert!((got - oracle).abs() <= 1e-14 * oracle);
    let closed = closed_form_discriminant(0.5, 4.0, 1.0);
    assert!((closed - DELTA_CONVENTION * oracle).abs() <= 1e-12 * oracle);
    let c = certify_point(0.5, 4.0, 1.0).unwrap();
    assert!(c.passed());
    assert_eq!((c.degree, c.root_count), (5, 1));
}

#[test]
fn canonical_point_matches_raw_parameters() {
    let p = StationaryParams::new(0.5, 0.0, 1.0, 2.0, 5.0).unwrap();
    assert_eq!(canonical_p(0.5, 4.0, 1.0), build_p_exact(&p));
}

#[test]
fn convention_ratio_is_constant() {
    let mut ratios = Vec::new();
    for i in 0..200 {
        let mut rng = rng_for(31, i);
        let a: f64 = rng.gen_range(0.01..0.99);
        let s: f64 = rng.gen_range(0.0..9.0);
        let x: f64 = rng.gen_range(0.01..9.0);
        ratios.push(closed_form_discriminant(a, s, x) / oracle_discriminant(a, s, x).unwrap());
    }
    let (lo, hi) = ratios.iter().fold((f64::MAX, f64::MIN), |(l, h), r| (l.min(*r), h.max(*r)));
    assert!((hi - lo) / lo.abs() <= 1e-6, "{lo} .. {hi}");
    assert!((lo - DELTA_CONVENTION).abs() < 1e-9);
}

#[test]
fn float_discriminant_agrees_with_exact() {
    for (a, s, x) in [(0.2, 1.0, 0.5), (0.7, 3.0, 2.0), (0.5, 0.25, 4.0)] {
        let exact = oracle_discriminant(a, s, x).unwrap();
        let float = discriminant(&canonical_p(a, s, x).to_f64()).unwrap();
        assert!((float.value - exact).abs() <= 1e-6 * exact.abs() || float.ill_conditioned);
    }
}

#[test]
fn printed_y_coefficients_are_nonnegative() {
    for i in 0..=100 {
        let a = i as f64 / 100.0;
        let b = 1.0 - a;
        for j in 0..=100 {
            let s = 9.0 * j as f64 / 100.0;
            let [y0, _, y2, y3, y4] = y_coefficients(a, s);
            assert!(y0 >= 0.0 && y2 >= 0.0 && y3 >= 0.0 && y4 >= 0.0, "({a}, {s})");
            assert!(y3 >= 4.0 * b * (b * s + 1.0) - 1e-12, "({a}, {s})");
        }
    }
    for s in [0.0, 0.5, 3.7, 9.0] {
        let y = y_coefficients(1.0, s);
        assert_eq!((y[3], y[4]), (0.0, 0.0));
    }
    assert_eq!(y_coefficients(0.5, 0.0)[4], 33.0 / 16.0);
}

#[test]
fn recovered_y1_fits_oracle() {
    for (a, s) in [(0.1, 0.5), (0.5, 4.0), (0.9, 2.0), (0.33, 7.5), (0.6, 0.05)] {
        let fit = fit_p2_coefficients(a, s).unwrap();
        assert!(fit.residual <= 1e-9, "({a}, {s}): {}", fit.residual);
        assert!(fit.coefficient_mismatch <= 1e-6, "({a}, {s}): {:?} vs {:?}", fit.fitted, fit.closed_form);
    }
}

#[test]
fn sturm_agrees_with_bisection() {
    for i in 0..1000 {
        let p: Polynomial<f64> = random_polynomial(&mut rng_for(32, i), 8);
        let all = (Endpoint::NegInf, Endpoint::PosInf);
        let s = sturm_count(&p, &all.0, &all.1).unwrap();
        let b = bisection_count(&p, &all.0, &all.1);
        let e = sturm_count(&p.to_exact(), &Endpoint::NegInf, &Endpoint::PosInf).unwrap();
        assert_eq!(s, e, "poly {i}: {p:?}");
        assert_eq!(s, b, "poly {i}: {p:?}");
    }
}

#[test]
fn default_grid_certifies() {
    let (certs, summary) = certify_domain(&GridSpec::default()).unwrap();
    assert_eq!(certs.len(), 50 * 50 * 50);
    assert_eq!(summary.failed, 0);
    assert_eq!(summary.delta_sign, -1);
    assert_eq!(summary.max_root_count, 2);
    assert!(summary.min_abs_delta > 0.0);
}
