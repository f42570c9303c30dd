use qaccess_core::measure::Rank1Povm;
use qaccess_core::optimizer::optimize_von_neumann;
use qaccess_core::sampling::{random_mixed_pair, random_params, rng_for};
use qaccess_core::stationary::{
    canonicalize, count_roots_of_f, eval_f, eval_f_derivatives, extract_params, stationarity_residual,
};
use rand::Rng;

#[test]
fn closed_form_derivatives_match_finite_differences() {
    let h = 1e-5;
    for i in 0..1000 {
        let mut rng = rng_for(11, i);
        let p = random_params(&mut rng);
        let t: f64 = rng.gen_range(-10.0..10.0);
        let (f1, f2) = eval_f_derivatives(&p, t);
        let fd1 = (eval_f(&p, t + h) - eval_f(&p, t - h)) / (2.0 * h);
        let fd2 = (eval_f_derivatives(&p, t + h).0 - eval_f_derivatives(&p, t - h).0) / (2.0 * h);
        assert!((f1 - fd1).abs() <= 1e-6 * (1.0 + f1.abs()), "draw {i}: f' {f1} vs {fd1} at {p:?}, t = {t}");
        assert!((f2 - fd2).abs() <= 1e-6 * (1.0 + f2.abs()), "draw {i}: f'' {f2} vs {fd2} at {p:?}, t = {t}");
    }
}

#[test]
fn root_count_survives_canonicalization() {
    for i in 0..100 {
        let p = random_params(&mut rng_for(12, i));
        let c = canonicalize(&p);
        assert_eq!(c.xi2, 0.0);
        assert_eq!(c.eta2, 1.0);
        let before = count_roots_of_f(&p).unwrap().count;
        let after = count_roots_of_f(&c).unwrap().count;
        assert_eq!(before, after, "draw {i}: {p:?}");
    }
}

#[test]
fn extracted_params_satisfy_domain_constraints() {
    for i in 0..10_000 {
        let mut rng = rng_for(13, i);
        let states = random_mixed_pair(&mut rng);
        let phi: f64 = rng.gen_range(0.0..std::f64::consts::PI);
        let (s, c) = phi.sin_cos();
        let p = extract_params(&states, [-s, c], [c, s]).unwrap();
        assert!(p.alpha1 > 0.0 && p.alpha1 < 1.0 && p.alpha2 > 0.0 && p.alpha2 < 1.0);
        assert!(p.xi1 * p.xi1 < p.eta1 && p.xi2 * p.xi2 < p.eta2, "draw {i}: {p:?}");
        assert!(p.validate().is_ok());
    }
}

#[test]
fn optimum_is_stationary() {
    for i in 0..20 {
        let states = random_mixed_pair(&mut rng_for(14, i));
        let (vn, _) = optimize_von_neumann(&states);
        let r = stationarity_residual(&states, &Rank1Povm::von_neumann(vn.theta), 0, 1).unwrap();
        assert!(r.abs() <= 1e-6, "pair {i}: residual {r}");
    }
}

#[test]
fn ten_thousand_draws_have_at_most_two_roots() {
    for i in 0..10_000 {
        let p = random_params(&mut rng_for(1, i));
        let rc = count_roots_of_f(&p).unwrap();
        assert!(rc.count <= 2, "draw {i}: {} roots at {p:?}", rc.count);
    }
}

#[test]
fn root_counts_agree_with_dense_sampling() {
    // Independent count: sign changes of f on a dense grid inside the bracket.
    for i in 0..50 {
        let p = random_params(&mut rng_for(15, i));
        let rc = count_roots_of_f(&p).unwrap();
        let n = 200_000;
        let t = |k: usize| -rc.bracket + 2.0 * rc.bracket * k as f64 / n as f64;
        let mut changes = 0;
        let mut prev = eval_f(&p, t(0));
        for k in 1..=n {
            let v = eval_f(&p, t(k));
            if v != 0.0 && prev != 0.0 && v.signum() != prev.signum() {
                changes += 1;
            }
            if v != 0.0 {
                prev = v;
            }
        }
        assert!(changes <= rc.count, "draw {i}: grid sees {changes}, counter {}", rc.count);
    }
}
