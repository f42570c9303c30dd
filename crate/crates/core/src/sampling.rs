//! Seeded random inputs for sweeps and property checks.
//!
//! Every draw comes from a ChaCha stream keyed by `(seed, index)`, so a sweep
//! can evaluate draws in any order and still reproduce them exactly.

use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::Mat2;
use crate::poly::Polynomial;
use crate::qstate::DensityPair;
use crate::stationary::StationaryParams;

/// `det ≤ MIXED_MARGIN · tr²` counts as near-pure for analytic-path draws.
pub const MIXED_MARGIN: f64 = 1e-6;

pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `prior · R(θ) diag(λ, 1 − λ) R(θ)ᵀ` with `λ` uniform on `[0, 1]` and `θ`
/// uniform on `[0, π)`.
fn random_state<R: Rng>(rng: &mut R, prior: f64) -> Mat2 {
    let lambda: f64 = rng.gen_range(0.0..=1.0);
    let theta: f64 = rng.gen_range(0.0..PI);
    Mat2::diag(lambda, 1.0 - lambda).conjugate_by(&Mat2::rotation(theta)).scale(prior)
}

fn pair_from<R: Rng>(rng: &mut R) -> DensityPair {
    let prior: f64 = rng.gen_range(0.1..=0.9);
    let rho1 = random_state(rng, prior);
    let rho2 = random_state(rng, 1.0 - prior);
    DensityPair::new(rho1, rho2).expect("sampled states are valid")
}

/// A random pair; may be arbitrarily close to pure.
pub fn random_pair<R: Rng>(rng: &mut R) -> DensityPair {
    pair_from(rng)
}

/// A random pair with both states safely mixed.
pub fn random_mixed_pair<R: Rng>(rng: &mut R) -> DensityPair {
    loop {
        let p = pair_from(rng);
        let mixed = |m: &Mat2| m.det() > MIXED_MARGIN * m.trace() * m.trace();
        if mixed(&p.rho1) && mixed(&p.rho2) {
            return p;
        }
    }
}

/// Two pure states with priors `prior`, `1 − prior` at angle `gamma`.
pub fn pure_pair(prior: f64, gamma: f64, offset: f64) -> DensityPair {
    let ket = |a: f64| [a.cos(), a.sin()];
    DensityPair::new_unchecked(
        Mat2::outer(ket(offset)).scale(prior),
        Mat2::outer(ket(offset + gamma)).scale(1.0 - prior),
    )
}

/// Random valid `(α, ξ, η)`: `α₁` uniform on `(0, 1)`, `ξ_r` uniform on
/// `[−5, 5]`, `η_r − ξ_r²` log-uniform on `[10⁻², 10²]`.
pub fn random_params<R: Rng>(rng: &mut R) -> StationaryParams {
    loop {
        let alpha1: f64 = rng.gen_range(0.0..1.0);
        if alpha1 <= 0.0 {
            continue;
        }
        let mut draw = || {
            let xi: f64 = rng.gen_range(-5.0..=5.0);
            let gap = 10f64.powf(rng.gen_range(-2.0..=2.0));
            (xi, xi * xi + gap)
        };
        let (xi1, eta1) = draw();
        let (xi2, eta2) = draw();
        if let Ok(p) = StationaryParams::new(alpha1, xi1, eta1, xi2, eta2) {
            return p;
        }
    }
}

/// Polynomial of degree `≤ max_degree` with coefficients uniform on `[−10, 10]`.
pub fn random_polynomial<R: Rng>(rng: &mut R, max_degree: usize) -> Polynomial<f64> {
    let deg = rng.gen_range(1..=max_degree);
    Polynomial::new((0..=deg).map(|_| rng.gen_range(-10.0..=10.0)).collect())
}
