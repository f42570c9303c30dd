//! Stationarity of the mutual information and the root-counting function.
//!
//! Writing a candidate outcome direction as `|n⟩ = |0⟩ + t|1⟩` in a frame
//! fixed by one outcome `|1⟩`, the stationarity conditions reduce to roots of
//!
//! ```text
//! f(t) = Σ_r α_r Q_r′(t) ln(Q_r(t) / Q_s(t)),   Q_r = t² + 2tξ_r + η_r,
//! Q_s = α₁Q₁ + α₂Q₂.
//! ```
//!
//! Its second derivative is `α₁α₂ L P / (Q₁Q₂Q_s)²` with
//! `L = Q₁′Q₂ − Q₂′Q₁` (degree ≤ 2) and the sextic
//! `P = 3L′(Q₁Q₂Q_s) − (Q₁Q₂Q_s)′L`, so the real roots of `L` and `P` are the
//! only inflection points of `f`. [`count_roots_of_f`] uses them to bracket
//! every root of `f`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
#[allow(unused_imports)]
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::{joint_distribution, Rank1Povm};
use crate::poly::{self, ExactPolynomial, Polynomial, Scalar};
use crate::qstate::{DensityPair, TOL_PURE};

/// Probabilities at or below this are treated as boundary points.
pub const TOL_PROB: f64 = 1e-14;
/// `L` with all coefficients at or below this is treated as zero, making `f ≡ 0`.
pub const TOL_L_ZERO: f64 = 1e-14;
/// Absolute bisection tolerance for roots of `f`.
pub const TOL_ROOT: f64 = 1e-10;

/// `(α, ξ, η)` for the two states in a frame `{|0⟩, |1⟩}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StationaryParams {
    pub alpha1: f64,
    pub alpha2: f64,
    pub xi1: f64,
    pub xi2: f64,
    pub eta1: f64,
    pub eta2: f64,
}

/// Coefficients `[c0, c1, c2]` (ascending) of `Q₁`, `Q₂` and `Q_s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraticTriple {
    pub q1: [f64; 3],
    pub q2: [f64; 3],
    pub qs: [f64; 3],
}

impl StationaryParams {
    pub fn new(alpha1: f64, xi1: f64, eta1: f64, xi2: f64, eta2: f64) -> Result<Self> {
        let p = StationaryParams { alpha1, alpha2: 1.0 - alpha1, xi1, xi2, eta1, eta2 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.alpha1, self.alpha2, self.xi1, self.xi2, self.eta1, self.eta2]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidParams("non-finite parameter".into()));
        }
        if !(self.alpha1 > 0.0 && self.alpha1 < 1.0) || (self.alpha1 + self.alpha2 - 1.0).abs() > 1e-12
        {
            return Err(Error::InvalidParams(format!(
                "need 0 < alpha1 < 1 and alpha1 + alpha2 = 1, got ({}, {})",
                self.alpha1, self.alpha2
            )));
        }
        for (r, (xi, eta)) in [(self.xi1, self.eta1), (self.xi2, self.eta2)].into_iter().enumerate() {
            if xi * xi >= eta {
                return Err(Error::InvalidParams(format!(
                    "state {}: need 0 <= xi^2 < eta, got xi = {xi}, eta = {eta}",
                    r + 1
                )));
            }
        }
        Ok(())
    }

    /// `X = η₁ − ξ₁²`.
    pub fn x(&self) -> f64 {
        self.eta1 - self.xi1 * self.xi1
    }

    pub fn quadratics(&self) -> QuadraticTriple {
        let q = |xi: f64, eta: f64| [eta, 2.0 * xi, 1.0];
        let (q1, q2) = (q(self.xi1, self.eta1), q(self.xi2, self.eta2));
        let qs = core::array::from_fn(|k| self.alpha1 * q1[k] + self.alpha2 * q2[k]);
        QuadraticTriple { q1, q2, qs }
    }

    /// `Q₁ ≡ Q₂`.
    pub fn is_degenerate(&self) -> bool {
        l_poly_f64(self).max_abs_coeff() <= TOL_L_ZERO
    }
}

impl QuadraticTriple {
    pub fn eval(q: &[f64; 3], t: f64) -> f64 {
        (t + q[1]) * t + q[0]
    }
}

/// `Q₁`, `Q₂`, `Q_s` over any coefficient field.
fn quadratics<T: Scalar>(alpha1: &T, xi: [&T; 2], eta: [&T; 2]) -> [Polynomial<T>; 3] {
    let two = T::one() + T::one();
    let q = |x: &T, e: &T| Polynomial::new(vec![e.clone(), two.clone() * x.clone(), T::one()]);
    let q1 = q(xi[0], eta[0]);
    let q2 = q(xi[1], eta[1]);
    let alpha2 = T::one() - alpha1.clone();
    let qs = &q1.scale(alpha1) + &q2.scale(&alpha2);
    [q1, q2, qs]
}

fn l_from<T: Scalar>(q: &[Polynomial<T>; 3]) -> Polynomial<T> {
    &(&q[0].derivative() * &q[1]) - &(&q[1].derivative() * &q[0])
}

/// `P = 3L′M − M′L` with `M = Q₁Q₂Q_s`, from raw coefficients.
pub fn build_p_generic<T: Scalar>(alpha1: &T, xi: [&T; 2], eta: [&T; 2]) -> Polynomial<T> {
    let q = quadratics(alpha1, xi, eta);
    let l = l_from(&q);
    let m = &(&q[0] * &q[1]) * &q[2];
    let three = T::one() + T::one() + T::one();
    &(&l.derivative() * &m).scale(&three) - &(&m.derivative() * &l)
}

/// `L = Q₁′Q₂ − Q₂′Q₁`, from raw coefficients.
pub fn build_l_generic<T: Scalar>(alpha1: &T, xi: [&T; 2], eta: [&T; 2]) -> Polynomial<T> {
    l_from(&quadratics(alpha1, xi, eta))
}

fn l_poly_f64(p: &StationaryParams) -> Polynomial<f64> {
    build_l_generic(&p.alpha1, [&p.xi1, &p.xi2], [&p.eta1, &p.eta2])
}

/// The sextic `P` in floating point.
pub fn build_p(params: &StationaryParams) -> Polynomial<f64> {
    build_p_generic(&params.alpha1, [&params.xi1, &params.xi2], [&params.eta1, &params.eta2])
}

/// The sextic `P` over the rationals; exact because every float is a dyadic
/// rational.
pub fn build_p_exact(params: &StationaryParams) -> ExactPolynomial {
    let r = BigRational::from_f64;
    build_p_generic(
        &r(params.alpha1),
        [&r(params.xi1), &r(params.xi2)],
        [&r(params.eta1), &r(params.eta2)],
    )
}

/// `L` over the rationals.
pub fn build_l_exact(params: &StationaryParams) -> ExactPolynomial {
    let r = BigRational::from_f64;
    build_l_generic(
        &r(params.alpha1),
        [&r(params.xi1), &r(params.xi2)],
        [&r(params.eta1), &r(params.eta2)],
    )
}

/// Coefficient of `t⁶` in `P`:
/// `−2(2α₁(ξ₁−ξ₂)² + 2ξ₁² + 2ξ₁ξ₂ − 4ξ₂² − 3(η₁−η₂))`.
/// `deg P < 6` exactly when this vanishes.
pub fn p_leading_coefficient(p: &StationaryParams) -> f64 {
    let d = p.xi1 - p.xi2;
    -2.0 * (2.0 * p.alpha1 * d * d + 2.0 * p.xi1 * p.xi1 + 2.0 * p.xi1 * p.xi2
        - 4.0 * p.xi2 * p.xi2
        - 3.0 * (p.eta1 - p.eta2))
}

/// Shift and scale `t → σt + τ` so that `ξ₂ = 0`, `η₂ = 1`.
pub fn canonicalize(params: &StationaryParams) -> StationaryParams {
    let tau = -params.xi2;
    let sigma = (params.eta2 - params.xi2 * params.xi2).sqrt();
    let s2 = sigma * sigma;
    let map = |xi: f64, eta: f64| ((xi + tau) / sigma, (eta + tau * (tau + 2.0 * xi)) / s2);
    let (xi1, eta1) = map(params.xi1, params.eta1);
    StationaryParams { xi1, eta1, xi2: 0.0, eta2: 1.0, ..*params }
}

/// `f(t)`. The logarithms are evaluated as `ln(1 + u)` with the difference
/// `Q_r − Q_s` formed directly, which keeps the far tails accurate.
pub fn eval_f(params: &StationaryParams, t: f64) -> f64 {
    let q = params.quadratics();
    let qs = QuadraticTriple::eval(&q.qs, t);
    let d = 2.0 * t * (params.xi1 - params.xi2) + (params.eta1 - params.eta2);
    let u1 = params.alpha2 * d / qs;
    let u2 = -params.alpha1 * d / qs;
    let dq1 = 2.0 * (t + params.xi1);
    let dq2 = 2.0 * (t + params.xi2);
    params.alpha1 * dq1 * u1.ln_1p() + params.alpha2 * dq2 * u2.ln_1p()
}

/// `(f′(t), f″(t))` from the closed forms.
pub fn eval_f_derivatives(params: &StationaryParams, t: f64) -> (f64, f64) {
    let q = params.quadratics();
    let (q1, q2, qs) = (
        QuadraticTriple::eval(&q.q1, t),
        QuadraticTriple::eval(&q.q2, t),
        QuadraticTriple::eval(&q.qs, t),
    );
    let (dq1, dq2) = (2.0 * (t + params.xi1), 2.0 * (t + params.xi2));
    let dqs = params.alpha1 * dq1 + params.alpha2 * dq2;
    let d = 2.0 * t * (params.xi1 - params.xi2) + (params.eta1 - params.eta2);
    let a12 = params.alpha1 * params.alpha2;

    let l = dq1 * q2 - dq2 * q1;
    // L′ = Q₁″Q₂ − Q₂″Q₁ = 2(Q₂ − Q₁).
    let dl = -2.0 * d;
    let m = q1 * q2 * qs;
    let dm = dq1 * q2 * qs + q1 * dq2 * qs + q1 * q2 * dqs;
    let p = 3.0 * dl * m - dm * l;

    let logs = params.alpha1 * (params.alpha2 * d / qs).ln_1p()
        + params.alpha2 * (-params.alpha1 * d / qs).ln_1p();
    let f1 = 2.0 * logs + a12 * l * l / m;
    let f2 = a12 * l * p / (m * m);
    (f1, f2)
}

/// Real roots of `f` and how they were obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootCount {
    pub count: usize,
    /// Root locations, refined to [`TOL_ROOT`].
    pub roots: Vec<f64>,
    /// `Q₁ ≡ Q₂`, so `f ≡ 0`; no roots are reported.
    pub identically_zero: bool,
    /// Real roots of `L` and `P`.
    pub inflection_points: Vec<f64>,
    /// Half-width of the scanned bracket `[−T, T]`.
    pub bracket: f64,
    /// `deg P < 6` at these parameters.
    pub leading_coefficient_vanishes: bool,
}

fn sign(x: f64) -> i8 {
    x.sign()
}

fn bisect_sign(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let s_lo = sign(g(lo));
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = sign(g(mid));
        if s == 0 {
            return mid;
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Sample `f` outward from `±t` up to `10⁶` and check it neither changes sign
/// nor grows in magnitude.
fn tail_decays(params: &StationaryParams, t: f64) -> bool {
    [1.0, -1.0].into_iter().all(|dir| {
        let mut x = t;
        let mut prev = eval_f(params, dir * x);
        while x < 1e6 {
            x *= 2.0;
            let v = eval_f(params, dir * x);
            if (prev != 0.0 && v != 0.0 && sign(v) != sign(prev)) || v.abs() > prev.abs() * (1.0 + 1e-9) + 1e-300 {
                return false;
            }
            prev = v;
        }
        true
    })
}

/// Number of real roots of `f`.
///
/// Between consecutive inflection points `f′` is monotone, so splitting
/// again at the root of `f′` leaves pieces on which `f` is monotone and each
/// sign change is exactly one root.
pub fn count_roots_of_f(params: &StationaryParams) -> Result<RootCount> {
    params.validate()?;
    let lead_vanishes = p_leading_coefficient(params) == 0.0;
    if params.is_degenerate() {
        return Ok(RootCount {
            count: 0,
            roots: Vec::new(),
            identically_zero: true,
            inflection_points: Vec::new(),
            bracket: 0.0,
            leading_coefficient_vanishes: lead_vanishes,
        });
    }

    let mut inflections = poly::checked_real_roots(&l_poly_f64(params), || build_l_exact(params));
    inflections.extend(poly::checked_real_roots(&build_p(params), || build_p_exact(params)));
    inflections.sort_by(|a, b| a.total_cmp(b));
    inflections.dedup();

    let scale = params.xi1.abs().max(params.xi2.abs()).max(params.eta1.sqrt()).max(params.eta2.sqrt());
    let far = inflections.iter().fold(0.0, |acc: f64, x| acc.max(x.abs()));
    let mut bracket = (10.0 * (1.0 + scale)).max(2.0 * far + 1.0);
    for _ in 0..8 {
        if tail_decays(params, bracket) {
            break;
        }
        bracket *= 10.0;
    }

    let mut knots = vec![-bracket];
    knots.extend(inflections.iter().copied().filter(|x| x.abs() < bracket));
    knots.push(bracket);

    // Split where f′ changes sign.
    let fprime = |t: f64| eval_f_derivatives(params, t).0;
    let mut pieces = vec![knots[0]];
    for w in knots.windows(2) {
        let (a, b) = (fprime(w[0]), fprime(w[1]));
        if sign(a) != 0 && sign(b) != 0 && sign(a) != sign(b) {
            pieces.push(bisect_sign(fprime, w[0], w[1], 1e-13 * (1.0 + w[1].abs())));
        }
        pieces.push(w[1]);
    }

    let f = |t: f64| eval_f(params, t);
    let values: Vec<f64> = pieces.iter().map(|&t| f(t)).collect();
    let mut roots = Vec::new();
    for (i, &t) in pieces.iter().enumerate() {
        if values[i] == 0.0 {
            roots.push(t);
        }
        if i + 1 < pieces.len() {
            let (a, b) = (values[i], values[i + 1]);
            if a != 0.0 && b != 0.0 && sign(a) != sign(b) {
                roots.push(bisect_sign(f, t, pieces[i + 1], TOL_ROOT));
            }
        }
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    roots.dedup();

    Ok(RootCount {
        count: roots.len(),
        roots,
        identically_zero: false,
        inflection_points: inflections,
        bracket,
        leading_coefficient_vanishes: lead_vanishes,
    })
}

/// `(α, ξ, η)` of both states in the frame `{ket0, ket1}`.
pub fn extract_params(states: &DensityPair, ket1: [f64; 2], ket0: [f64; 2]) -> Result<StationaryParams> {
    let dot = ket0[0] * ket1[0] + ket0[1] * ket1[1];
    let n0 = ket0[0].hypot(ket0[1]);
    let n1 = ket1[0].hypot(ket1[1]);
    if dot.abs() > 1e-9 || (n0 - 1.0).abs() > 1e-9 || (n1 - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidParams("frame kets must be orthonormal".into()));
    }
    let mut b = [0.0; 2];
    let mut xi = [0.0; 2];
    let mut eta = [0.0; 2];
    for (r, rho) in states.states().into_iter().enumerate() {
        let bb = rho.bilinear(ket1, ket1);
        if bb <= 0.0 {
            return Err(Error::InvalidParams(format!("<1|rho{}|1> = {bb} is not positive", r + 1)));
        }
        b[r] = bb;
        xi[r] = rho.bilinear(ket1, ket0) / bb;
        eta[r] = rho.bilinear(ket0, ket0) / bb;
        // η − ξ² = det ρ / ⟨1|ρ|1⟩²; same scale-free rank test as `is_pure`.
        let gap = eta[r] - xi[r] * xi[r];
        if gap <= TOL_PURE * (1.0 + eta[r]) * (1.0 + eta[r]) {
            return Err(Error::PureStateDomain { state: r + 1, xi_sq: xi[r] * xi[r], eta: eta[r] });
        }
    }
    let alpha1 = b[0] / (b[0] + b[1]);
    Ok(StationaryParams { alpha1, alpha2: b[1] / (b[0] + b[1]), xi1: xi[0], xi2: xi[1], eta1: eta[0], eta2: eta[1] })
}

/// `δ_(k,l) I = Σ_r ⟨k|ρ_r|l⟩ ln[(p_rk / p_rl)(p_·l / p_·k)]`, natural log.
///
/// Computed in a fixed index order and negated for `k > l`, so swapping the
/// indices flips the sign exactly.
pub fn stationarity_residual(states: &DensityPair, povm: &Rank1Povm, k: usize, l: usize) -> Result<f64> {
    let n = povm.kets.len();
    for idx in [k, l] {
        if idx >= n {
            return Err(Error::OutcomeIndex { index: idx, len: n });
        }
    }
    if k == l {
        return Err(Error::SameOutcome(k));
    }
    let (a, b, s) = if k < l { (k, l, 1.0) } else { (l, k, -1.0) };
    let jd = joint_distribution(states, &povm.to_povm());
    let check = |what: &str, v: f64| {
        if v <= TOL_PROB {
            Err(Error::BoundaryDistribution { what: what.into(), value: v, tol: TOL_PROB })
        } else {
            Ok(v)
        }
    };
    let pa = check("p_.k", jd.column_marginals[a])?;
    let pb = check("p_.l", jd.column_marginals[b])?;
    let mut total = 0.0;
    for (r, rho) in states.states().into_iter().enumerate() {
        let pra = check(&format!("p_{}k", r + 1), jd.p[r][a])?;
        let prb = check(&format!("p_{}l", r + 1), jd.p[r][b])?;
        let element = rho.bilinear(povm.kets[a], povm.kets[b]);
        total += element * ((pra / prb) * (pb / pa)).ln();
    }
    Ok(s * total)
}
