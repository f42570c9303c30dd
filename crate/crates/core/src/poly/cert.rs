//! Closed-form discriminant of `P` and its sign certificate.
//!
//! In canonical coordinates (reference quadratic `t² + 1`, second quadratic
//! `t² + 2ξt + ξ² + X`) the discriminant of `P` factors as
//!
//! ```text
//! Δ = 589824 X [(1 − X − ξ²)² + 4ξ²]⁷ · (−[α₁(α₂ξ² + 1) + α₂X]) · P₂²,
//! P₂ = Σ_k Y_k(α₁, ξ²) X^k.
//! ```
//!
//! Here `α₁` weights the reference quadratic. With that labelling the closed
//! form agrees with the Sylvester-resultant discriminant up to the constant
//! [`DELTA_CONVENTION`].

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Zero};
#[allow(unused_imports)]
use num_traits::Float;
use serde::{Deserialize, Serialize};

use super::{checked_real_roots, discriminant_integer, ExactPolynomial, Polynomial, Scalar};
use crate::error::{Error, Result};

/// `Δ_closed / disc(P)`, where `disc(P) = (−1)^{n(n−1)/2} Res(P, P′)/lead(P)`.
///
/// Measured as exactly −1 (spread below 1e-12) over random points of the
/// domain; the two conventions differ only by the overall sign.
pub const DELTA_CONVENTION: f64 = -1.0;

/// Agreement required between the closed form and the oracle.
pub const TOL_RATIO: f64 = 1e-6;
/// Residual bound for the `P₂` coefficient fit.
pub const TOL_FIT: f64 = 1e-9;

/// `Y₀ … Y₄` of `P₂ = Σ Y_k X^k`. `Y₁` is not part of the printed closed
/// form; its expression here was recovered by fitting against the resultant
/// discriminant (see [`fit_p2_coefficients`]).
pub fn y_coefficients(alpha1: f64, xi_sq: f64) -> [f64; 5] {
    let a = alpha1;
    let b = 1.0 - alpha1;
    let s = xi_sq;
    let (a2, a3, a4) = (a * a, a * a * a, a * a * a * a);
    let (s2, s3) = (s * s, s * s * s);

    let y4 = b * b * (16.0 * b + a2);
    let y3 = -4.0 * b * b * (3.0 * a2 + 4.0 * a - 8.0) * s
        + 4.0 * b * (-3.0 * a3 + 67.0 * a2 - 196.0 * a + 136.0);
    let y2 = 2.0 * (-13.0 * a4 + 34.0 * a3 - 21.0 * a2 - 8.0 * a + 8.0) * s2
        - 2.0 * (122.0 * a4 - 636.0 * a3 + 914.0 * a2 - 384.0 * a - 16.0) * s
        - 2.0 * (13.0 * a4 - 26.0 * a3 + 405.0 * a2 - 392.0 * a - 8.0);
    let y1 = -4.0
        * a
        * (3.0 * a3 * s3 - 61.0 * a3 * s2 + 61.0 * a3 * s - 3.0 * a3 - 10.0 * a2 * s3
            + 122.0 * a2 * s2
            + 74.0 * a2 * s
            - 58.0 * a2
            + 11.0 * a * s3
            - 49.0 * a * s2
            - 131.0 * a * s
            - 71.0 * a
            - 4.0 * s3
            - 12.0 * s2
            - 12.0 * s
            - 4.0);
    let y0 = a2
        * (1.0 + s)
        * (1.0 + s)
        * (s2 * b * b + s * 2.0 * (1.0 - a2 + 6.0 * a * b) + 1.0 + a2 + 14.0 * a);
    [y0, y1, y2, y3, y4]
}

fn p2(alpha1: f64, xi_sq: f64, x: f64) -> f64 {
    y_coefficients(alpha1, xi_sq).iter().rev().fold(0.0, |acc, y| acc * x + y)
}

/// Every factor of the closed form except `P₂²`.
fn known_factors(alpha1: f64, xi_sq: f64, x: f64) -> f64 {
    let alpha2 = 1.0 - alpha1;
    let bracket = (1.0 - x - xi_sq).powi(2) + 4.0 * xi_sq;
    let brace = -(alpha1 * (alpha2 * xi_sq + 1.0) + alpha2 * x);
    589824.0 * x * bracket.powi(7) * brace
}

/// The closed-form discriminant `Δ(α₁, ξ², X)`.
pub fn closed_form_discriminant(alpha1: f64, xi_sq: f64, x: f64) -> f64 {
    let p = p2(alpha1, xi_sq, x);
    known_factors(alpha1, xi_sq, x) * p * p
}

/// Integer polynomial arithmetic, ascending coefficients.
fn imul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn isub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let at = |v: &[BigInt], k: usize| v.get(k).cloned().unwrap_or_default();
    (0..n).map(|k| at(a, k) - at(b, k)).collect()
}

fn ideriv(a: &[BigInt]) -> Vec<BigInt> {
    a.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect()
}

fn itrim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

/// `P` at a canonical domain point, scaled to integer coefficients.
///
/// With every input written over a common dyadic denominator `D`, the
/// quadratics `D·Q₁`, `D·Q₂`, `D²·Q_s` are integral and the result is
/// `D⁶·P`. Returns the coefficients and `D`.
fn canonical_p_integer(alpha1: f64, xi_sq: f64, x: f64) -> (Vec<BigInt>, BigInt) {
    let xi = xi_sq.sqrt();
    let inputs = [alpha1, xi, x + xi * xi].map(BigRational::from_f64);
    let d = inputs.iter().map(|r| r.denom().clone()).max().unwrap_or_else(BigInt::one);
    let [a, xi, eta] = inputs.map(|r| (r * BigRational::from_integer(d.clone())).to_integer());

    let two = BigInt::from(2);
    let q1 = vec![d.clone(), BigInt::zero(), d.clone()];
    let q2 = vec![eta, &two * xi, d.clone()];
    let rest = &d - &a;
    let qs: Vec<BigInt> = q1.iter().zip(&q2).map(|(u, v)| &a * u + &rest * v).collect();
    let l = isub(&imul(&ideriv(&q1), &q2), &imul(&ideriv(&q2), &q1));
    let m = imul(&imul(&q1, &q2), &qs);
    let three_l = ideriv(&l).iter().map(|c| c * BigInt::from(3)).collect::<Vec<_>>();
    let p = isub(&imul(&three_l, &m), &imul(&ideriv(&m), &l));
    (itrim(p), d)
}

/// Divide out the content; the discriminant scales by `content^{2n−2}`.
fn primitive(p: &[BigInt]) -> (Vec<BigInt>, BigInt) {
    let g = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return (p.to_vec(), BigInt::one());
    }
    (p.iter().map(|c| c / &g).collect(), g)
}

/// `P` at a canonical domain point, over the rationals.
pub fn canonical_p(alpha1: f64, xi_sq: f64, x: f64) -> ExactPolynomial {
    let (p, d) = canonical_p_integer(alpha1, xi_sq, x);
    let scale = BigRational::from_integer(num_traits::pow(d, 6));
    ExactPolynomial::new(p.into_iter().map(|c| BigRational::from_integer(c) / scale.clone()).collect())
}

/// Discriminant of `D⁶·P` treated formally as a sextic, rescaled to `P`:
/// when the `t⁶` coefficient vanishes, `disc₆ = a₅² disc₅`, and a double
/// drop gives 0.
fn sextic_discriminant(p: &[BigInt], d: &BigInt) -> Result<f64> {
    let (p, g) = primitive(p);
    let formal = match p.len() {
        7 => discriminant_integer(&p)?,
        6 => {
            let a5 = BigRational::from_integer(p[5].clone());
            discriminant_integer(&p)? * a5.clone() * a5
        }
        _ => return Ok(0.0),
    };
    // Formally a sextic throughout, so the content enters as g¹⁰.
    let scale = BigRational::new(num_traits::pow(g, 10), num_traits::pow(d.clone(), 60));
    Ok((formal * scale).to_f64())
}

/// Standard discriminant of `P` at a canonical domain point, computed
/// exactly and rounded once.
pub fn oracle_discriminant(alpha1: f64, xi_sq: f64, x: f64) -> Result<f64> {
    let (p, d) = canonical_p_integer(alpha1, xi_sq, x);
    sextic_discriminant(&p, &d)
}

/// Coefficients of `P₂` recovered from the resultant oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct P2Fit {
    pub alpha1: f64,
    pub xi_sq: f64,
    /// Fitted `Y₀ … Y₄`.
    pub fitted: [f64; 5],
    /// Closed-form `Y₀ … Y₄`.
    pub closed_form: [f64; 5],
    /// Largest relative deviation of the fitted `P₂` from the oracle `P₂` at
    /// the held-out abscissae.
    pub residual: f64,
    /// Largest relative deviation between fitted and closed-form coefficients.
    pub coefficient_mismatch: f64,
}

/// Solve a small dense system by Gaussian elimination with partial pivoting.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(piv, col);
        b.swap(piv, col);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = alloc::vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    x
}

/// Recover `Y₀ … Y₄` at `(α₁, ξ²)`: divide the exact discriminant by the
/// known factors at five values of `X`, take the positive square root, and
/// solve for the quartic. Five further abscissae validate the fit.
pub fn fit_p2_coefficients(alpha1: f64, xi_sq: f64) -> Result<P2Fit> {
    const FIT_X: [f64; 5] = [0.25, 0.75, 1.5, 2.5, 4.0];
    const CHECK_X: [f64; 5] = [0.125, 0.5, 2.0, 3.0, 6.0];
    let oracle_p2 = |x: f64| -> Result<f64> {
        let d = oracle_discriminant(alpha1, xi_sq, x)? * DELTA_CONVENTION;
        Ok((d / known_factors(alpha1, xi_sq, x)).max(0.0).sqrt())
    };

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for x in FIT_X {
        rows.push((0..5).map(|k| x.powi(k)).collect::<Vec<_>>());
        rhs.push(oracle_p2(x)?);
    }
    let coeffs = solve(rows, rhs);
    let fitted: [f64; 5] = core::array::from_fn(|k| coeffs[k]);
    let closed_form = y_coefficients(alpha1, xi_sq);

    let mut residual: f64 = 0.0;
    for x in CHECK_X {
        let want = oracle_p2(x)?;
        let got = fitted.iter().rev().fold(0.0, |acc, y| acc * x + y);
        residual = residual.max((got - want).abs() / want.abs().max(f64::MIN_POSITIVE));
    }
    let scale = closed_form.iter().fold(0.0, |acc: f64, y| acc.max(y.abs())).max(1.0);
    let coefficient_mismatch = fitted
        .iter()
        .zip(&closed_form)
        .fold(0.0, |acc: f64, (f, c)| acc.max((f - c).abs() / scale));

    if residual > TOL_FIT {
        return Err(Error::FitFailure { residual, tol: TOL_FIT });
    }
    Ok(P2Fit { alpha1, xi_sq, fitted, closed_form, residual, coefficient_mismatch })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of certifying one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscriminantCertificate {
    pub alpha1: f64,
    pub xi_sq: f64,
    #[serde(rename = "X")]
    pub x: f64,
    /// Closed-form `Δ`.
    pub delta_formula: f64,
    /// Resultant discriminant of `P`.
    pub delta_resultant: f64,
    pub convention_ratio: f64,
    pub y_coeffs: [f64; 5],
    /// Distinct real roots of `P` (Sturm-checked).
    pub root_count: usize,
    pub degree: usize,
    pub verdict: Verdict,
    /// Empty when the point passes.
    pub reasons: Vec<String>,
}

impl DiscriminantCertificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Check one point: the closed form matches the oracle, is strictly
/// negative, and `P` has one real root where its degree drops to five and
/// two where it is a true sextic.
pub fn certify_point(alpha1: f64, xi_sq: f64, x: f64) -> Result<DiscriminantCertificate> {
    let (pi, d) = canonical_p_integer(alpha1, xi_sq, x);
    let delta_resultant = sextic_discriminant(&pi, &d)?;
    let delta_formula = closed_form_discriminant(alpha1, xi_sq, x);
    let scale = BigRational::from_integer(num_traits::pow(d, 6));
    let float = Polynomial::new(pi.iter().map(|c| (BigRational::from_integer(c.clone()) / scale.clone()).to_f64()).collect());
    let exact = || ExactPolynomial::new(pi.iter().cloned().map(BigRational::from_integer).collect());
    let root_count = checked_real_roots(&float, exact).len();
    let degree = pi.len().saturating_sub(1);
    let y_coeffs = y_coefficients(alpha1, xi_sq);

    let mut reasons = Vec::new();
    if (delta_formula - DELTA_CONVENTION * delta_resultant).abs() > TOL_RATIO * delta_formula.abs() {
        reasons.push(format!(
            "closed form {delta_formula:e} disagrees with oracle {delta_resultant:e}"
        ));
    }
    if delta_formula >= 0.0 || !delta_formula.is_finite() {
        reasons.push(format!("discriminant {delta_formula:e} is not strictly negative"));
    }
    let expected_roots = if degree == 6 { 2 } else { 1 };
    if root_count != expected_roots {
        reasons.push(format!("P of degree {degree} has {root_count} real roots, expected {expected_roots}"));
    }
    Ok(DiscriminantCertificate {
        alpha1,
        xi_sq,
        x,
        delta_formula,
        delta_resultant,
        convention_ratio: delta_formula / delta_resultant,
        y_coeffs,
        root_count,
        degree,
        verdict: if reasons.is_empty() { Verdict::Pass } else { Verdict::Fail },
        reasons,
    })
}

/// Axis-aligned grid over `(α₁, ξ², X)`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub alpha1: (f64, f64),
    pub xi_sq: (f64, f64),
    pub x: (f64, f64),
    /// Points per axis, each at least 2.
    pub resolution: [usize; 3],
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { alpha1: (0.01, 0.99), xi_sq: (0.01, 9.0), x: (0.01, 9.0), resolution: [50, 50, 50] }
    }
}

impl GridSpec {
    pub fn with_resolution(n: usize) -> Self {
        GridSpec { resolution: [n, n, n], ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.resolution.iter().any(|&n| n < 2) {
            return Err(Error::Config("grid resolution must be at least 2 per axis".into()));
        }
        let ok = self.alpha1.0 >= 0.0
            && self.alpha1.1 <= 1.0
            && self.xi_sq.0 >= 0.0
            && self.x.0 > 0.0
            && self.alpha1.0 <= self.alpha1.1
            && self.xi_sq.0 <= self.xi_sq.1
            && self.x.0 <= self.x.1;
        if !ok {
            return Err(Error::Config(
                "grid must lie in 0 <= alpha1 <= 1, xi^2 >= 0, X > 0".into(),
            ));
        }
        Ok(())
    }

    fn axis(range: (f64, f64), n: usize, i: usize) -> f64 {
        if i + 1 == n {
            range.1
        } else {
            range.0 + (range.1 - range.0) * i as f64 / (n - 1) as f64
        }
    }

    /// Grid points in lexicographic `(α₁, ξ², X)` order, skipping the
    /// excluded line `ξ² = 0, X = 1` where the closed form vanishes.
    pub fn points(&self) -> Vec<(f64, f64, f64)> {
        let [na, ns, nx] = self.resolution;
        let mut out = Vec::with_capacity(na * ns * nx);
        for i in 0..na {
            let a = Self::axis(self.alpha1, na, i);
            for j in 0..ns {
                let s = Self::axis(self.xi_sq, ns, j);
                for k in 0..nx {
                    let x = Self::axis(self.x, nx, k);
                    if s == 0.0 && x == 1.0 {
                        continue;
                    }
                    out.push((a, s, x));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateSummary {
    pub points: usize,
    pub passed: usize,
    pub failed: usize,
    /// Smallest `|Δ|` seen: the margin away from a double root.
    pub min_abs_delta: f64,
    /// `-1`, `1`, or `0` when signs were mixed.
    pub delta_sign: i8,
    pub min_convention_ratio: f64,
    pub max_convention_ratio: f64,
    /// Histogram of real-root counts of `P`, index = count.
    pub root_counts: [usize; 7],
    pub max_root_count: usize,
}

pub fn summarize(certs: &[DiscriminantCertificate]) -> CertificateSummary {
    let mut s = CertificateSummary {
        points: certs.len(),
        passed: 0,
        failed: 0,
        min_abs_delta: f64::INFINITY,
        delta_sign: 0,
        min_convention_ratio: f64::INFINITY,
        max_convention_ratio: f64::NEG_INFINITY,
        root_counts: [0; 7],
        max_root_count: 0,
    };
    let mut signs = (false, false);
    for c in certs {
        if c.passed() {
            s.passed += 1;
        } else {
            s.failed += 1;
        }
        s.min_abs_delta = s.min_abs_delta.min(c.delta_formula.abs());
        if c.delta_formula < 0.0 {
            signs.0 = true;
        } else if c.delta_formula > 0.0 {
            signs.1 = true;
        }
        s.min_convention_ratio = s.min_convention_ratio.min(c.convention_ratio);
        s.max_convention_ratio = s.max_convention_ratio.max(c.convention_ratio);
        s.root_counts[c.root_count.min(6)] += 1;
        s.max_root_count = s.max_root_count.max(c.root_count);
    }
    s.delta_sign = match signs {
        (true, false) => -1,
        (false, true) => 1,
        _ => 0,
    };
    s
}

/// Certify every grid point, in grid order. Fails with the first violating
/// point.
pub fn certify_domain(grid: &GridSpec) -> Result<(Vec<DiscriminantCertificate>, CertificateSummary)> {
    grid.validate()?;
    let certs = grid
        .points()
        .into_iter()
        .map(|(a, s, x)| certify_point(a, s, x))
        .collect::<Result<Vec<_>>>()?;
    let summary = summarize(&certs);
    if let Some(bad) = certs.iter().find(|c| !c.passed()) {
        return Err(Error::CertificateViolation {
            alpha1: bad.alpha1,
            xi_sq: bad.xi_sq,
            x: bad.x,
            reason: bad.reasons.join("; "),
        });
    }
    Ok((certs, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_x_zero_vanishes() {
        assert_eq!(closed_form_discriminant(0.3, 2.0, 0.0), 0.0);
    }

    #[test]
    fn y_endpoints() {
        let y = y_coefficients(1.0, 3.7);
        assert_eq!(y[4], 0.0);
        assert_eq!(y[3], 0.0);
        let y = y_coefficients(0.5, 0.0);
        assert_eq!(y[4], 33.0 / 16.0);
    }

    #[test]
    fn integer_build_matches_generic_build() {
        let r = BigRational::from_f64;
        for (a, s, x) in [(0.5, 4.0, 1.0), (0.3, 2.0, 0.7), (0.01, 9.0, 0.01)] {
            let xi = f64::sqrt(s);
            let generic = crate::stationary::build_p_generic(&r(a), [&r(0.0), &r(xi)], [&r(1.0), &r(x + xi * xi)]);
            assert_eq!(canonical_p(a, s, x), generic);
        }
    }

    #[test]
    fn witness_point_passes() {
        let c = certify_point(0.5, 4.0, 1.0).unwrap();
        assert!(c.passed(), "{:?}", c.reasons);
        assert_eq!(c.degree, 5);
        assert_eq!(c.root_count, 1);
    }

    #[test]
    fn generic_point_has_two_roots() {
        let c = certify_point(0.3, 2.0, 0.7).unwrap();
        assert!(c.passed(), "{:?}", c.reasons);
        assert_eq!(c.degree, 6);
        assert_eq!(c.root_count, 2);
        assert!((c.convention_ratio - DELTA_CONVENTION).abs() < 1e-12);
    }

    #[test]
    fn grid_skips_excluded_line() {
        let g = GridSpec { alpha1: (0.2, 0.8), xi_sq: (0.0, 1.0), x: (1.0, 2.0), resolution: [2, 2, 2] };
        let pts = g.points();
        assert_eq!(pts.len(), 6);
        assert!(!pts.iter().any(|&(_, s, x)| s == 0.0 && x == 1.0));
    }

    #[test]
    fn bad_grid_rejected() {
        let g = GridSpec { resolution: [1, 5, 5], ..Default::default() };
        assert!(matches!(certify_domain(&g), Err(Error::Config(_))));
    }

    #[test]
    fn small_grid_certifies() {
        let (certs, summary) = certify_domain(&GridSpec::with_resolution(4)).unwrap();
        assert_eq!(certs.len(), 64);
        assert_eq!(summary.failed, 0);
        assert_eq!(summary.delta_sign, -1);
        assert!(summary.max_root_count <= 2);
    }
}
