//! Maximization of mutual information over real rank-1 measurements.
//!
//! Von Neumann measurements form a one-parameter family (basis angle θ,
//! period π/2) and are searched globally: a dense grid, golden-section
//! refinement around the best cell, then a polish on the sign of `dI/dθ`.
//! Three-outcome measurements are searched by multi-start pattern ascent
//! over the three outcome angles; the weights are fixed by completeness.
//! [`verify_conjecture`] compares the two optima.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::measure::{is_von_neumann, merge_outcomes_with, mutual_information_of, Povm, Rank1Povm};
use crate::qstate::{DensityPair, TOL_PURE};
use crate::sampling::rng_for;
use crate::stationary::stationarity_residual;

/// `x` reduced to `[0, period)`.
pub fn wrap(x: f64, period: f64) -> f64 {
    let r = x - period * (x / period).floor();
    if r >= period {
        0.0
    } else {
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Coarse θ grid size on `[0, π)`.
    pub grid_points: usize,
    /// Golden-section bracket width at termination.
    pub theta_tol: f64,
    pub restarts: usize,
    pub seed: u64,
    /// Pattern-search step at which a restart stops.
    pub min_step: f64,
    pub initial_step: f64,
    /// Largest acceptable `best_trine − best_vn`, in bits.
    pub gap_tol: f64,
    /// Outcomes with weight at or below this are discarded as null.
    pub collapse_tol: f64,
    /// Tolerance for `is_von_neumann` on the merged best trine.
    pub von_neumann_tol: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            grid_points: 4096,
            theta_tol: 1e-12,
            restarts: 24,
            seed: 0,
            min_step: 1e-11,
            initial_step: 0.25,
            gap_tol: 1e-6,
            collapse_tol: 1e-8,
            von_neumann_tol: 1e-6,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 2 {
            return Err(Error::Config("grid_points must be at least 2".into()));
        }
        if self.restarts < 1 {
            return Err(Error::Config("restarts must be at least 1".into()));
        }
        let tols = [self.theta_tol, self.min_step, self.initial_step, self.gap_tol, self.collapse_tol, self.von_neumann_tol];
        if tols.iter().any(|t| !(*t > 0.0)) {
            return Err(Error::Config("tolerances and steps must be positive".into()));
        }
        Ok(())
    }
}

/// Basis `{(cos θ, sin θ), (−sin θ, cos θ)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VonNeumannParam {
    pub theta: f64,
}

impl VonNeumannParam {
    pub fn to_rank1(&self) -> Rank1Povm {
        Rank1Povm::von_neumann(self.theta)
    }
}

/// Three rank-1 outcomes `w_j |φ_j⟩⟨φ_j|`, angles ascending in `[0, π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrinePovmParam {
    pub angles: [f64; 3],
    pub weights: [f64; 3],
}

impl TrinePovmParam {
    /// Solve completeness for the weights. With doubled angles `ψ_j = 2φ_j`,
    /// `Σ w_j |φ_j⟩⟨φ_j| = I` reads `Σ w_j = 2`, `Σ w_j e^{iψ_j} = 0`. With
    /// `a_j = ψ_l − ψ_k` for cyclic `(j, k, l)` the solution is
    /// `w_j = −cos(a_j/2) / (sin(a_k/2) sin(a_l/2))`; this product form keeps
    /// full relative accuracy where outcomes nearly coincide.
    pub fn from_angles(angles: [f64; 3]) -> Result<Self> {
        let psi = angles.map(|a| 2.0 * a);
        let half = [0.5 * (psi[2] - psi[1]), 0.5 * (psi[0] - psi[2]), 0.5 * (psi[1] - psi[0])];
        let mut weights = [0.0; 3];
        for j in 0..3 {
            let (k, l) = ((j + 1) % 3, (j + 2) % 3);
            weights[j] = -half[j].cos() / (half[k].sin() * half[l].sin());
        }
        if weights.iter().any(|w| !w.is_finite() || *w < -1e-12) {
            return Err(Error::DegenerateAngles);
        }
        Ok(TrinePovmParam { angles, weights: weights.map(|w| w.max(0.0)) })
    }

    /// Read angles and weights back from three kets.
    pub fn from_kets(kets: &[[f64; 2]; 3]) -> Self {
        TrinePovmParam {
            angles: kets.map(|k| k[1].atan2(k[0])),
            weights: kets.map(|k| k[0] * k[0] + k[1] * k[1]),
        }
    }

    /// Angles reduced to `[0, π)` and sorted, weights following.
    pub fn normalized(&self) -> Self {
        let mut idx = [0usize, 1, 2];
        let red = self.angles.map(|a| wrap(a, PI));
        idx.sort_by(|&a, &b| red[a].total_cmp(&red[b]));
        TrinePovmParam { angles: idx.map(|i| red[i]), weights: idx.map(|i| self.weights[i]) }
    }

    /// Kets `√w_j |φ_j⟩`, renormalized by `S^{-1/2}` so that completeness
    /// holds to rounding even where the weights are ill-conditioned.
    pub fn to_rank1(&self) -> Rank1Povm {
        let kets: Vec<[f64; 2]> = (0..3)
            .map(|j| {
                let r = self.weights[j].sqrt();
                [r * self.angles[j].cos(), r * self.angles[j].sin()]
            })
            .collect();
        complete(&kets).unwrap_or(Rank1Povm { kets })
    }

    pub fn to_povm(&self) -> Povm {
        self.to_rank1().to_povm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BestVonNeumann {
    pub theta: f64,
    pub bits: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BestTrine {
    pub angles: [f64; 3],
    pub weights: [f64; 3],
    pub bits: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub theta: f64,
    pub min_step: f64,
    pub gap: f64,
    pub collapse: f64,
    pub von_neumann: f64,
}

/// Outcome of comparing the best von Neumann and best three-outcome
/// measurement for one pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub best_vn: BestVonNeumann,
    pub best_trine: BestTrine,
    /// `best_trine.bits − best_vn.bits`.
    pub gap_bits: f64,
    /// The best trine merges to at most two effective outcomes (a null
    /// outcome dropped or proportional outcomes combined).
    pub collapsed: bool,
    /// The best trine, merged, is an orthogonal measurement.
    pub merged_is_von_neumann: bool,
    /// `|δ_(k,l) I|` for the von Neumann optimum and every outcome pair of
    /// the merged trine optimum.
    pub stationarity_residuals: Vec<f64>,
    pub max_residual: f64,
    /// Outcome pairs skipped because a probability vanished.
    pub boundary_pairs: usize,
    /// One of the states is pure; only the optimizer path applies.
    pub pure_state_pair: bool,
    pub seed: u64,
    pub restarts: usize,
    pub tolerances: Tolerances,
}

impl VerificationReport {
    /// Everything that falsifies the orthogonal-optimum claim for this pair:
    /// a gap above tolerance, a near-tie optimum that does not collapse to an
    /// orthogonal measurement, or a stationarity residual above tolerance.
    pub fn violations(&self) -> Vec<String> {
        let tol = self.tolerances.gap;
        let mut out = Vec::new();
        if !(self.gap_bits <= tol) {
            out.push(format!("gap {:e} bits exceeds {tol:e}", self.gap_bits));
        } else if !(self.collapsed && self.merged_is_von_neumann) {
            out.push("near-tie three-outcome optimum does not collapse to an orthogonal measurement".into());
        }
        if !(self.max_residual <= tol) {
            out.push(format!("stationarity residual {:e} exceeds {tol:e}", self.max_residual));
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.violations().is_empty()
    }
}

pub fn vn_information(states: &DensityPair, theta: f64) -> f64 {
    mutual_information_of(states, &Povm::von_neumann(theta))
}

/// Golden-section search for a maximum of `f` on `[a, b]`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        if c >= d {
            break;
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// `δ_(0,1) I` for the basis at `theta`; `dI/dθ = 2 δ_(0,1) I` (natural log).
fn vn_slope(states: &DensityPair, theta: f64) -> Option<f64> {
    stationarity_residual(states, &Rank1Povm::von_neumann(theta), 0, 1).ok()
}

/// Bisection on the sign of `dI/dθ` inside `[a, b]`, when it brackets a
/// maximum.
fn polish_theta(states: &DensityPair, mut a: f64, mut b: f64) -> Option<f64> {
    let (sa, sb) = (vn_slope(states, a)?, vn_slope(states, b)?);
    if !(sa > 0.0 && sb < 0.0) {
        return None;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let s = vn_slope(states, m)?;
        if s > 0.0 {
            a = m;
        } else if s < 0.0 {
            b = m;
        } else {
            return Some(m);
        }
    }
    Some(0.5 * (a + b))
}

/// Best von Neumann measurement with explicit grid size and tolerance.
pub fn optimize_von_neumann_with(states: &DensityPair, grid_points: usize, theta_tol: f64) -> (VonNeumannParam, f64) {
    let step = PI / grid_points as f64;
    let values: Vec<f64> = (0..grid_points).map(|i| vn_information(states, i as f64 * step)).collect();
    let top = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    // Smallest θ among ties (within rounding).
    let best = values.iter().position(|&v| v >= top - 1e-15).unwrap_or(0);
    let (mut theta, mut bits) = (best as f64 * step, values[best]);

    let (lo, hi) = (theta - step, theta + step);
    let (g_theta, g_bits) = golden_section_max(|t| vn_information(states, t), lo, hi, theta_tol);
    // I is flat to second order at the peak, so the golden-section argmax is
    // only good to ~1e-8; the sign of dI/dθ pins it to rounding level. Values
    // within 1e-15 of the grid best are rounding ties, and on a flat plateau
    // θ stays at the grid point.
    let grid_bits = bits;
    if let Some(p) = polish_theta(states, lo, hi) {
        let v = vn_information(states, p);
        if v >= grid_bits - 1e-15 {
            theta = p;
            bits = v.max(grid_bits);
        }
    } else if g_bits > grid_bits + 1e-15 {
        theta = g_theta;
        bits = g_bits;
    }
    (VonNeumannParam { theta: wrap(theta, FRAC_PI_2) }, bits)
}

/// Best von Neumann measurement: 4096-point grid, golden-section refinement to
/// `|Δθ| ≤ 1e-12`.
pub fn optimize_von_neumann(states: &DensityPair) -> (VonNeumannParam, f64) {
    let c = OptimizerConfig::default();
    optimize_von_neumann_with(states, c.grid_points, c.theta_tol)
}

fn trine_value(states: &DensityPair, angles: &[f64; 3]) -> Option<f64> {
    let t = TrinePovmParam::from_angles(*angles).ok()?;
    Some(mutual_information_of(states, &t.to_povm()))
}

/// All 26 nonzero directions in `{−1, 0, 1}³`.
fn directions() -> Vec<[f64; 3]> {
    let mut out = Vec::with_capacity(26);
    for a in -1..=1 {
        for b in -1..=1 {
            for c in -1..=1 {
                if (a, b, c) != (0, 0, 0) {
                    out.push([a as f64, b as f64, c as f64]);
                }
            }
        }
    }
    out
}

/// Pattern ascent from `start`: poll every direction, move on the first
/// improvement, halve the step when none improves.
fn ascend(states: &DensityPair, start: [f64; 3], cfg: &OptimizerConfig) -> Option<([f64; 3], f64)> {
    let dirs = directions();
    let mut x = start;
    let mut best = trine_value(states, &x)?;
    let mut step = cfg.initial_step;
    let mut iterations = 0;
    while step >= cfg.min_step && iterations < 200_000 {
        iterations += 1;
        let mut moved = false;
        for d in &dirs {
            let cand = [x[0] + step * d[0], x[1] + step * d[1], x[2] + step * d[2]];
            if let Some(v) = trine_value(states, &cand) {
                if v > best {
                    x = cand;
                    best = v;
                    moved = true;
                    break;
                }
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    Some((x, best))
}

fn random_feasible<R: Rng>(rng: &mut R) -> [f64; 3] {
    loop {
        let a = [rng.gen_range(0.0..PI), rng.gen_range(0.0..PI), rng.gen_range(0.0..PI)];
        if let Ok(t) = TrinePovmParam::from_angles(a) {
            if t.weights.iter().all(|&w| w > 1e-3) {
                return a;
            }
        }
    }
}

/// Multi-start search over three-outcome rank-1 POVMs. The first start is
/// the best von Neumann measurement padded with a null third outcome, so
/// the result never falls below the orthogonal optimum; the remaining
/// `restarts − 1` starts are random interior trines.
pub fn optimize_trine_with(states: &DensityPair, cfg: &OptimizerConfig) -> Result<(TrinePovmParam, f64)> {
    cfg.validate()?;
    let (vn, _) = optimize_von_neumann_with(states, cfg.grid_points, cfg.theta_tol);
    let mut starts = vec![[vn.theta, vn.theta + FRAC_PI_2, vn.theta + 0.25 * PI]];
    let mut rng = rng_for(cfg.seed, 0);
    starts.extend((1..cfg.restarts).map(|_| random_feasible(&mut rng)));

    let mut best: Option<([f64; 3], f64)> = None;
    for s in starts {
        if let Some((x, v)) = ascend(states, s, cfg) {
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((x, v));
            }
        }
    }
    let (x, v) = best.ok_or(Error::DegenerateAngles)?;
    let kets = TrinePovmParam::from_angles(x)?.to_rank1().kets;
    Ok((TrinePovmParam::from_kets(&[kets[0], kets[1], kets[2]]).normalized(), v))
}

pub fn optimize_trine(states: &DensityPair, restarts: usize, seed: u64) -> Result<(TrinePovmParam, f64)> {
    optimize_trine_with(states, &OptimizerConfig { restarts, seed, ..Default::default() })
}

/// `|j⟩ = S^{-1/2} u_j` with `S = Σ u_j u_jᵀ`: the rank-1 POVM closest in
/// shape to the vectors `u_j`.
fn frame(us: &[[f64; 2]]) -> Mat2 {
    us.iter().fold(Mat2::ZERO, |acc, u| acc + Mat2::outer(*u))
}

fn inverse_sqrt_step(us: &[[f64; 2]]) -> Option<Vec<[f64; 2]>> {
    let (vals, vecs) = frame(us).sym_eigen();
    if !(vals[0] > 1e-12 * vals[1].max(1e-300)) {
        return None;
    }
    let inv_sqrt = Mat2::outer(vecs[0]).scale(1.0 / vals[0].sqrt()) + Mat2::outer(vecs[1]).scale(1.0 / vals[1].sqrt());
    Some(us.iter().map(|u| inv_sqrt.apply(*u)).collect())
}

/// Scale `us` so that `Σ u uᵀ = I`. A second pass removes the error left
/// by an ill-conditioned first pass; frames still off by more than round-off
/// are rejected.
fn complete(us: &[[f64; 2]]) -> Option<Rank1Povm> {
    let kets = inverse_sqrt_step(&inverse_sqrt_step(us)?)?;
    if (frame(&kets) - Mat2::IDENTITY).max_abs() > 1e-14 {
        return None;
    }
    Some(Rank1Povm { kets })
}

fn normalized_kets(raw: &[f64]) -> Option<Rank1Povm> {
    let us: Vec<[f64; 2]> = raw.chunks(2).map(|c| [c[0], c[1]]).collect();
    complete(&us)
}

/// Stress mode: coordinate ascent over `n`-outcome real rank-1 POVMs with
/// `n` free vectors, for checking that more outcomes do not help.
pub fn optimize_rank1(states: &DensityPair, outcomes: usize, cfg: &OptimizerConfig) -> Result<(Rank1Povm, f64)> {
    cfg.validate()?;
    if outcomes < 2 {
        return Err(Error::Config("need at least two outcomes".into()));
    }
    let value = |x: &[f64]| normalized_kets(x).map(|p| mutual_information_of(states, &p.to_povm()));
    let mut rng = rng_for(cfg.seed, 1);
    let mut best: Option<(Vec<f64>, f64)> = None;
    for _ in 0..cfg.restarts {
        let mut x: Vec<f64> = (0..2 * outcomes).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let Some(mut fx) = value(&x) else { continue };
        let mut step = cfg.initial_step;
        let mut iterations = 0;
        while step >= cfg.min_step && iterations < 200_000 {
            iterations += 1;
            let mut moved = false;
            'poll: for i in 0..x.len() {
                for sgn in [1.0, -1.0] {
                    x[i] += sgn * step;
                    match value(&x) {
                        Some(v) if v > fx => {
                            fx = v;
                            moved = true;
                            break 'poll;
                        }
                        _ => x[i] -= sgn * step,
                    }
                }
            }
            if !moved {
                step *= 0.5;
            }
        }
        if best.as_ref().is_none_or(|(_, b)| fx > *b) {
            best = Some((x, fx));
        }
    }
    let (x, v) = best.ok_or(Error::DegenerateAngles)?;
    Ok((normalized_kets(&x).ok_or(Error::DegenerateAngles)?, v))
}

/// Kets of a rank-1 POVM recovered from (merged) outcome matrices.
fn kets_of(outcomes: &[Mat2]) -> Rank1Povm {
    let kets = outcomes
        .iter()
        .map(|o| {
            let (vals, vecs) = o.sym_eigen();
            let r = vals[1].max(0.0).sqrt();
            [r * vecs[1][0], r * vecs[1][1]]
        })
        .collect();
    Rank1Povm { kets }
}

fn residuals(states: &DensityPair, povm: &Rank1Povm, out: &mut Vec<f64>, boundary: &mut usize) {
    let n = povm.kets.len();
    for k in 0..n {
        for l in k + 1..n {
            match stationarity_residual(states, povm, k, l) {
                Ok(r) => out.push(r.abs()),
                Err(_) => *boundary += 1,
            }
        }
    }
}

/// Run both optimizers on one pair and compare them.
pub fn verify_conjecture(states: &DensityPair, cfg: &OptimizerConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let (vn, vn_bits) = optimize_von_neumann_with(states, cfg.grid_points, cfg.theta_tol);
    let (trine, trine_bits) = optimize_trine_with(states, cfg)?;

    let merged = merge_outcomes_with(&trine.to_povm().outcomes, cfg.collapse_tol, cfg.von_neumann_tol);
    let collapsed = merged.len() <= 2;
    let merged_is_von_neumann = is_von_neumann(&Povm { outcomes: merged.clone() }, cfg.von_neumann_tol);

    let mut stationarity_residuals = Vec::new();
    let mut boundary_pairs = 0;
    residuals(states, &vn.to_rank1(), &mut stationarity_residuals, &mut boundary_pairs);
    residuals(states, &kets_of(&merged), &mut stationarity_residuals, &mut boundary_pairs);
    let max_residual = stationarity_residuals.iter().copied().fold(0.0, f64::max);

    Ok(VerificationReport {
        best_vn: BestVonNeumann { theta: vn.theta, bits: vn_bits },
        best_trine: BestTrine { angles: trine.angles, weights: trine.weights, bits: trine_bits },
        gap_bits: trine_bits - vn_bits,
        collapsed,
        merged_is_von_neumann,
        stationarity_residuals,
        max_residual,
        boundary_pairs,
        pure_state_pair: states.any_pure(TOL_PURE),
        seed: cfg.seed,
        restarts: cfg.restarts,
        tolerances: Tolerances {
            theta: cfg.theta_tol,
            min_step: cfg.min_step,
            gap: cfg.gap_tol,
            collapse: cfg.collapse_tol,
            von_neumann: cfg.von_neumann_tol,
        },
    })
}

/// Angular distance modulo the π/2 period of von Neumann bases.
pub fn basis_angle_distance(a: f64, b: f64) -> f64 {
    let d = wrap(a - b, FRAC_PI_2);
    d.min(FRAC_PI_2 - d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::binary_entropy;

    fn classical() -> DensityPair {
        DensityPair::new(Mat2::diag(0.5, 0.0), Mat2::diag(0.0, 0.5)).unwrap()
    }

    #[test]
    fn golden_section_finds_parabola_peak() {
        let (x, v) = golden_section_max(|t| -(t - 0.3) * (t - 0.3), -1.0, 2.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-7);
        assert!(v <= 0.0 && v > -1e-13);
    }

    #[test]
    fn trine_weights_solve_completeness() {
        let t = TrinePovmParam::from_angles([0.0, PI / 3.0, 2.0 * PI / 3.0]).unwrap();
        for w in t.weights {
            assert!((w - 2.0 / 3.0).abs() < 1e-15);
        }
        assert!(t.to_povm().completeness_residual() < 1e-15);
        // All three doubled angles in a half circle: no nonnegative solution.
        assert_eq!(TrinePovmParam::from_angles([0.0, 0.2, 0.4]), Err(Error::DegenerateAngles));
        assert_eq!(TrinePovmParam::from_angles([0.3, 0.3, 1.0]), Err(Error::DegenerateAngles));
    }

    #[test]
    fn orthogonal_pure_states() {
        let (vn, bits) = optimize_von_neumann(&classical());
        assert_eq!(vn.theta, 0.0);
        assert_eq!(bits, 1.0);
        let report = verify_conjecture(&classical(), &OptimizerConfig { restarts: 4, ..Default::default() }).unwrap();
        assert!((report.best_trine.bits - 1.0).abs() < 1e-12);
        assert!(report.gap_bits.abs() <= 1e-9);
        assert!(report.collapsed);
        assert!(report.merged_is_von_neumann);
        assert!(report.max_residual <= 1e-9);
    }

    #[test]
    fn identical_states() {
        let s = DensityPair::new(Mat2::sym(0.3, 0.1, 0.2), Mat2::sym(0.3, 0.1, 0.2)).unwrap();
        let (vn, bits) = optimize_von_neumann(&s);
        assert_eq!(vn.theta, 0.0);
        assert!(bits.abs() < 1e-15);
        let (_, trine_bits) = optimize_trine(&s, 3, 7).unwrap();
        assert!(trine_bits.abs() < 1e-15);
    }

    #[test]
    fn pure_pair_matches_closed_form() {
        let gamma = PI / 8.0;
        let states = crate::sampling::pure_pair(0.5, gamma, 0.0);
        let c = gamma.cos();
        let closed = 1.0 - binary_entropy((1.0 + (1.0 - c * c).sqrt()) / 2.0);
        let (_, bits) = optimize_von_neumann(&states);
        assert!((bits - closed).abs() < 1e-9, "{bits} vs {closed}");
    }

    #[test]
    fn four_outcome_stress_mode_does_not_beat_orthogonal() {
        let states = DensityPair::new(Mat2::sym(0.3, 0.05, 0.2), Mat2::sym(0.25, -0.1, 0.25)).unwrap();
        let (_, vn_bits) = optimize_von_neumann(&states);
        let cfg = OptimizerConfig { restarts: 4, seed: 3, ..Default::default() };
        let (povm, bits) = optimize_rank1(&states, 4, &cfg).unwrap();
        assert!(povm.to_povm().completeness_residual() < 1e-12);
        assert!(bits <= vn_bits + 1e-6);
    }

    #[test]
    fn stress_mode_respects_the_prior_entropy_ceiling() {
        let states = DensityPair::new(Mat2::diag(0.5, 0.0), Mat2::diag(0.0, 0.5)).unwrap();
        let (povm, bits) = optimize_rank1(&states, 4, &OptimizerConfig::default()).unwrap();
        assert!(povm.to_povm().completeness_residual() < 1e-14);
        assert!(bits <= 1.0 + 1e-14, "{bits}");
    }

    #[test]
    fn completion_repairs_near_singular_frames() {
        let us = [[1e-6, 1.0], [0.3, 1e-6], [0.4, -2e-6], [0.9, 1e-6]];
        let p = complete(&us).unwrap();
        assert!((frame(&p.kets) - Mat2::IDENTITY).max_abs() <= 1e-14);
        assert!(complete(&[[1.0, 0.0], [2.0, 0.0]]).is_none());
    }
}
