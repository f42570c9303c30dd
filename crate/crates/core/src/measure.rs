//! Measurements and the information they extract.

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::optimizer::{self, OptimizerConfig, VerificationReport};
use crate::qstate::{DensityPair, TOL_PSD};

pub const TOL_COMPLETE: f64 = 1e-9;
pub const TOL_MERGE: f64 = 1e-8;

/// General POVM with real symmetric outcomes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Povm {
    pub outcomes: Vec<Mat2>,
}

/// Rank-1 POVM `Π_j = |j⟩⟨j|` given by (possibly sub-normalized) kets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rank1Povm {
    pub kets: Vec<[f64; 2]>,
}

/// `p_rj = tr(ρ_r Π_j)` together with its marginals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointDistribution {
    /// `p[r][j]`.
    pub p: [Vec<f64>; 2],
    pub row_marginals: [f64; 2],
    pub column_marginals: Vec<f64>,
}

impl Povm {
    pub fn new(outcomes: Vec<Mat2>) -> Result<Self> {
        let povm = Povm { outcomes };
        povm.validate()?;
        Ok(povm)
    }

    pub fn validate(&self) -> Result<()> {
        if self.outcomes.is_empty() {
            return Err(Error::InvalidPovm("no outcomes".into()));
        }
        for (j, o) in self.outcomes.iter().enumerate() {
            if o.symmetry_residual() > TOL_PSD {
                return Err(Error::InvalidPovm(format!("outcome {j} is not symmetric")));
            }
            let lo = o.sym_eigenvalues()[0];
            if lo < -TOL_PSD {
                return Err(Error::InvalidPovm(format!("outcome {j} is not PSD (eigenvalue {lo})")));
            }
        }
        let residual = self.completeness_residual();
        if residual > TOL_COMPLETE {
            return Err(Error::InvalidPovm(format!(
                "outcomes do not sum to the identity (residual {residual:e})"
            )));
        }
        Ok(())
    }

    /// Largest entry of `|Σ_j Π_j − I|`.
    pub fn completeness_residual(&self) -> f64 {
        let sum = self.outcomes.iter().fold(Mat2::ZERO, |acc, o| acc + *o);
        (sum - Mat2::IDENTITY).max_abs()
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    /// Projective measurement in the basis `(cos θ, sin θ), (−sin θ, cos θ)`.
    pub fn von_neumann(theta: f64) -> Self {
        Rank1Povm::von_neumann(theta).to_povm()
    }

    pub fn rotated(&self, r: &Mat2) -> Self {
        Povm { outcomes: self.outcomes.iter().map(|o| o.conjugate_by(r)).collect() }
    }
}

impl Rank1Povm {
    pub fn new(kets: Vec<[f64; 2]>) -> Result<Self> {
        let p = Rank1Povm { kets };
        p.to_povm().validate()?;
        Ok(p)
    }

    pub fn von_neumann(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Rank1Povm { kets: alloc::vec![[c, s], [-s, c]] }
    }

    pub fn to_povm(&self) -> Povm {
        Povm { outcomes: self.kets.iter().map(|k| Mat2::outer(*k)).collect() }
    }

    /// Indices of kets that are exactly zero.
    pub fn null_outcomes(&self) -> Vec<usize> {
        self.kets
            .iter()
            .enumerate()
            .filter(|(_, k)| k[0] == 0.0 && k[1] == 0.0)
            .map(|(j, _)| j)
            .collect()
    }
}

/// Joint distribution of letters and outcomes; entries clamped to `[0, 1]`.
pub fn joint_distribution(states: &DensityPair, povm: &Povm) -> JointDistribution {
    let mut p = [Vec::with_capacity(povm.len()), Vec::with_capacity(povm.len())];
    for (r, rho) in states.states().into_iter().enumerate() {
        for o in &povm.outcomes {
            let v = (*rho * *o).trace();
            p[r].push(v.clamp(0.0, 1.0));
        }
    }
    JointDistribution::from_probabilities(p)
}

impl JointDistribution {
    pub fn from_probabilities(p: [Vec<f64>; 2]) -> Self {
        let row_marginals = [p[0].iter().sum(), p[1].iter().sum()];
        let column_marginals = p[0].iter().zip(&p[1]).map(|(a, b)| a + b).collect();
        JointDistribution { p, row_marginals, column_marginals }
    }

    pub fn outcomes(&self) -> usize {
        self.column_marginals.len()
    }
}

fn entropy_bits(ps: impl IntoIterator<Item = f64>) -> f64 {
    ps.into_iter().filter(|&p| p > 0.0).map(|p| -p * p.log2()).sum()
}

/// Binary entropy in bits.
pub fn binary_entropy(p: f64) -> f64 {
    entropy_bits([p, 1.0 - p])
}

/// `I = Σ p_rj log₂(p_rj / (p_r· p_·j))` in bits, clamped at zero.
pub fn mutual_information(jd: &JointDistribution) -> f64 {
    let mut total = 0.0;
    for r in 0..2 {
        let pr = jd.row_marginals[r];
        for (j, &prj) in jd.p[r].iter().enumerate() {
            let pj = jd.column_marginals[j];
            if prj > 0.0 && pr > 0.0 && pj > 0.0 {
                total += prj * (prj / (pr * pj)).ln();
            }
        }
    }
    (total / core::f64::consts::LN_2).max(0.0)
}

/// Shannon entropy of the letter priors, in bits.
pub fn prior_entropy(states: &DensityPair) -> f64 {
    entropy_bits(states.priors())
}

pub fn mutual_information_of(states: &DensityPair, povm: &Povm) -> f64 {
    mutual_information(&joint_distribution(states, povm))
}

/// Accessible information summary for a pair: best von Neumann and best
/// three-outcome value with the gap between them.
pub fn accessible_information_report(states: &DensityPair) -> Result<VerificationReport> {
    optimizer::verify_conjecture(states, &OptimizerConfig::default())
}

fn proportional(a: &Mat2, b: &Mat2, tol: f64) -> bool {
    let (na, nb) = (a.max_abs(), b.max_abs());
    (b.scale(na) - a.scale(nb)).max_abs() <= tol * (na + nb)
}

/// Drop outcomes with trace `≤ tol` and sum outcomes that are proportional.
pub fn merge_outcomes(outcomes: &[Mat2], tol: f64) -> Vec<Mat2> {
    merge_outcomes_with(outcomes, tol, tol)
}

/// [`merge_outcomes`] with separate thresholds for null outcomes and for
/// proportionality.
pub fn merge_outcomes_with(outcomes: &[Mat2], null_tol: f64, proportional_tol: f64) -> Vec<Mat2> {
    let mut merged: Vec<Mat2> = Vec::new();
    for o in outcomes.iter().filter(|o| o.trace() > null_tol) {
        match merged.iter_mut().find(|m| proportional(m, o, proportional_tol)) {
            Some(m) => *m = *m + *o,
            None => merged.push(*o),
        }
    }
    merged
}

/// Whether the POVM is effectively an orthogonal measurement: after merging,
/// exactly two outcomes remain, both unit-trace projectors, mutually
/// orthogonal.
pub fn is_von_neumann(povm: &Povm, tol: f64) -> bool {
    let merged = merge_outcomes(&povm.outcomes, tol);
    if merged.len() != 2 {
        return false;
    }
    for (k, a) in merged.iter().enumerate() {
        if (a.trace() - 1.0).abs() > tol {
            return false;
        }
        for (l, b) in merged.iter().enumerate() {
            let expect = if k == l { *a } else { Mat2::ZERO };
            if (*b * *a - expect).max_abs() > tol {
                return false;
            }
        }
    }
    true
}
