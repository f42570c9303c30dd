//! Signal states of a two-letter qubit alphabet.
//!
//! States are unnormalized: the trace of each density matrix is the prior
//! probability of its letter, so the two traces sum to one.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMat2, Mat2};

pub const TOL_PSD: f64 = 1e-10;
pub const TOL_HERM: f64 = 1e-10;
pub const TOL_NORM: f64 = 1e-9;
pub const TOL_PURE: f64 = 1e-10;

/// Two real symmetric PSD matrices whose traces are the letter priors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityPair {
    pub rho1: Mat2,
    pub rho2: Mat2,
}

/// Raw complex input, prior to real-basis canonicalization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexDensityPair {
    pub rho1: CMat2,
    pub rho2: CMat2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViolationKind {
    NotHermitian,
    NotPsd,
    NonPositiveTrace,
    TraceSum,
}

/// One violated invariant and how badly it is violated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    /// 1 or 2, or `None` for pair-level invariants.
    pub state: Option<usize>,
    pub kind: ViolationKind,
    /// Measured quantity: asymmetry, smallest eigenvalue, trace, or trace sum.
    pub residual: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let who = match self.state {
            Some(r) => format!("rho{r}"),
            None => "rho1 + rho2".into(),
        };
        match self.kind {
            ViolationKind::NotHermitian => {
                write!(f, "{who} is not Hermitian (residual {:e})", self.residual)
            }
            ViolationKind::NotPsd => {
                write!(f, "{who} is not PSD (eigenvalue {})", self.residual)
            }
            ViolationKind::NonPositiveTrace => {
                write!(f, "{who} has non-positive trace {}", self.residual)
            }
            ViolationKind::TraceSum => {
                write!(f, "traces of {who} sum to {} != 1", self.residual)
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationResult {
    pub violations: Vec<Violation>,
}

impl ValidationResult {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_ok() {
            return Ok(());
        }
        let msg: Vec<_> = self.violations.iter().map(|v| format!("{v}")).collect();
        Err(Error::InvalidStates(msg.join("; ")))
    }
}

fn check_matrix(state: usize, m: &CMat2, out: &mut Vec<Violation>) {
    let herm = m.hermiticity_residual();
    if herm > TOL_HERM {
        out.push(Violation { state: Some(state), kind: ViolationKind::NotHermitian, residual: herm });
    }
    let lo = m.herm_eigenvalues()[0];
    if lo < -TOL_PSD {
        out.push(Violation { state: Some(state), kind: ViolationKind::NotPsd, residual: lo });
    }
    let tr = m.trace().re;
    if tr <= 0.0 {
        out.push(Violation {
            state: Some(state),
            kind: ViolationKind::NonPositiveTrace,
            residual: tr,
        });
    }
}

/// Check every [`ComplexDensityPair`] invariant, collecting all violations.
pub fn validate_pair(p: &ComplexDensityPair) -> ValidationResult {
    let mut violations = Vec::new();
    check_matrix(1, &p.rho1, &mut violations);
    check_matrix(2, &p.rho2, &mut violations);
    let sum = p.rho1.trace().re + p.rho2.trace().re;
    if (sum - 1.0).abs() > TOL_NORM {
        violations.push(Violation { state: None, kind: ViolationKind::TraceSum, residual: sum });
    }
    ValidationResult { violations }
}

/// Rank-1 test: `det(ρ) ≤ tol · tr(ρ)²`.
pub fn is_pure(rho: &Mat2, tol: f64) -> bool {
    let tr = rho.trace();
    rho.det() <= tol * tr * tr
}

fn clamp_psd(m: Mat2) -> Mat2 {
    let (vals, vecs) = m.sym_eigen();
    if vals[0] >= 0.0 {
        return m;
    }
    // Only the larger eigenvalue survives.
    Mat2::outer(vecs[1]).scale(vals[1])
}

impl DensityPair {
    /// Validated construction; small negative eigenvalues are clamped to zero.
    pub fn new(rho1: Mat2, rho2: Mat2) -> Result<Self> {
        let raw = ComplexDensityPair { rho1: CMat2::from_real(&rho1), rho2: CMat2::from_real(&rho2) };
        validate_pair(&raw).into_result()?;
        let sym = |m: Mat2| {
            let b = 0.5 * (m.0[0][1] + m.0[1][0]);
            Mat2::sym(m.0[0][0], b, m.0[1][1])
        };
        Ok(DensityPair { rho1: clamp_psd(sym(rho1)), rho2: clamp_psd(sym(rho2)) })
    }

    /// Unchecked construction for callers that already hold valid matrices.
    pub const fn new_unchecked(rho1: Mat2, rho2: Mat2) -> Self {
        DensityPair { rho1, rho2 }
    }

    pub fn state(&self, r: usize) -> &Mat2 {
        match r {
            0 => &self.rho1,
            _ => &self.rho2,
        }
    }

    pub fn states(&self) -> [&Mat2; 2] {
        [&self.rho1, &self.rho2]
    }

    pub fn priors(&self) -> [f64; 2] {
        [self.rho1.trace(), self.rho2.trace()]
    }

    /// Both states conjugated by the same real orthogonal `r`.
    pub fn rotated(&self, r: &Mat2) -> Self {
        DensityPair { rho1: self.rho1.conjugate_by(r), rho2: self.rho2.conjugate_by(r) }
    }

    pub fn any_pure(&self, tol: f64) -> bool {
        is_pure(&self.rho1, tol) || is_pure(&self.rho2, tol)
    }
}

impl ComplexDensityPair {
    pub fn from_real(p: &DensityPair) -> Self {
        ComplexDensityPair { rho1: CMat2::from_real(&p.rho1), rho2: CMat2::from_real(&p.rho2) }
    }
}

fn is_scalar(m: &CMat2) -> bool {
    let v = m.herm_eigenvalues();
    v[1] - v[0] <= TOL_HERM
}

fn real_symmetric(m: &CMat2) -> Mat2 {
    let r = m.real_part();
    Mat2::sym(r.0[0][0], 0.5 * (r.0[0][1] + r.0[1][0]), r.0[1][1])
}

/// Bring a pair into a common basis where both matrices are real, with the
/// off-diagonal of `rho2` nonnegative. Also returns the unitary `U` with
/// `ρ'_r = U ρ_r U†`; a POVM maps the same way.
///
/// Already-real pairs only receive the sign flip. Otherwise `rho1` is
/// diagonalized (left alone when already diagonal, and `rho2` is
/// diagonalized instead when `rho1 ∝ I`), and a diagonal phase makes the
/// off-diagonal of `rho2` real.
pub fn to_real_basis_with_unitary(p: &ComplexDensityPair) -> (DensityPair, CMat2) {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);

    let mut u = CMat2::identity();
    let already_real = p.rho1.max_imag() <= TOL_HERM && p.rho2.max_imag() <= TOL_HERM;
    if !already_real {
        let r1_diag = p.rho1.0[0][1].norm() <= TOL_HERM && p.rho1.0[1][0].norm() <= TOL_HERM;
        if !r1_diag {
            if !is_scalar(&p.rho1) {
                u = p.rho1.herm_eigenvectors().adjoint();
            } else if !is_scalar(&p.rho2) {
                u = p.rho2.herm_eigenvectors().adjoint();
            }
        }
        let z = p.rho2.conjugate_by(&u).0[0][1];
        if z.norm() > 0.0 {
            let ph = z / z.norm();
            let d = CMat2([[one, zero], [zero, ph]]);
            u = d.mul(&u);
        }
    }

    let mut out = DensityPair {
        rho1: real_symmetric(&p.rho1.conjugate_by(&u)),
        rho2: real_symmetric(&p.rho2.conjugate_by(&u)),
    };
    if out.rho2.0[0][1] < 0.0 {
        let flip = Mat2::diag(1.0, -1.0);
        out = out.rotated(&flip);
        u = CMat2::from_real(&flip).mul(&u);
    }
    (out, u)
}

/// Real-basis representative of a valid complex pair; see
/// [`to_real_basis_with_unitary`].
pub fn to_real_basis(p: &ComplexDensityPair) -> Result<DensityPair> {
    validate_pair(p).into_result()?;
    Ok(to_real_basis_with_unitary(p).0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cpair(a: Mat2, b: Mat2) -> ComplexDensityPair {
        ComplexDensityPair { rho1: CMat2::from_real(&a), rho2: CMat2::from_real(&b) }
    }

    #[test]
    fn classical_pair_is_valid() {
        let p = cpair(Mat2::diag(0.5, 0.0), Mat2::diag(0.0, 0.5));
        assert!(validate_pair(&p).is_ok());
    }

    #[test]
    fn negative_eigenvalue_is_reported() {
        let p = cpair(Mat2::diag(0.6, -0.1), Mat2::diag(0.25, 0.25));
        let v = validate_pair(&p);
        assert_eq!(v.violations.len(), 1);
        assert_eq!(v.violations[0].kind, ViolationKind::NotPsd);
        assert_eq!(v.violations[0].state, Some(1));
        assert!((v.violations[0].residual + 0.1).abs() < 1e-15);
    }

    #[test]
    fn trace_sum_is_reported() {
        let p = cpair(Mat2::diag(0.25, 0.25), Mat2::diag(0.375, 0.375));
        let v = validate_pair(&p);
        assert_eq!(v.violations.len(), 1);
        assert_eq!(v.violations[0].kind, ViolationKind::TraceSum);
        assert!((v.violations[0].residual - 1.25).abs() < 1e-15);
    }

    #[test]
    fn non_hermitian_is_reported() {
        let mut p = cpair(Mat2::diag(0.25, 0.25), Mat2::diag(0.25, 0.25));
        p.rho2.0[0][1] = c(0.1, 0.0);
        let v = validate_pair(&p);
        assert!(v.violations.iter().any(|v| v.kind == ViolationKind::NotHermitian));
    }

    #[test]
    fn purity_examples() {
        assert!(is_pure(&Mat2::diag(0.5, 0.0), TOL_PURE));
        assert!(!is_pure(&Mat2::diag(0.25, 0.25), TOL_PURE));
        assert!(is_pure(&Mat2::sym(0.25, 0.25, 0.25), TOL_PURE));
    }

    #[test]
    fn real_pair_only_gets_sign_convention() {
        let a = Mat2::sym(0.3, 0.05, 0.2);
        let b = Mat2::sym(0.25, -0.1, 0.25);
        let out = to_real_basis(&cpair(a, b)).unwrap();
        assert_eq!(out.rho1, Mat2::sym(0.3, -0.05, 0.2));
        assert_eq!(out.rho2, Mat2::sym(0.25, 0.1, 0.25));

        let b = Mat2::sym(0.25, 0.1, 0.25);
        let out = to_real_basis(&cpair(a, b)).unwrap();
        assert_eq!(out, DensityPair { rho1: a, rho2: b });
    }

    #[test]
    fn imaginary_offdiagonal_is_phased_away() {
        let rho1 = CMat2::from_real(&Mat2::diag(0.4, 0.1));
        let rho2 = CMat2([[c(0.25, 0.0), c(0.0, 0.15)], [c(0.0, -0.15), c(0.25, 0.0)]]);
        let p = ComplexDensityPair { rho1, rho2 };
        let out = to_real_basis(&p).unwrap();
        assert_eq!(out.rho1, Mat2::diag(0.4, 0.1));
        assert!((out.rho2 - Mat2::sym(0.25, 0.15, 0.25)).max_abs() < 1e-16);

        // Oracle: explicit conjugation with diag(1, e^{iπ/2}).
        let d = CMat2([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 1.0)]]);
        let manual = rho2.conjugate_by(&d);
        assert!((manual.0[0][1] - c(0.15, 0.0)).norm() < 1e-16);
        let ev_in = rho2.herm_eigenvalues();
        let ev_out = out.rho2.sym_eigenvalues();
        assert!((ev_in[0] - ev_out[0]).abs() < 1e-15 && (ev_in[1] - ev_out[1]).abs() < 1e-15);
    }

    #[test]
    fn isotropic_pair_unchanged() {
        let q = Mat2::diag(0.25, 0.25);
        let out = to_real_basis(&cpair(q, q)).unwrap();
        assert_eq!(out, DensityPair { rho1: q, rho2: q });
    }

    #[test]
    fn scalar_rho1_falls_back_to_rho2() {
        let rho1 = CMat2::from_real(&Mat2::diag(0.25, 0.25));
        let rho2 = CMat2([[c(0.3, 0.0), c(0.05, 0.1)], [c(0.05, -0.1), c(0.2, 0.0)]]);
        let out = to_real_basis(&ComplexDensityPair { rho1, rho2 }).unwrap();
        assert!((out.rho1 - Mat2::diag(0.25, 0.25)).max_abs() < 1e-15);
        assert!(out.rho2.0[0][1] >= 0.0);
        let ev_in = rho2.herm_eigenvalues();
        let ev_out = out.rho2.sym_eigenvalues();
        assert!((ev_in[0] - ev_out[0]).abs() < 1e-15 && (ev_in[1] - ev_out[1]).abs() < 1e-15);
    }

    #[test]
    fn new_clamps_tiny_negative_eigenvalues() {
        let p = DensityPair::new(Mat2::diag(0.5, -1e-12), Mat2::diag(0.0, 0.5)).unwrap();
        assert!(p.rho1.sym_eigenvalues()[0] >= 0.0);
        assert!(DensityPair::new(Mat2::diag(0.5, -1e-3), Mat2::diag(0.0, 0.501)).is_err());
    }
}
