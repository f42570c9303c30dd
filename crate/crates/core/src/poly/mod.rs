//! Dense univariate polynomials over `f64` or exact rationals, with Sturm
//! root counting, Sylvester-matrix discriminants and the sign certificate
//! for the discriminant of the sextic `P`.

mod cert;
mod discriminant;
mod roots;
mod scalar;
mod sturm;

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

pub use cert::{
    canonical_p, certify_domain, certify_point, closed_form_discriminant, fit_p2_coefficients, oracle_discriminant,
    summarize, y_coefficients, CertificateSummary, DiscriminantCertificate, GridSpec, P2Fit, Verdict,
    DELTA_CONVENTION, TOL_FIT, TOL_RATIO,
};
pub use discriminant::{
    determinant, determinant_bareiss, discriminant, discriminant_exact, discriminant_integer, resultant, Discriminant, ILL_CONDITIONED,
};
pub use roots::{bisection_count, checked_real_roots, real_roots, real_roots_exact, root_bound};
pub use scalar::Scalar;
pub use sturm::{sturm_count, Endpoint, SturmSequence};

/// Relative threshold below which a floating-point leading coefficient is
/// treated as zero.
pub const TOL_LEAD: f64 = 1e-12;

/// Dense polynomial, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial<T = f64> {
    coeffs: Vec<T>,
}

pub type ExactPolynomial = Polynomial<BigRational>;

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        trim(&mut coeffs);
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `t`.
    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    pub fn from_f64_slice(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_f64(c)).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Coefficient of `t^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * T::from_usize(k))
            .collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// `p(σt + τ)`.
    pub fn compose_affine(&self, sigma: &T, tau: &T) -> Self {
        let lin = Self::new(vec![tau.clone(), sigma.clone()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &lin) + &Self::constant(c.clone()))
    }

    /// Euclidean division over the coefficient field.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd].clone() / lead.clone();
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - q.clone() * d.clone();
            }
            rem[k + dd] = T::zero();
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, c| acc.max(c.to_f64().abs()))
    }

    pub fn to_f64(&self) -> Polynomial<f64> {
        Polynomial::new(self.coeffs.iter().map(|c| c.to_f64()).collect())
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.to_f64().eval(&x)
    }
}

impl Polynomial<f64> {
    /// Exact rational image of the (dyadic) float coefficients.
    pub fn to_exact(&self) -> ExactPolynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| BigRational::from_f64(c)).collect())
    }
}

fn trim<T: Scalar>(coeffs: &mut Vec<T>) {
    let scale = coeffs.iter().fold(0.0, |acc: f64, c| acc.max(c.to_f64().abs()));
    while let Some(last) = coeffs.last() {
        if last.is_negligible(scale * TOL_LEAD) {
            coeffs.pop();
        } else {
            break;
        }
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, o: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, o: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, o: &Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}
