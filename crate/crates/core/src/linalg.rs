//! Fixed-size 2×2 real and complex matrices.

use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use serde::{Deserialize, Serialize};

/// Dense real 2×2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[0.0, 0.0], [0.0, 0.0]]);
    pub const IDENTITY: Mat2 = Mat2([[1.0, 0.0], [0.0, 1.0]]);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub const fn diag(a: f64, d: f64) -> Self {
        Mat2([[a, 0.0], [0.0, d]])
    }

    /// Symmetric matrix `[[a, b], [b, c]]`.
    pub const fn sym(a: f64, b: f64, c: f64) -> Self {
        Mat2([[a, b], [b, c]])
    }

    /// `v vᵀ`.
    pub fn outer(v: [f64; 2]) -> Self {
        Mat2([[v[0] * v[0], v[0] * v[1]], [v[1] * v[0], v[1] * v[1]]])
    }

    /// Counter-clockwise rotation by `angle`.
    pub fn rotation(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Mat2([[c, -s], [s, c]])
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> f64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn transpose(&self) -> Self {
        Mat2([[self.0[0][0], self.0[1][0]], [self.0[0][1], self.0[1][1]]])
    }

    pub fn scale(&self, s: f64) -> Self {
        let m = self.0;
        Mat2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    /// `uᵀ M v`.
    pub fn bilinear(&self, u: [f64; 2], v: [f64; 2]) -> f64 {
        let m = self.0;
        u[0] * (m[0][0] * v[0] + m[0][1] * v[1]) + u[1] * (m[1][0] * v[0] + m[1][1] * v[1])
    }

    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        let m = self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    /// `R M Rᵀ`.
    pub fn conjugate_by(&self, r: &Mat2) -> Self {
        *r * *self * r.transpose()
    }

    pub fn symmetry_residual(&self) -> f64 {
        (self.0[0][1] - self.0[1][0]).abs()
    }

    /// Eigenvalues of the symmetric part, ascending.
    pub fn sym_eigenvalues(&self) -> [f64; 2] {
        let m = self.0;
        let b = 0.5 * (m[0][1] + m[1][0]);
        let mean = 0.5 * (m[0][0] + m[1][1]);
        let half_diff = 0.5 * (m[0][0] - m[1][1]);
        let r = half_diff.hypot(b);
        [mean - r, mean + r]
    }

    /// Eigen-decomposition of the symmetric part: ascending eigenvalues and
    /// the matching unit eigenvectors.
    pub fn sym_eigen(&self) -> ([f64; 2], [[f64; 2]; 2]) {
        let m = self.0;
        let b = 0.5 * (m[0][1] + m[1][0]);
        // Angle of the eigenvector belonging to the larger eigenvalue.
        let phi = 0.5 * (2.0 * b).atan2(m[0][0] - m[1][1]);
        let (s, c) = phi.sin_cos();
        let vals = self.sym_eigenvalues();
        (vals, [[-s, c], [c, s]])
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + (-o)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        let mut out = [[0.0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }
}

/// Dense complex 2×2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CMat2(pub [[Complex64; 2]; 2]);

impl CMat2 {
    pub fn identity() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        CMat2([[o, z], [z, o]])
    }

    pub fn from_real(m: &Mat2) -> Self {
        let r = |x: f64| Complex64::new(x, 0.0);
        CMat2([[r(m.0[0][0]), r(m.0[0][1])], [r(m.0[1][0]), r(m.0[1][1])]])
    }

    pub fn adjoint(&self) -> Self {
        let m = self.0;
        CMat2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn mul(&self, o: &CMat2) -> Self {
        let (a, b) = (self.0, o.0);
        let z = Complex64::new(0.0, 0.0);
        let mut out = [[z; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        CMat2(out)
    }

    /// `U M U†`.
    pub fn conjugate_by(&self, u: &CMat2) -> Self {
        u.mul(self).mul(&u.adjoint())
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    /// Largest entry of `|M − M†|`.
    pub fn hermiticity_residual(&self) -> f64 {
        let m = self.0;
        let d0 = m[0][0].im.abs();
        let d1 = m[1][1].im.abs();
        let off = (m[0][1] - m[1][0].conj()).norm();
        d0.max(d1).max(off)
    }

    pub fn max_imag(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |acc, z| acc.max(z.im.abs()))
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn herm_eigenvalues(&self) -> [f64; 2] {
        let m = self.0;
        let a = m[0][0].re;
        let d = m[1][1].re;
        let b = 0.5 * (m[0][1] + m[1][0].conj());
        let mean = 0.5 * (a + d);
        let r = (0.5 * (a - d)).hypot(b.norm());
        [mean - r, mean + r]
    }

    /// Unitary whose columns are eigenvectors of the Hermitian part, the
    /// first column for the larger eigenvalue.
    pub fn herm_eigenvectors(&self) -> CMat2 {
        let m = self.0;
        let a = m[0][0].re;
        let d = m[1][1].re;
        let b = 0.5 * (m[0][1] + m[1][0].conj());
        let bn = b.norm();
        let phase = if bn > 0.0 { b / bn } else { Complex64::new(1.0, 0.0) };
        // Real rotation angle of the |b|-symmetric problem.
        let phi = 0.5 * (2.0 * bn).atan2(a - d);
        let (s, c) = phi.sin_cos();
        let c = Complex64::new(c, 0.0);
        let s = Complex64::new(s, 0.0);
        // Columns: (c, s·e^{-iφ_b}) and (−s, c·e^{-iφ_b}).
        let ph = phase.conj();
        CMat2([[c, -s], [s * ph, c * ph]])
    }

    pub fn real_part(&self) -> Mat2 {
        let m = self.0;
        Mat2([[m[0][0].re, m[0][1].re], [m[1][0].re, m[1][1].re]])
    }
}
