use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

/// Coefficient field for [`super::Polynomial`].
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// Arithmetic is exact (no rounding).
    const EXACT: bool;

    /// Exact for rationals, identity for floats. Non-finite input panics for
    /// exact scalars.
    fn from_f64(x: f64) -> Self;

    fn from_usize(n: usize) -> Self;

    fn to_f64(&self) -> f64;

    fn abs_val(&self) -> Self;

    /// `-1`, `0` or `1`.
    fn sign(&self) -> i8;

    /// Zero for exact scalars; `|x| ≤ tol` for floats.
    fn is_negligible(&self, tol: f64) -> bool;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_f64(x: f64) -> Self {
        x
    }

    fn from_usize(n: usize) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs_val(&self) -> Self {
        Float::abs(*self)
    }

    fn sign(&self) -> i8 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }

    fn is_negligible(&self, tol: f64) -> bool {
        Float::abs(*self) <= tol
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).expect("finite coefficient")
    }

    fn from_usize(n: usize) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs_val(&self) -> Self {
        Signed::abs(self)
    }

    fn sign(&self) -> i8 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
}
