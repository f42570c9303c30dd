use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{ExactPolynomial, Polynomial, Scalar};
use crate::error::{Error, Result};

/// Condition estimate above which a Sylvester determinant is flagged.
pub const ILL_CONDITIONED: f64 = 1e12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Discriminant<T = f64> {
    pub value: T,
    /// 1-norm condition estimate of the Sylvester matrix in floating point.
    pub condition: f64,
    pub ill_conditioned: bool,
}

/// Determinant by Gaussian elimination. Floats pivot on the largest entry;
/// exact scalars on the first nonzero one.
pub fn determinant<T: Scalar>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    let mut det = T::one();
    for col in 0..n {
        let pivot = if T::EXACT {
            (col..n).find(|&r| !m[r][col].is_zero())
        } else {
            (col..n)
                .filter(|&r| !m[r][col].is_zero())
                .max_by(|&a, &b| m[a][col].abs_val().partial_cmp(&m[b][col].abs_val()).unwrap())
        };
        let Some(pivot) = pivot else { return T::zero() };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / p.clone();
            for c in col..n {
                let v = m[col][c].clone() * factor.clone();
                m[r][c] = m[r][c].clone() - v;
            }
        }
        det = det * p;
    }
    det
}

fn sylvester<T: Scalar>(p: &Polynomial<T>, q: &Polynomial<T>) -> Vec<Vec<T>> {
    let (dp, dq) = (p.degree().unwrap_or(0), q.degree().unwrap_or(0));
    let n = dp + dq;
    let mut m = vec![vec![T::zero(); n]; n];
    for i in 0..dq {
        for (k, c) in p.coeffs().iter().rev().enumerate() {
            m[i][i + k] = c.clone();
        }
    }
    for i in 0..dp {
        for (k, c) in q.coeffs().iter().rev().enumerate() {
            m[dq + i][i + k] = c.clone();
        }
    }
    m
}

/// `Res(p, q)` as the determinant of the Sylvester matrix.
pub fn resultant<T: Scalar>(p: &Polynomial<T>, q: &Polynomial<T>) -> T {
    determinant(sylvester(p, q))
}

fn condition_estimate(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let norm1 = |a: &[Vec<f64>]| {
        (0..n).map(|c| a.iter().map(|row| row[c].abs()).sum::<f64>()).fold(0.0, f64::max)
    };
    // Gauss-Jordan inverse with partial pivoting.
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut inv: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x][col].abs().partial_cmp(&a[y][col].abs()).unwrap())
            .unwrap();
        if a[pivot][col] == 0.0 {
            return f64::INFINITY;
        }
        a.swap(pivot, col);
        inv.swap(pivot, col);
        let p = a[col][col];
        for c in 0..n {
            a[col][c] /= p;
            inv[col][c] /= p;
        }
        for r in 0..n {
            if r == col || a[r][col] == 0.0 {
                continue;
            }
            let f = a[r][col];
            for c in 0..n {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    norm1(m) * norm1(&inv)
}

/// `disc(p) = (−1)^{n(n−1)/2} Res(p, p′) / lead(p)`.
pub fn discriminant<T: Scalar>(p: &Polynomial<T>) -> Result<Discriminant<T>> {
    let deg = p.degree().unwrap_or(0);
    if deg < 2 {
        return Err(Error::DegreeTooLow { min: 2, got: deg });
    }
    let d = p.derivative();
    let syl = sylvester(p, &d);
    let fsyl: Vec<Vec<f64>> = syl.iter().map(|r| r.iter().map(Scalar::to_f64).collect()).collect();
    let condition = condition_estimate(&fsyl);
    let res = determinant(syl);
    let lead = p.leading().cloned().unwrap_or_else(T::one);
    let sign = if (deg * (deg - 1) / 2) % 2 == 1 { -T::one() } else { T::one() };
    Ok(Discriminant {
        value: sign * res / lead,
        condition,
        ill_conditioned: condition > ILL_CONDITIONED,
    })
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub fn determinant_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else { return BigInt::zero() };
            m.swap(r, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Exact discriminant over the rationals. The polynomial is cleared of
/// denominators and the Sylvester determinant taken over the integers, which
/// avoids rational normalization in the elimination.
pub fn discriminant_exact(p: &ExactPolynomial) -> Result<BigRational> {
    let denom = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let q: Vec<BigInt> = p.coeffs().iter().map(|c| (c * BigRational::from_integer(denom.clone())).to_integer()).collect();
    let d = discriminant_integer(&q)?;
    // disc(c·p) = c^{2n−2} disc(p).
    Ok(d / BigRational::from_integer(num_traits::pow(denom, 2 * q.len() - 4)))
}

/// Discriminant of an integer polynomial (ascending coefficients, nonzero
/// leading coefficient).
pub fn discriminant_integer(q: &[BigInt]) -> Result<BigRational> {
    let deg = q.len().saturating_sub(1);
    if deg < 2 {
        return Err(Error::DegreeTooLow { min: 2, got: deg });
    }
    let dq: Vec<BigInt> = q.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect();
    let n = 2 * deg - 1;
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for i in 0..deg - 1 {
        for (k, c) in q.iter().rev().enumerate() {
            m[i][i + k] = c.clone();
        }
    }
    for i in 0..deg {
        for (k, c) in dq.iter().rev().enumerate() {
            m[deg - 1 + i][i + k] = c.clone();
        }
    }
    let res = determinant_bareiss(m);
    let sign = if (deg * (deg - 1) / 2) % 2 == 1 { -BigInt::one() } else { BigInt::one() };
    Ok(BigRational::new(sign * res, q[deg].clone()))
}
