//! Real-root isolation by bisection between critical points.
//!
//! Between consecutive real roots of `p′` the polynomial is monotone, so each
//! such interval holds at most one root and a sign change brackets it. This
//! is the float counter behind the Sturm fallback and the independent check
//! on Sturm counts.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{Endpoint, ExactPolynomial, Polynomial, Scalar, SturmSequence};

/// Cauchy bound: every real root lies in `(−B, B)`.
pub fn root_bound(p: &Polynomial<f64>) -> f64 {
    let Some(deg) = p.degree() else { return 1.0 };
    let lead = p.coeffs()[deg].abs();
    1.0 + p.coeffs()[..deg].iter().fold(0.0, |acc: f64, c| acc.max(c.abs() / lead))
}

fn bisect(p: &Polynomial<f64>, mut lo: f64, mut hi: f64, sign_lo: i8) -> f64 {
    for _ in 0..2200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = p.eval(&mid).sign();
        if s == 0 {
            return mid;
        }
        if s == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Distinct real roots of `p`, ascending. Empty for constants and the zero
/// polynomial.
pub fn real_roots(p: &Polynomial<f64>) -> Vec<f64> {
    let Some(deg) = p.degree() else { return Vec::new() };
    match deg {
        0 => Vec::new(),
        1 => alloc::vec![-p.coeffs()[0] / p.coeffs()[1]],
        _ => {
            let bound = root_bound(p);
            let mut knots = alloc::vec![-bound];
            knots.extend(real_roots(&p.derivative()).into_iter().filter(|c| c.abs() < bound));
            knots.push(bound);

            let mut roots = Vec::new();
            for &k in &knots {
                if p.eval(&k) == 0.0 {
                    roots.push(k);
                }
            }
            for w in knots.windows(2) {
                let (su, sv) = (p.eval(&w[0]).sign(), p.eval(&w[1]).sign());
                if su != 0 && sv != 0 && su != sv {
                    roots.push(bisect(p, w[0], w[1], su));
                }
            }
            roots.sort_by(|a, b| a.total_cmp(b));
            roots.dedup();
            roots
        }
    }
}

/// Distinct real roots in `(a, b]` located by [`real_roots`].
pub fn bisection_count(p: &Polynomial<f64>, a: &Endpoint<f64>, b: &Endpoint<f64>) -> usize {
    let above = |x: f64| match a {
        Endpoint::NegInf => true,
        Endpoint::PosInf => false,
        Endpoint::At(lo) => x > *lo,
    };
    let below = |x: f64| match b {
        Endpoint::NegInf => false,
        Endpoint::PosInf => true,
        Endpoint::At(hi) => x <= *hi,
    };
    real_roots(p).into_iter().filter(|&x| above(x) && below(x)).count()
}

/// Distinct real roots of an exact polynomial, isolated with its Sturm
/// sequence and refined by exact bisection until the bracket is narrower
/// than `2⁻⁶⁰` relative; returned as floats.
pub fn real_roots_exact(p: &ExactPolynomial) -> Vec<f64> {
    let Ok(seq) = SturmSequence::new(p) else { return Vec::new() };
    let Some(deg) = p.degree() else { return Vec::new() };
    let lead = p.coeffs()[deg].abs();
    let bound = p.coeffs()[..deg]
        .iter()
        .fold(BigRational::one(), |acc, c| acc + c.abs() / lead.clone());

    let two = BigRational::from_integer(BigInt::from(2));
    let eps = BigRational::new(BigInt::one(), BigInt::one() << 60u32);
    let at = |x: &BigRational| Endpoint::At(x.clone());

    let mut roots = Vec::new();
    let mut stack = alloc::vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let n = seq.count(&at(&lo), &at(&hi));
        if n == 0 {
            continue;
        }
        let width = hi.clone() - lo.clone();
        let scale = BigRational::one().max(lo.abs().max(hi.abs()));
        if n == 1 && width <= eps.clone() * scale {
            roots.push(((lo + hi) / two.clone()).to_f64());
            continue;
        }
        let mid = (lo.clone() + hi.clone()) / two.clone();
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    roots.dedup();
    roots
}

/// Real roots of `float`, accepted when a floating-point Sturm count agrees
/// with them. Otherwise the exact polynomial from `exact` decides: its Sturm
/// count confirms the float roots or its isolation replaces them.
pub fn checked_real_roots(float: &Polynomial<f64>, exact: impl FnOnce() -> ExactPolynomial) -> Vec<f64> {
    let roots = real_roots(float);
    if let Ok(seq) = SturmSequence::new(float) {
        if seq.count(&Endpoint::NegInf, &Endpoint::PosInf) == roots.len() {
            return roots;
        }
    }
    let exact = exact();
    let Ok(seq) = SturmSequence::new(&exact) else { return roots };
    if seq.count(&Endpoint::NegInf, &Endpoint::PosInf) == roots.len() {
        roots
    } else {
        real_roots_exact(&exact)
    }
}
