use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{roots, Polynomial, Scalar};
use crate::error::{Error, Result};

/// A remainder whose coefficients all fall below this fraction of its
/// predecessors' scale (without being exactly zero) makes a float sequence
/// unreliable.
const TOL_UNDERFLOW: f64 = 1e-10;

/// Interval endpoint for root counting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Endpoint<T> {
    NegInf,
    PosInf,
    At(T),
}

impl<T: Scalar> Endpoint<T> {
    fn as_f64(&self) -> f64 {
        match self {
            Endpoint::NegInf => f64::NEG_INFINITY,
            Endpoint::PosInf => f64::INFINITY,
            Endpoint::At(x) => x.to_f64(),
        }
    }
}

fn sign_at<T: Scalar>(p: &Polynomial<T>, at: &Endpoint<T>) -> i8 {
    let Some(deg) = p.degree() else { return 0 };
    let lead = p.leading().map(Scalar::sign).unwrap_or(0);
    match at {
        Endpoint::PosInf => lead,
        Endpoint::NegInf if deg % 2 == 1 => -lead,
        Endpoint::NegInf => lead,
        Endpoint::At(x) => p.eval(x).sign(),
    }
}

/// Sturm sequence `p, p′, −rem(p, p′), …`, each remainder rescaled by a
/// positive constant.
#[derive(Debug, Clone, PartialEq)]
pub struct SturmSequence<T = f64> {
    seq: Vec<Polynomial<T>>,
}

impl<T: Scalar> SturmSequence<T> {
    pub fn new(p: &Polynomial<T>) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut seq = alloc::vec![p.clone()];
        let d = p.derivative();
        if d.is_zero() {
            return Ok(SturmSequence { seq });
        }
        seq.push(normalized(&d));
        loop {
            let n = seq.len();
            let (_, rem) = seq[n - 2].div_rem(&seq[n - 1]);
            if rem.is_zero() {
                break;
            }
            if !T::EXACT {
                let scale = seq[n - 2].max_abs_coeff().max(seq[n - 1].max_abs_coeff());
                if rem.max_abs_coeff() <= TOL_UNDERFLOW * scale {
                    return Err(Error::DegenerateSequence { degree: rem.degree().unwrap_or(0) });
                }
            }
            seq.push(normalized(&-&rem));
        }
        Ok(SturmSequence { seq })
    }

    pub fn polynomials(&self) -> &[Polynomial<T>] {
        &self.seq
    }

    /// Sign changes of the sequence at `at`, zeros skipped.
    pub fn variations(&self, at: &Endpoint<T>) -> usize {
        let mut count = 0;
        let mut prev = 0i8;
        for p in &self.seq {
            let s = sign_at(p, at);
            if s == 0 {
                continue;
            }
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count(&self, a: &Endpoint<T>, b: &Endpoint<T>) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

fn normalized<T: Scalar>(p: &Polynomial<T>) -> Polynomial<T> {
    match p.leading() {
        Some(l) => p.scale(&(T::one() / l.abs_val())),
        None => p.clone(),
    }
}

/// Number of distinct real roots of `p` in `(a, b]`.
///
/// Exact for rational coefficients. A float sequence whose remainders
/// underflow falls back to [`roots::bisection_count`].
pub fn sturm_count<T: Scalar>(p: &Polynomial<T>, a: &Endpoint<T>, b: &Endpoint<T>) -> Result<usize> {
    let (fa, fb) = (a.as_f64(), b.as_f64());
    let ordered = match (a, b) {
        (Endpoint::At(x), Endpoint::At(y)) => x < y,
        (Endpoint::PosInf, _) | (_, Endpoint::NegInf) => false,
        _ => true,
    };
    if !ordered {
        return Err(Error::EmptyInterval { a: fa, b: fb });
    }
    match SturmSequence::new(p) {
        Ok(seq) => Ok(seq.count(a, b)),
        Err(Error::DegenerateSequence { .. }) => {
            let to_f = |e: &Endpoint<T>| match e {
                Endpoint::NegInf => Endpoint::NegInf,
                Endpoint::PosInf => Endpoint::PosInf,
                Endpoint::At(x) => Endpoint::At(x.to_f64()),
            };
            Ok(roots::bisection_count(&p.to_f64(), &to_f(a), &to_f(b)))
        }
        Err(e) => Err(e),
    }
}
