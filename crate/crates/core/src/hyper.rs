//! Pochhammer symbols and terminating hypergeometric series.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn pochhammer<T: Scalar>(a: &T, n: usize) -> T {
    (0..n).fold(T::one(), |acc, k| acc * (a.clone() + T::from_usize(k)))
}

/// A `pFq` series truncated by the numerator parameter `-n`.
///
/// The `-n` parameter is inserted by the constructor, so the series is a
/// polynomial of degree at most `n` in its argument.
#[derive(Clone, Debug, PartialEq)]
pub struct HypSeries<T> {
    upper: Vec<T>,
    lower: Vec<T>,
    n: usize,
}

impl<T: Scalar> HypSeries<T> {
    /// `{}_{p+1}F_q(-n, upper; lower; .)`.
    ///
    /// Fails when a lower parameter lies in `{0, -1, ..., -(n-1)}`.
    pub fn terminating(n: usize, upper: Vec<T>, lower: Vec<T>) -> Result<Self> {
        for (i, b) in lower.iter().enumerate() {
            for k in 0..n {
                if (b.clone() + T::from_usize(k)).is_zero() {
                    return Err(Error::degenerate(
                        n,
                        format!("lower parameter #{i} = {b:?} makes ({b:?})_{} vanish", k + 1),
                    ));
                }
            }
        }
        let mut all_upper = Vec::with_capacity(upper.len() + 1);
        all_upper.push(-T::from_usize(n));
        all_upper.extend(upper);
        Ok(HypSeries {
            upper: all_upper,
            lower,
            n,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn upper(&self) -> &[T] {
        &self.upper
    }

    pub fn lower(&self) -> &[T] {
        &self.lower
    }

    /// Term coefficients `c_k = prod (a_i)_k / prod (b_j)_k / k!` for `k = 0..=n`.
    ///
    /// Accumulated by term ratios rather than separate Pochhammer products.
    pub fn term_coefficients(&self) -> Vec<T> {
        let mut terms = Vec::with_capacity(self.n + 1);
        let mut term = T::one();
        terms.push(term.clone());
        for k in 0..self.n {
            let kk = T::from_usize(k);
            let num = self
                .upper
                .iter()
                .fold(T::one(), |acc, a| acc * (a.clone() + kk.clone()));
            let den = self
                .lower
                .iter()
                .fold(T::from_usize(k + 1), |acc, b| acc * (b.clone() + kk.clone()));
            term = term * num / den;
            terms.push(term.clone());
        }
        terms
    }

    /// The series as a polynomial in its argument.
    pub fn as_polynomial(&self) -> Polynomial<T> {
        Polynomial::new(self.term_coefficients())
    }

    pub fn eval(&self, z: &T) -> T {
        self.as_polynomial().eval(z)
    }

    /// Substitutes a polynomial argument.
    pub fn eval_poly(&self, z: &Polynomial<T>) -> Polynomial<T> {
        self.as_polynomial().compose(z)
    }
}
