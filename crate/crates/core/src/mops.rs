//! Monic orthogonal polynomial sequences and their three-term recurrences.

use crate::error::{Error, Result};
use crate::functional::MomentFunctional;
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// A finite monic family `polys[n]` of degree `n`, optionally with recurrence data
/// `polys[n+1] = (x - beta[n]) polys[n] - gamma[n] polys[n-1]`.
///
/// `gamma[0]` is a zero placeholder so that `gamma[n]` lines up with the
/// recurrence index. Both lists are empty when no recurrence is attached.
#[derive(Clone, Debug, PartialEq)]
pub struct MonicOps<T> {
    pub polys: Vec<Polynomial<T>>,
    pub beta: Vec<T>,
    pub gamma: Vec<T>,
}

impl<T: Scalar> MonicOps<T> {
    /// Wraps a family without recurrence data. Fails unless `polys[n]` is monic of degree `n`.
    pub fn from_polys(polys: Vec<Polynomial<T>>) -> Result<Self> {
        check_monic_family(&polys)?;
        Ok(MonicOps {
            polys,
            beta: Vec::new(),
            gamma: Vec::new(),
        })
    }

    /// Wraps a family and attaches its fitted recurrence.
    pub fn fitted(polys: Vec<Polynomial<T>>) -> Result<Self> {
        let (beta, gamma) = recurrence_fit(&polys)?;
        Ok(MonicOps { polys, beta, gamma })
    }

    pub fn has_recurrence(&self) -> bool {
        !self.beta.is_empty()
    }

    /// Highest degree present.
    pub fn depth(&self) -> usize {
        self.polys.len().saturating_sub(1)
    }

    pub fn get(&self, n: usize) -> Option<&Polynomial<T>> {
        self.polys.get(n)
    }
}

pub(crate) fn check_monic_family<T: Scalar>(polys: &[Polynomial<T>]) -> Result<()> {
    for (n, p) in polys.iter().enumerate() {
        if p.degree() != Some(n) || !p.is_monic() {
            return Err(Error::InvalidArgument(format!(
                "family member {n} is not monic of degree {n}"
            )));
        }
    }
    Ok(())
}

/// Monic orthogonal polynomials `P_0..=P_depth` of `u` by the Stieltjes scheme:
/// `beta_n = <u, x P_n^2> / <u, P_n^2>`, `gamma_n = <u, P_n^2> / <u, P_{n-1}^2>`.
///
/// Uses moments `0..=2*depth`. Fails with [`Error::NotRegularUpTo`] at the first
/// `n <= depth` with `<u, P_n^2> = 0`.
pub fn mops_from_functional<T: Scalar>(u: &MomentFunctional<T>, depth: usize) -> Result<MonicOps<T>> {
    let x = Polynomial::<T>::x();
    let mut polys = vec![Polynomial::one()];
    let mut beta = Vec::with_capacity(depth);
    let mut gamma = Vec::with_capacity(depth);
    let mut prev_norm = T::zero();

    for n in 0..=depth {
        let pn = &polys[n];
        let sq = pn * pn;
        let norm = u.apply(&sq)?;
        if norm.is_zero() {
            return Err(Error::NotRegularUpTo(n));
        }
        if n == depth {
            break;
        }
        let b = u.apply(&(&x * &sq))? / norm.clone();
        let g = if n == 0 {
            T::zero()
        } else {
            norm.clone() / prev_norm.clone()
        };
        let mut next = pn.mul_linear(&b);
        if n > 0 {
            next = &next - &polys[n - 1].scale(&g);
        }
        beta.push(b);
        gamma.push(g);
        polys.push(next);
        prev_norm = norm;
    }

    Ok(MonicOps { polys, beta, gamma })
}

/// Recovers `beta`, `gamma` from a monic family by coefficient matching.
///
/// `x P_n - P_{n+1}` must equal `beta_n P_n + gamma_n P_{n-1}` exactly; a
/// nonzero residual is [`Error::NotAnOpsCandidate`], a zero `gamma_n` is
/// [`Error::DegenerateRecurrence`]. `gamma[0]` is the zero placeholder.
pub fn recurrence_fit<T: Scalar>(family: &[Polynomial<T>]) -> Result<(Vec<T>, Vec<T>)> {
    check_monic_family(family)?;
    let steps = family.len().saturating_sub(1);
    let mut beta = Vec::with_capacity(steps);
    let mut gamma = Vec::with_capacity(steps);

    for n in 0..steps {
        let (b, g, residual) = recurrence_step(family, n);
        if !residual.is_zero() {
            return Err(Error::NotAnOpsCandidate { n });
        }
        if n > 0 && g.is_zero() {
            return Err(Error::DegenerateRecurrence { n });
        }
        beta.push(b);
        gamma.push(g);
    }
    Ok((beta, gamma))
}

/// `beta_n`, `gamma_n` read off `x P_n - P_{n+1}`, and what is left after
/// removing `beta_n P_n + gamma_n P_{n-1}`.
pub(crate) fn recurrence_step<T: Scalar>(family: &[Polynomial<T>], n: usize) -> (T, T, Polynomial<T>) {
    let pn = &family[n];
    let mut residual = &pn.shift(1) - &family[n + 1];
    let b = residual.coeff(n);
    residual = &residual - &pn.scale(&b);
    let g = if n == 0 {
        T::zero()
    } else {
        let g = residual.coeff(n - 1);
        residual = &residual - &family[n - 1].scale(&g);
        g
    };
    (b, g, residual)
}
