//! Exact verification predicates. Violations are report entries, not errors;
//! errors are reserved for inputs that cannot be evaluated at all.

use crate::error::{Error, Result};
use crate::functional::{dunkl_d, dunkl_s, MomentFunctional};
use crate::mops::{check_monic_family, recurrence_step};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// One failed identity: where it failed and the offending value.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation<T> {
    pub indices: Vec<usize>,
    pub value: T,
}

pub type Report<T> = Vec<Violation<T>>;

/// Checks `<u, P_m P_n> = 0` for `m < n <= depth` and `<u, P_n^2> != 0`.
///
/// Off-diagonal violations are recorded as `[m, n]` with `m < n`, diagonal
/// ones as `[n, n]` with value zero.
pub fn gram_check<T: Scalar>(u: &MomentFunctional<T>, family: &[Polynomial<T>], depth: usize) -> Result<Report<T>> {
    if family.len() <= depth {
        return Err(Error::InvalidArgument(format!(
            "gram check to depth {depth} needs {} polynomials, got {}",
            depth + 1,
            family.len()
        )));
    }
    let mut report = Vec::new();
    for n in 0..=depth {
        for m in 0..=n {
            let value = u.apply(&(&family[m] * &family[n]))?;
            let bad = if m == n { value.is_zero() } else { !value.is_zero() };
            if bad {
                report.push(Violation {
                    indices: vec![m, n],
                    value,
                });
            }
        }
    }
    Ok(report)
}

/// Checks `<u, (x - tau) x^{2k}> = 0`, i.e. `mu_{2k+1} = tau mu_{2k}`, for `k <= max_k`.
pub fn annihilation_check<T: Scalar>(u: &MomentFunctional<T>, tau: &T, max_k: usize) -> Result<Report<T>> {
    let mut report = Vec::new();
    for k in 0..=max_k {
        let value = u.moment(2 * k + 1)? - tau.clone() * u.moment(2 * k)?;
        if !value.is_zero() {
            report.push(Violation { indices: vec![k], value });
        }
    }
    Ok(report)
}

/// Favard check of a monic family: `x P_n - P_{n+1} - beta_n P_n - gamma_n P_{n-1}`
/// must vanish and `gamma_n` must not.
///
/// A leftover term is recorded as `[n, k]` with its top coefficient of degree `k`;
/// a zero `gamma_n` as `[n]`.
pub fn recurrence_check<T: Scalar>(family: &[Polynomial<T>]) -> Result<Report<T>> {
    check_monic_family(family)?;
    let mut report = Vec::new();
    for n in 0..family.len().saturating_sub(1) {
        let (_, g, residual) = recurrence_step(family, n);
        if let (Some(k), Some(top)) = (residual.degree(), residual.leading()) {
            report.push(Violation {
                indices: vec![n, k],
                value: top.clone(),
            });
        } else if n > 0 && g.is_zero() {
            report.push(Violation { indices: vec![n], value: g });
        }
    }
    Ok(report)
}

/// The pair `(phi, psi)` of a Pearson identity `D(phi u) = S(psi u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PearsonPair<T> {
    phi: Polynomial<T>,
    psi: Polynomial<T>,
}

impl<T: Scalar> PearsonPair<T> {
    /// Requires `deg phi <= 2` (zero allowed) and `deg psi = 1`.
    pub fn new(phi: Polynomial<T>, psi: Polynomial<T>) -> Result<Self> {
        if phi.degree().is_some_and(|d| d > 2) {
            return Err(Error::InvalidArgument("deg phi must be at most 2".into()));
        }
        if psi.degree() != Some(1) {
            return Err(Error::InvalidArgument("deg psi must be exactly 1".into()));
        }
        Ok(PearsonPair { phi, psi })
    }

    pub fn phi(&self) -> &Polynomial<T> {
        &self.phi
    }

    pub fn psi(&self) -> &Polynomial<T> {
        &self.psi
    }

    /// Coordinates in the order `(phi_2, phi_1, phi_0, psi_1, psi_0)`.
    pub fn coordinates(&self) -> [T; 5] {
        [
            self.phi.coeff(2),
            self.phi.coeff(1),
            self.phi.coeff(0),
            self.psi.coeff(1),
            self.psi.coeff(0),
        ]
    }
}

/// `<D(phi u) - S(psi u), x^n>` for `n = 0..=order`, via the transposed operators.
///
/// Accepts any `phi`, `psi` (including zero), so it is linear in the pair.
pub fn pearson_residuals<T: Scalar>(
    u: &MomentFunctional<T>,
    phi: &Polynomial<T>,
    psi: &Polynomial<T>,
    order: usize,
) -> Result<Vec<T>> {
    let lhs = u.mul_poly(phi).transpose_d();
    let rhs = u.mul_poly(psi).transpose_s();
    (0..=order).map(|n| Ok(lhs.moment(n)? - rhs.moment(n)?)).collect()
}

/// Same residuals by pairing `u` directly against `phi D(x^n)` and `psi S(x^n)`.
pub fn pearson_residuals_direct<T: Scalar>(
    u: &MomentFunctional<T>,
    phi: &Polynomial<T>,
    psi: &Polynomial<T>,
    order: usize,
) -> Result<Vec<T>> {
    (0..=order)
        .map(|n| {
            let xn = Polynomial::monomial(T::one(), n);
            let a = u.apply(&(phi * &dunkl_d(&xn)))?;
            let b = u.apply(&(psi * &dunkl_s(&xn)))?;
            Ok(-a - b)
        })
        .collect()
}

/// Verifies `D(phi u) = S(psi u)` against `x^n` for `n <= order`.
pub fn pearson_check<T: Scalar>(u: &MomentFunctional<T>, pair: &PearsonPair<T>, order: usize) -> Result<Report<T>> {
    Ok(pearson_residuals(u, &pair.phi, &pair.psi, order)?
        .into_iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(n, value)| Violation { indices: vec![n], value })
        .collect())
}
