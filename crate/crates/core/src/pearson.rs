//! Search for a Pearson pair `D(phi u) = S(psi u)` with `deg phi <= 2`, `deg psi = 1`.
//!
//! The identity tested against `x^n` is linear in the five coefficients
//! `(phi_2, phi_1, phi_0, psi_1, psi_0)`; stacking `n = 0..=order` gives a
//! homogeneous system whose kernel holds every admissible pair.

use crate::checks::PearsonPair;
use crate::error::{Error, Result};
use crate::functional::MomentFunctional;
use crate::linalg::rational_kernel;
use crate::poly::Polynomial;
use num_traits::Zero;

use crate::scalar::{sign_pow, Rational, Scalar};

pub const UNKNOWNS: usize = 5;
pub const MIN_ORDER: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct PearsonSearch {
    pub pair: Option<PearsonPair<Rational>>,
    pub rank: usize,
    pub kernel_dim: usize,
    pub kernel_basis: Vec<Vec<Rational>>,
    /// The whole coefficient space solves the system, i.e. the moments carry no information.
    pub degenerate: bool,
}

/// Row `n` is the residual of `x^n` as a linear form in the five coefficients.
pub fn pearson_system<T: Scalar>(u: &MomentFunctional<T>, order: usize) -> Result<Vec<Vec<T>>> {
    (0..=order)
        .map(|n| {
            let mut row = vec![T::zero(); UNKNOWNS];
            let k = n / 2;
            let s: T = -sign_pow::<T>(k);
            if n % 2 == 1 {
                // phi_j x^j against D(x^{2k+1}) = (-1)^k x^{2k}
                for (col, j) in [(0, 2), (1, 1), (2, 0)] {
                    row[col] = s.clone() * u.moment(j + 2 * k)?;
                }
            } else {
                // psi_j x^j against S(x^{2k}) = (-1)^k x^{2k}
                for (col, j) in [(3, 1), (4, 0)] {
                    row[col] = s.clone() * u.moment(j + 2 * k)?;
                }
            }
            Ok(row)
        })
        .collect()
}

/// Solves for a Pearson pair using moment conditions `n = 0..=order`.
///
/// The returned pair is the first kernel basis vector with `psi_1 != 0`,
/// rescaled to `psi_1 = 1`. A degenerate (all-solving) system yields no pair.
pub fn pearson_find(u: &MomentFunctional<Rational>, order: usize) -> Result<PearsonSearch> {
    if order < MIN_ORDER {
        return Err(Error::InvalidArgument(format!(
            "pearson search needs order >= {MIN_ORDER}, got {order}"
        )));
    }
    let system = pearson_system(u, order)?;
    let (rank, kernel_basis) = rational_kernel(&system, UNKNOWNS);
    let kernel_dim = kernel_basis.len();
    let degenerate = kernel_dim == UNKNOWNS;

    let pair = if degenerate {
        None
    } else {
        kernel_basis
            .iter()
            .find(|v| !v[3].is_zero())
            .map(|v| {
                let s = v[3].clone();
                let c: Vec<Rational> = v.iter().map(|x| x.clone() / s.clone()).collect();
                let phi = Polynomial::new(vec![c[2].clone(), c[1].clone(), c[0].clone()]);
                let psi = Polynomial::new(vec![c[4].clone(), c[3].clone()]);
                PearsonPair::new(phi, psi)
            })
            .transpose()?
    };

    Ok(PearsonSearch {
        pair,
        rank,
        kernel_dim,
        kernel_basis,
        degenerate,
    })
}
