//! Christoffel step, quadratic pullback and Geronimus inversion.
//!
//! Depth bookkeeping for [`alternating_pullback`] at depth `N`: the output family
//! has degrees `0..=2N+1`, which needs `R_0..=R_{N+1}`, hence moments of `v`
//! with indices `0..=2N+2`.

use crate::error::{Error, Result};
use crate::functional::{Generator, MomentFunctional};
use crate::mops::{mops_from_functional, MonicOps};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Kernel polynomials at `point`:
/// `S_n(y) = [R_{n+1}(y) - R_{n+1}(c)/R_n(c) R_n(y)] / (y - c)` for `n = 0..=depth`.
///
/// `base` must hold `R_0..=R_{depth+1}`. The result carries its fitted recurrence.
pub fn christoffel_step<T: Scalar>(base: &MonicOps<T>, point: &T, depth: usize) -> Result<MonicOps<T>> {
    if base.polys.len() < depth + 2 {
        return Err(Error::InvalidArgument(format!(
            "Christoffel step to depth {depth} needs R_0..=R_{}, got {} polynomials",
            depth + 1,
            base.polys.len()
        )));
    }
    let values: Vec<T> = base.polys[..=depth + 1].iter().map(|r| r.eval(point)).collect();
    let mut polys = Vec::with_capacity(depth + 1);
    for n in 0..=depth {
        if values[n].is_zero() {
            return Err(Error::KernelVanishes(n));
        }
        let ratio = values[n + 1].clone() / values[n].clone();
        let numer = &base.polys[n + 1] - &base.polys[n].scale(&ratio);
        polys.push(numer.div_linear(point)?);
    }
    MonicOps::fitted(polys)
}

/// The unique functional `u` with `sigma u = v` and `<u, (x - tau) p(x^2)> = 0`:
/// `mu_{2k}(u) = mu_k(v)` and `mu_{2k+1}(u) = tau mu_k(v)`.
pub fn pullback_functional<T: Scalar>(v: &MomentFunctional<T>, tau: &T) -> MomentFunctional<T> {
    let v = v.clone();
    let tau = tau.clone();
    MomentFunctional::from_rule(Generator::Derived("pullback".into()), move |k, _| {
        let m = v.moment(k / 2)?;
        Ok(if k % 2 == 0 { m } else { tau.clone() * m })
    })
}

/// Everything produced by one alternating pullback.
#[derive(Clone, Debug)]
pub struct AlternatingFamily<T> {
    pub tau: T,
    /// The pulled-back functional `u`.
    pub functional: MomentFunctional<T>,
    /// `R_0..=R_{N+1}` of the input functional.
    pub base: MonicOps<T>,
    /// `S_0..=S_N`, orthogonal for `(y - tau^2) v`.
    pub companion: MonicOps<T>,
    /// `P_0..=P_{2N+1}` with `P_{2n} = R_n(x^2)`, `P_{2n+1} = (x - tau) S_n(x^2)`.
    pub family: Vec<Polynomial<T>>,
}

/// Builds the alternating family of depth `depth` from `v` and `tau`.
pub fn alternating_pullback<T: Scalar>(
    v: &MomentFunctional<T>,
    tau: &T,
    depth: usize,
) -> Result<AlternatingFamily<T>> {
    let base = mops_from_functional(v, depth + 1)?;
    let point = tau.clone() * tau.clone();
    let companion = christoffel_step(&base, &point, depth)?;
    let family = interleave(&base.polys, &companion.polys, tau, depth);
    Ok(AlternatingFamily {
        tau: tau.clone(),
        functional: pullback_functional(v, tau),
        base,
        companion,
        family,
    })
}

/// `P_{2n} = R_n(x^2)`, `P_{2n+1} = (x - tau) S_n(x^2)` for `n <= depth`.
pub fn interleave<T: Scalar>(
    base: &[Polynomial<T>],
    companion: &[Polynomial<T>],
    tau: &T,
    depth: usize,
) -> Vec<Polynomial<T>> {
    let mut family = Vec::with_capacity(2 * depth + 2);
    for n in 0..=depth {
        family.push(base[n].compose_square());
        family.push(companion[n].compose_square().mul_linear(tau));
    }
    family
}

/// Geronimus data: `g[n]` for `n >= 1` (`g[0]` is ignored) and the point `mu`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeronimusCoefficients<T> {
    pub g: Vec<T>,
    pub point: T,
}

impl<T: Scalar> GeronimusCoefficients<T> {
    /// Tabulates `g(n)` for `1 <= n <= depth`.
    pub fn from_fn(depth: usize, point: T, mut g: impl FnMut(usize) -> Result<T>) -> Result<Self> {
        let mut table = vec![T::zero()];
        for n in 1..=depth {
            table.push(g(n)?);
        }
        Ok(GeronimusCoefficients { g: table, point })
    }
}

/// `B_0 = P_0`, `B_n = P_n - g_n P_{n-1}`.
pub fn geronimus_step<T: Scalar>(family: &[Polynomial<T>], coeffs: &GeronimusCoefficients<T>) -> Result<Vec<Polynomial<T>>> {
    if family.len() > coeffs.g.len() {
        return Err(Error::InvalidArgument(format!(
            "{} Geronimus coefficients for a family of {} polynomials",
            coeffs.g.len().saturating_sub(1),
            family.len()
        )));
    }
    Ok(family
        .iter()
        .enumerate()
        .map(|(n, p)| {
            if n == 0 {
                p.clone()
            } else {
                p - &family[n - 1].scale(&coeffs.g[n])
            }
        })
        .collect())
}

/// How the free Dirac mass at the Geronimus point is fixed.
#[derive(Clone, Debug, PartialEq)]
pub enum MassSeed<T> {
    /// `<u, 1>` given explicitly.
    Fixed(T),
    /// `<u, 1>` chosen so that `<u, B_1> = 0` for this monic degree-one `B_1`.
    Auto(Polynomial<T>),
}

/// A functional `u` with `(x - point) u = w`:
/// `mu_{k+1}(u) = mu_k(w) + point mu_k(u)`, seeded by `mu_0(u)`.
pub fn geronimus_functional<T: Scalar>(
    w: &MomentFunctional<T>,
    point: &T,
    seed: MassSeed<T>,
) -> Result<MomentFunctional<T>> {
    let mu0 = match seed {
        MassSeed::Fixed(m) => m,
        MassSeed::Auto(b1) => {
            if b1.degree() != Some(1) || !b1.is_monic() {
                return Err(Error::CannotFitMass("B_1 must be monic of degree one".into()));
            }
            // <u, x + c> = w_0 + (point + c) u_0
            let slope = point.clone() + b1.coeff(0);
            if slope.is_zero() {
                return Err(Error::CannotFitMass(
                    "B_1 vanishes at the Geronimus point, so <u, B_1> does not depend on the mass".into(),
                ));
            }
            -w.moment(0)? / slope
        }
    };
    let w = w.clone();
    let point = point.clone();
    Ok(MomentFunctional::from_rule(
        Generator::Derived("geronimus".into()),
        move |k, prev| {
            if k == 0 {
                Ok(mu0.clone())
            } else {
                Ok(w.moment(k - 1)? + point.clone() * prev[k - 1].clone())
            }
        },
    ))
}
