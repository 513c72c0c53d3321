//! Closed-form generators for the worked families and the moment rules that
//! feed them into the pipeline.
//!
//! Parameters are concrete rationals. Every generator screens its parameters
//! for vanishing denominators over the whole requested depth before building
//! anything, so a family never fails half way through.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::functional::{Generator, MomentFunctional};
use crate::hyper::{pochhammer, HypSeries};
use crate::poly::Polynomial;
use crate::scalar::{format_rational, int, parse_rational, ratio, sign_pow, Rational};
use crate::transforms::{geronimus_step, interleave, GeronimusCoefficients};

type QPoly = Polynomial<Rational>;

fn nonzero(value: &Rational, n: usize, what: impl FnOnce() -> String) -> Result<()> {
    if value.is_zero() {
        Err(Error::degenerate(n, what()))
    } else {
        Ok(())
    }
}

/// `(a)_n != 0`.
fn poch_nonzero(a: &Rational, n: usize, at: usize, name: &str) -> Result<()> {
    nonzero(&pochhammer(a, n), at, || format!("({name})_{n} = 0 with {name} = {a}"))
}

fn binomial(k: usize, j: usize) -> Rational {
    (0..j).fold(Rational::one(), |acc, i| acc * int((k - i) as i64) / int(i as i64 + 1))
}

/// Shifted Jacobi input `(a, b, lambda)`, equivalently `(lambda, c, d)` with
/// `c = 2a + 1`, `d = 2b - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiParams {
    pub a: Rational,
    pub b: Rational,
    pub lambda: Rational,
}

impl JacobiParams {
    pub fn new(a: Rational, b: Rational, lambda: Rational) -> Result<Self> {
        if (lambda.clone() * lambda.clone()).is_one() {
            return Err(Error::InvalidArgument("lambda must not be 1 or -1".into()));
        }
        Ok(JacobiParams { a, b, lambda })
    }

    /// From the `(lambda, c, d)` labelling: `a = (c - 1)/2`, `b = (d + 1)/2`.
    pub fn from_cd(lambda: Rational, c: Rational, d: Rational) -> Result<Self> {
        let half = ratio(1, 2);
        Self::new((c - int(1)) * half.clone(), (d + int(1)) * half, lambda)
    }

    pub fn c(&self) -> Rational {
        int(2) * self.a.clone() + int(1)
    }

    pub fn d(&self) -> Rational {
        int(2) * self.b.clone() - int(1)
    }

    /// `1 - lambda^2`.
    pub fn scale(&self) -> Rational {
        int(1) - self.lambda.clone() * self.lambda.clone()
    }

    /// Screens every denominator met up to index `depth`: the `t`-families
    /// `R_n`, `S_n`, the kernel ratio, the Beta moments, and the big (-1)-Jacobi
    /// normalisers and `g_n`. All of them are products of `a + b + j` and
    /// `a + 1 + j` factors with `j` bounded by `2 depth + 2`.
    pub fn validate(&self, depth: usize) -> Result<()> {
        nonzero(&(self.lambda.clone() + int(1)), 0, || "1 + lambda = 0".into())?;
        for j in 0..=depth + 1 {
            nonzero(&(self.a.clone() + int(1 + j as i64)), j, || format!("a + {} = 0", 1 + j))?;
        }
        let ab = self.a.clone() + self.b.clone();
        for j in 1..=2 * depth + 2 {
            nonzero(&(ab.clone() + int(j as i64)), j, || format!("a + b + {j} = 0"))?;
        }
        Ok(())
    }
}

/// `(alpha, gamma)` of the shifted Laguerre input.
#[derive(Clone, Debug, PartialEq)]
pub struct LaguerreParams {
    pub alpha: Rational,
    pub gamma: Rational,
}

impl LaguerreParams {
    pub fn new(alpha: Rational, gamma: Rational) -> Self {
        LaguerreParams { alpha, gamma }
    }

    pub fn validate(&self, depth: usize) -> Result<()> {
        let half = ratio(1, 2);
        poch_nonzero(&(self.alpha.clone() + half.clone()), depth + 1, depth, "alpha+1/2")?;
        poch_nonzero(&(self.alpha.clone() + int(1) + half), depth + 1, depth, "alpha+3/2")
    }
}

/// `(a, b, c, d)` as used for the (complementary) Bannai-Ito families.
#[derive(Clone, Debug, PartialEq)]
pub struct BannaiItoParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl BannaiItoParams {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        BannaiItoParams { a, b, c, d }
    }

    /// `a + b - c - d`.
    fn shift(&self) -> Rational {
        self.a.clone() + self.b.clone() - self.c.clone() - self.d.clone()
    }

    /// Screens `R_m`, `S_m` for `m <= depth` and `g_n` for `n <= 2 depth + 1`.
    pub fn validate(&self, depth: usize) -> Result<()> {
        let half = ratio(1, 2);
        let lower1 = [
            self.a.clone() + self.b.clone() + int(1),
            self.b.clone() - self.c.clone() + half.clone(),
            self.b.clone() - self.d.clone() + half,
        ];
        for m in 0..=depth {
            for (i, l) in lower1.iter().enumerate() {
                poch_nonzero(l, m, m, &format!("lower#{i}"))?;
                poch_nonzero(&(l.clone() + int(1)), m, m, &format!("lower#{i}+1"))?;
            }
            let top = int(m as i64) + self.shift() + int(1);
            poch_nonzero(&top, m, m, "n+a+b-c-d+1")?;
            poch_nonzero(&(top + int(1)), m, m, "n+a+b-c-d+2")?;
        }
        for n in 1..=2 * depth + 1 {
            let den = int(n as i64) - self.c.clone() - self.d.clone() + self.a.clone() + self.b.clone();
            nonzero(&den, n, || "4(n-c-d+a+b) = 0 in g_n".into())?;
        }
        Ok(())
    }
}

/// `R_n(t) = (1-l^2)^n (a+1)_n/(n+a+b+1)_n 2F1(-n, n+a+b+1; a+1; (1-t)/(1-l^2))`.
pub fn shifted_jacobi(p: &JacobiParams, n: usize) -> Result<QPoly> {
    p.validate(n)?;
    Ok(jacobi_block(p, n, 1))
}

/// `shift = 1` gives `R_n`, `shift = 2` its Christoffel companion `S_n`.
fn jacobi_block(p: &JacobiParams, n: usize, shift: i64) -> QPoly {
    let s = p.scale();
    let lower = p.a.clone() + int(shift);
    let top = int(n as i64) + p.a.clone() + p.b.clone() + int(shift);
    let pref = num_traits::pow(s.clone(), n) * pochhammer(&lower, n) / pochhammer(&top, n);
    let arg = QPoly::new(vec![int(1) / s.clone(), -int(1) / s]);
    HypSeries::terminating(n, vec![top], vec![lower])
        .expect("validated")
        .eval_poly(&arg)
        .scale(&pref)
}

/// `S_n(t)` with `a + 1 -> a + 2` and `n + a + b + 1 -> n + a + b + 2`.
pub fn shifted_jacobi_companion(p: &JacobiParams, n: usize) -> Result<QPoly> {
    p.validate(n)?;
    Ok(jacobi_block(p, n, 2))
}

/// `R_{n+1}(1) / R_n(1) = (1-l^2)(a+n+1)(a+b+n+1) / ((2n+a+b+1)(2n+a+b+2))`.
pub fn jacobi_kernel_ratio(p: &JacobiParams, n: usize) -> Rational {
    let nn = int(n as i64);
    let ab = p.a.clone() + p.b.clone();
    p.scale() * (p.a.clone() + nn.clone() + int(1)) * (ab.clone() + nn.clone() + int(1))
        / ((int(2) * nn.clone() + ab.clone() + int(1)) * (int(2) * nn + ab + int(2)))
}

/// `R_n(1) = (1-l^2)^n (a+1)_n / (n+a+b+1)_n`.
pub fn jacobi_value_at_one(p: &JacobiParams, n: usize) -> Rational {
    let top = int(n as i64) + p.a.clone() + p.b.clone() + int(1);
    num_traits::pow(p.scale(), n) * pochhammer(&(p.a.clone() + int(1)), n) / pochhammer(&top, n)
}

/// Big (-1)-Jacobi Geronimus coefficients:
/// `g_n = (1-l) n/(2n+c+d)` for even `n`, `-(1+l)(n+c)/(2n+c+d)` for odd `n`.
pub fn big_jacobi_g(p: &JacobiParams, n: usize) -> Rational {
    let nn = int(n as i64);
    let den = int(2) * nn.clone() + p.c() + p.d();
    if n.is_multiple_of(2) {
        (int(1) - p.lambda.clone()) * nn / den
    } else {
        -(int(1) + p.lambda.clone()) * (nn + p.c()) / den
    }
}

/// Monic normaliser `kappa_n` of the big (-1)-Jacobi closed form.
pub fn big_jacobi_kappa(p: &JacobiParams, n: usize) -> Rational {
    let m = n / 2;
    let (c, d) = (p.c(), p.d());
    let half = ratio(1, 2);
    let lower = (c.clone() + int(1)) * half.clone();
    let top = (int(2 * m as i64) + c + d + int(2)) * half;
    let s = num_traits::pow(p.scale(), m);
    if n.is_multiple_of(2) {
        s * pochhammer(&lower, m) / pochhammer(&top, m)
    } else {
        (int(1) + p.lambda.clone()) * s * pochhammer(&lower, m + 1) / pochhammer(&top, m + 1)
    }
}

/// Big (-1)-Jacobi polynomial from the even/odd closed forms, `z = (1-x^2)/(1-l^2)`.
pub fn big_m1_jacobi_direct(p: &JacobiParams, n: usize) -> Result<QPoly> {
    p.validate(n)?;
    let (c, d) = (p.c(), p.d());
    let half = ratio(1, 2);
    let s = p.scale();
    let z = QPoly::new(vec![int(1) / s.clone(), int(0), -int(1) / s]);
    let one_minus_x = QPoly::new(vec![int(1), int(-1)]);
    let m = n / 2;
    let mm = int(m as i64);
    let denom = (int(1) + p.lambda.clone()) * (c.clone() + int(1));
    let lower1 = (c.clone() + int(1)) * half.clone();
    let lower3 = (c.clone() + int(3)) * half.clone();
    let top2 = (int(2) * mm.clone() + c.clone() + d.clone() + int(2)) * half.clone();

    let first = HypSeries::terminating(m, vec![top2.clone()], vec![lower1])?.eval_poly(&z);
    let bracket = if n.is_multiple_of(2) {
        if m == 0 {
            first
        } else {
            let second = HypSeries::terminating(m - 1, vec![top2], vec![lower3])?.eval_poly(&z);
            let coef = int(2) * mm / denom;
            &first + &(&one_minus_x * &second).scale(&coef)
        }
    } else {
        let top4 = (int(2) * mm.clone() + c.clone() + d.clone() + int(4)) * half;
        let second = HypSeries::terminating(m, vec![top4], vec![lower3])?.eval_poly(&z);
        let coef = (int(2) * mm + c + d + int(2)) / denom;
        &first - &(&one_minus_x * &second).scale(&coef)
    };
    Ok(bracket.scale(&big_jacobi_kappa(p, n)))
}

/// `g_1..=g_depth` of the big (-1)-Jacobi step, at the point `-lambda`.
pub fn big_jacobi_coefficients(p: &JacobiParams, depth: usize) -> Result<GeronimusCoefficients<Rational>> {
    p.validate(depth)?;
    GeronimusCoefficients::from_fn(depth, -p.lambda.clone(), |n| Ok(big_jacobi_g(p, n)))
}

/// Big (-1)-Jacobi `B_0..=B_depth` via the alternating family at `tau = 1` and the `g_n` step.
pub fn big_m1_jacobi_family(p: &JacobiParams, depth: usize) -> Result<Vec<QPoly>> {
    let g = big_jacobi_coefficients(p, depth)?;
    let half_depth = depth / 2;
    let base: Vec<QPoly> = (0..=half_depth).map(|m| jacobi_block(p, m, 1)).collect();
    let comp: Vec<QPoly> = (0..=half_depth).map(|m| jacobi_block(p, m, 2)).collect();
    let mut family = interleave(&base, &comp, &int(1), half_depth);
    family.truncate(depth + 1);
    geronimus_step(&family, &g)
}

/// `sum_k c_k prod_{j<k} ((shift+j)^2 - y)` with `c_k` the `4F3(...; 1)` term
/// coefficients whose two argument-dependent parameters `shift +- x` are
/// expanded through `(s+x)_k (s-x)_k = prod_{j<k} ((s+j)^2 - x^2)`.
fn balanced_4f3(n: usize, top: Rational, lower: Vec<Rational>, shift: &Rational) -> Result<QPoly> {
    let coeffs = HypSeries::terminating(n, vec![top], lower)?.term_coefficients();
    let mut acc = QPoly::zero();
    let mut block = QPoly::one();
    for (k, c) in coeffs.iter().enumerate() {
        acc = &acc + &block.scale(c);
        let sj = shift.clone() + int(k as i64);
        block = &block * &QPoly::new(vec![sj.clone() * sj, int(-1)]);
    }
    Ok(acc)
}

/// `kappa_n^(1)` (`offset = 1`) or `kappa_n^(2)` (`offset = 2`).
pub fn bannai_ito_kappa(p: &BannaiItoParams, n: usize, offset: i64) -> Rational {
    let half = ratio(1, 2);
    let extra = int(offset - 1);
    let nn = int(n as i64);
    pochhammer(&(int(offset) + p.a.clone() + p.b.clone()), n)
        * pochhammer(&(p.b.clone() - p.c.clone() + half.clone() + extra.clone()), n)
        * pochhammer(&(p.b.clone() - p.d.clone() + half + extra), n)
        / pochhammer(&(nn + p.shift() + int(offset)), n)
}

fn cbi_block(p: &BannaiItoParams, n: usize, offset: i64) -> Result<QPoly> {
    let half = ratio(1, 2);
    let extra = int(offset - 1);
    let top = int(n as i64) + p.shift() + int(offset);
    let lower = vec![
        p.a.clone() + p.b.clone() + int(offset),
        p.b.clone() - p.c.clone() + half.clone() + extra.clone(),
        p.b.clone() - p.d.clone() + half + extra.clone(),
    ];
    let in_y = balanced_4f3(n, top, lower, &(p.b.clone() + extra))?;
    Ok(in_y.scale(&bannai_ito_kappa(p, n, offset)))
}

/// `R_n(y)` of the complementary Bannai-Ito family, as a polynomial in `y = x^2`.
pub fn cbi_base_in_y(p: &BannaiItoParams, n: usize) -> Result<QPoly> {
    p.validate(n)?;
    cbi_block(p, n, 1)
}

/// `S_n(y)`, as a polynomial in `y = x^2`.
pub fn cbi_companion_in_y(p: &BannaiItoParams, n: usize) -> Result<QPoly> {
    p.validate(n)?;
    cbi_block(p, n, 2)
}

/// `R_n(x^2)`: even, monic of degree `2n` in `x`.
pub fn cbi_base(p: &BannaiItoParams, n: usize) -> Result<QPoly> {
    Ok(cbi_base_in_y(p, n)?.compose_square())
}

/// `S_n(x^2)`: even, monic of degree `2n` in `x`.
pub fn cbi_companion(p: &BannaiItoParams, n: usize) -> Result<QPoly> {
    Ok(cbi_companion_in_y(p, n)?.compose_square())
}

/// Complementary Bannai-Ito `P_n`: `P_{2m} = R_m(x^2)`, `P_{2m+1} = (x - b) S_m(x^2)`.
pub fn comp_bannai_ito(p: &BannaiItoParams, n: usize) -> Result<QPoly> {
    let m = n / 2;
    if n.is_multiple_of(2) {
        cbi_base(p, m)
    } else {
        Ok(cbi_companion(p, m)?.mul_linear(&p.b))
    }
}

/// Bannai-Ito Geronimus coefficients:
/// `-n(n-2c-2d)/(4(n-c-d+a+b))` for even `n`, `-(n-2d+2b)(n-2c+2b)/(4(n-c-d+a+b))` for odd `n`.
pub fn bannai_ito_g(p: &BannaiItoParams, n: usize) -> Rational {
    let nn = int(n as i64);
    let den = int(4) * (nn.clone() - p.c.clone() - p.d.clone() + p.a.clone() + p.b.clone());
    let two = int(2);
    if n.is_multiple_of(2) {
        -(nn.clone() * (nn - two.clone() * p.c.clone() - two * p.d.clone())) / den
    } else {
        -((nn.clone() - two.clone() * p.d.clone() + two.clone() * p.b.clone())
            * (nn - two.clone() * p.c.clone() + two * p.b.clone()))
            / den
    }
}

/// Bannai-Ito `B_0..=B_depth` from the complementary family and the `g_n` step.
pub fn bannai_ito_family(p: &BannaiItoParams, depth: usize) -> Result<Vec<QPoly>> {
    let half_depth = depth / 2;
    p.validate(half_depth)?;
    let base: Vec<QPoly> = (0..=half_depth).map(|m| cbi_block(p, m, 1)).collect::<Result<_>>()?;
    let comp: Vec<QPoly> = (0..=half_depth).map(|m| cbi_block(p, m, 2)).collect::<Result<_>>()?;
    let mut family = interleave(&base, &comp, &p.b, half_depth);
    family.truncate(depth + 1);
    // the functional side of this step is not used, so the point is a placeholder
    let g = GeronimusCoefficients::from_fn(depth, Rational::zero(), |n| Ok(bannai_ito_g(p, n)))?;
    geronimus_step(&family, &g)
}

/// Bannai-Ito `B_n`.
pub fn bannai_ito(p: &BannaiItoParams, n: usize) -> Result<QPoly> {
    Ok(bannai_ito_family(p, n)?.pop().expect("nonempty family"))
}

/// `R_n(y) = (-1)^n (alpha+1/2)_n 1F1(-n; alpha+1/2; y - gamma^2)`.
pub fn shifted_laguerre(p: &LaguerreParams, n: usize) -> Result<QPoly> {
    p.validate(n)?;
    let shift = QPoly::new(vec![-(p.gamma.clone() * p.gamma.clone()), int(1)]);
    laguerre_block(&(p.alpha.clone() + ratio(1, 2)), n, &shift)
}

fn laguerre_block(lower: &Rational, n: usize, arg: &QPoly) -> Result<QPoly> {
    let pref = sign_pow::<Rational>(n) * pochhammer(lower, n);
    Ok(HypSeries::terminating(n, vec![], vec![lower.clone()])?
        .eval_poly(arg)
        .scale(&pref))
}

/// (-1)-Meixner-Pollaczek `P_n` from the closed forms in `x`:
/// `P_{2m} = (-1)^m (alpha+1/2)_m 1F1(-m; alpha+1/2; x^2 - gamma^2)`,
/// `P_{2m+1} = (x - gamma) (-1)^m (alpha+3/2)_m 1F1(-m; alpha+3/2; x^2 - gamma^2)`.
pub fn m1_meixner_pollaczek_direct(p: &LaguerreParams, n: usize) -> Result<QPoly> {
    let m = n / 2;
    p.validate(m)?;
    let arg = QPoly::new(vec![-(p.gamma.clone() * p.gamma.clone()), int(0), int(1)]);
    if n.is_multiple_of(2) {
        laguerre_block(&(p.alpha.clone() + ratio(1, 2)), m, &arg)
    } else {
        Ok(laguerre_block(&(p.alpha.clone() + ratio(3, 2)), m, &arg)?.mul_linear(&p.gamma))
    }
}

/// Which closed-form moment rule drives the pipeline.
#[derive(Clone, Debug, PartialEq)]
pub enum MomentKind {
    /// `mu_k = sum_j C(k,j) gamma^{2(k-j)} (alpha+1/2)_j`.
    ShiftedLaguerre(LaguerreParams),
    /// `mu_k = sum_j C(k,j) (-(1-l^2))^j (a+1)_j/(a+b+2)_j`.
    ShiftedJacobi(JacobiParams),
}

/// Moment functional of the shifted Laguerre or Jacobi input, normalised to
/// `mu_0 = 1`, bounded to the first `count` moments.
pub fn family_moments(kind: &MomentKind, count: usize) -> MomentFunctional<Rational> {
    match kind.clone() {
        MomentKind::ShiftedLaguerre(p) => {
            let generator = Generator::Named {
                rule: FamilyKind::ShiftedLaguerre.id().into(),
                params: vec![
                    ("alpha".into(), format_rational(&p.alpha)),
                    ("gamma".into(), format_rational(&p.gamma)),
                ],
            };
            let g2 = p.gamma.clone() * p.gamma.clone();
            let lower = p.alpha.clone() + ratio(1, 2);
            MomentFunctional::bounded(generator, count, move |k, _| {
                Ok((0..=k).fold(Rational::zero(), |acc, j| {
                    acc + binomial(k, j) * num_traits::pow(g2.clone(), k - j) * pochhammer(&lower, j)
                }))
            })
        }
        MomentKind::ShiftedJacobi(p) => {
            let generator = Generator::Named {
                rule: FamilyKind::ShiftedJacobi.id().into(),
                params: vec![
                    ("a".into(), format_rational(&p.a)),
                    ("b".into(), format_rational(&p.b)),
                    ("lambda".into(), format_rational(&p.lambda)),
                ],
            };
            let step = -p.scale();
            let up = p.a.clone() + int(1);
            let down = p.a.clone() + p.b.clone() + int(2);
            MomentFunctional::bounded(generator, count, move |k, _| {
                (0..=k).try_fold(Rational::zero(), |acc, j| {
                    let den = pochhammer(&down, j);
                    if den.is_zero() {
                        return Err(Error::degenerate(j, "(a+b+2)_j = 0 in Beta moments"));
                    }
                    Ok(acc + binomial(k, j) * num_traits::pow(step.clone(), j) * pochhammer(&up, j) / den)
                })
            })
        }
    }
}

/// Stable identifiers of the supported families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    ShiftedJacobi,
    BigM1Jacobi,
    CompBannaiIto,
    BannaiIto,
    ShiftedLaguerre,
    M1MeixnerPollaczek,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 6] = [
        FamilyKind::ShiftedJacobi,
        FamilyKind::BigM1Jacobi,
        FamilyKind::CompBannaiIto,
        FamilyKind::BannaiIto,
        FamilyKind::ShiftedLaguerre,
        FamilyKind::M1MeixnerPollaczek,
    ];

    pub fn id(self) -> &'static str {
        match self {
            FamilyKind::ShiftedJacobi => "shifted-jacobi",
            FamilyKind::BigM1Jacobi => "big-m1-jacobi",
            FamilyKind::CompBannaiIto => "comp-bannai-ito",
            FamilyKind::BannaiIto => "bannai-ito",
            FamilyKind::ShiftedLaguerre => "shifted-laguerre",
            FamilyKind::M1MeixnerPollaczek => "m1-meixner-pollaczek",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family {s:?}")))
    }
}

/// A family together with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilyParams {
    Jacobi(FamilyKind, JacobiParams),
    BannaiIto(FamilyKind, BannaiItoParams),
    Laguerre(FamilyKind, LaguerreParams),
}

impl FamilyParams {
    /// Reads parameters from a name -> rational-string map.
    ///
    /// Jacobi kinds take `a`, `b`, `lambda` or `lambda`, `c`, `d`; Laguerre kinds
    /// take `alpha`, `gamma`; Bannai-Ito kinds take `a`, `b`, `c`, `d`.
    pub fn from_map(kind: FamilyKind, params: &BTreeMap<String, String>) -> Result<Self> {
        let get = |key: &str| -> Result<Rational> {
            let text = params
                .get(key)
                .ok_or_else(|| Error::InvalidArgument(format!("{kind} needs parameter {key:?}")))?;
            parse_rational(text).map_err(|e| e.at(format!("param {key}")))
        };
        let allowed: &[&str] = match kind {
            FamilyKind::ShiftedJacobi | FamilyKind::BigM1Jacobi => &["a", "b", "c", "d", "lambda"],
            FamilyKind::ShiftedLaguerre | FamilyKind::M1MeixnerPollaczek => &["alpha", "gamma"],
            FamilyKind::CompBannaiIto | FamilyKind::BannaiIto => &["a", "b", "c", "d"],
        };
        if let Some(extra) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::InvalidArgument(format!("{kind} does not take parameter {extra:?}")));
        }
        Ok(match kind {
            FamilyKind::ShiftedJacobi | FamilyKind::BigM1Jacobi => {
                let jp = if params.contains_key("c") || params.contains_key("d") {
                    if params.contains_key("a") || params.contains_key("b") {
                        return Err(Error::InvalidArgument("give either (a, b) or (c, d), not both".into()));
                    }
                    JacobiParams::from_cd(get("lambda")?, get("c")?, get("d")?)?
                } else {
                    JacobiParams::new(get("a")?, get("b")?, get("lambda")?)?
                };
                FamilyParams::Jacobi(kind, jp)
            }
            FamilyKind::ShiftedLaguerre | FamilyKind::M1MeixnerPollaczek => {
                FamilyParams::Laguerre(kind, LaguerreParams::new(get("alpha")?, get("gamma")?))
            }
            FamilyKind::CompBannaiIto | FamilyKind::BannaiIto => {
                FamilyParams::BannaiIto(kind, BannaiItoParams::new(get("a")?, get("b")?, get("c")?, get("d")?))
            }
        })
    }

    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilyParams::Jacobi(k, _) | FamilyParams::BannaiIto(k, _) | FamilyParams::Laguerre(k, _) => *k,
        }
    }

    /// Canonical parameter map.
    pub fn to_map(&self) -> BTreeMap<String, String> {
        let pairs: Vec<(&str, &Rational)> = match self {
            FamilyParams::Jacobi(_, p) => vec![("a", &p.a), ("b", &p.b), ("lambda", &p.lambda)],
            FamilyParams::Laguerre(_, p) => vec![("alpha", &p.alpha), ("gamma", &p.gamma)],
            FamilyParams::BannaiIto(_, p) => vec![("a", &p.a), ("b", &p.b), ("c", &p.c), ("d", &p.d)],
        };
        pairs.into_iter().map(|(k, v)| (k.to_string(), format_rational(v))).collect()
    }

    /// Members `0..=depth`, after an eager degeneracy screen over the whole depth.
    pub fn generate(&self, depth: usize) -> Result<Vec<QPoly>> {
        match self {
            FamilyParams::Jacobi(FamilyKind::ShiftedJacobi, p) => {
                p.validate(depth)?;
                Ok((0..=depth).map(|n| jacobi_block(p, n, 1)).collect())
            }
            FamilyParams::Jacobi(_, p) => {
                p.validate(depth)?;
                (0..=depth).map(|n| big_m1_jacobi_direct(p, n)).collect()
            }
            FamilyParams::Laguerre(FamilyKind::ShiftedLaguerre, p) => {
                p.validate(depth)?;
                (0..=depth).map(|n| shifted_laguerre(p, n)).collect()
            }
            FamilyParams::Laguerre(_, p) => {
                p.validate(depth / 2)?;
                (0..=depth).map(|n| m1_meixner_pollaczek_direct(p, n)).collect()
            }
            FamilyParams::BannaiIto(FamilyKind::CompBannaiIto, p) => {
                p.validate(depth / 2)?;
                (0..=depth).map(|n| comp_bannai_ito(p, n)).collect()
            }
            FamilyParams::BannaiIto(_, p) => bannai_ito_family(p, depth),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[(i64, i64)]) -> QPoly {
        QPoly::new(c.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    fn jac() -> JacobiParams {
        JacobiParams::new(ratio(1, 2), ratio(1, 2), ratio(1, 2)).unwrap()
    }

    fn mp() -> LaguerreParams {
        LaguerreParams::new(ratio(1, 2), int(1))
    }

    fn bi() -> BannaiItoParams {
        BannaiItoParams::new(int(0), int(1), int(0), int(0))
    }

    #[test]
    fn jacobi_first_members() {
        assert_eq!(shifted_jacobi(&jac(), 0).unwrap(), QPoly::one());
        let r1 = shifted_jacobi(&jac(), 1).unwrap();
        assert_eq!(r1, q(&[(-5, 8), (1, 1)]));
        assert_eq!(r1.eval(&int(1)), ratio(3, 8));
        let r2 = shifted_jacobi(&jac(), 2).unwrap();
        assert_eq!(r2.eval(&int(1)) / r1.eval(&int(1)), ratio(9, 32));
        assert_eq!(jacobi_kernel_ratio(&jac(), 1), ratio(9, 32));
    }

    #[test]
    fn cd_labelling() {
        let p = JacobiParams::from_cd(ratio(1, 2), int(2), int(0)).unwrap();
        assert_eq!(p, jac());
        assert_eq!((p.c(), p.d()), (int(2), int(0)));
        assert!(JacobiParams::new(int(0), int(0), int(-1)).is_err());
    }

    #[test]
    fn big_jacobi_g_values() {
        assert_eq!(big_jacobi_g(&jac(), 1), ratio(-9, 8));
        assert_eq!(big_jacobi_g(&jac(), 2), ratio(1, 6));
        assert_eq!(big_jacobi_kappa(&jac(), 1), ratio(9, 8));
    }

    #[test]
    fn big_jacobi_low_members() {
        assert_eq!(big_m1_jacobi_direct(&jac(), 0).unwrap(), QPoly::one());
        assert_eq!(big_m1_jacobi_direct(&jac(), 1).unwrap(), q(&[(1, 8), (1, 1)]));
        let fam = big_m1_jacobi_family(&jac(), 2).unwrap();
        assert_eq!(fam[1], q(&[(1, 8), (1, 1)]));
        assert_eq!(big_m1_jacobi_direct(&jac(), 2).unwrap(), fam[2]);
    }

    #[test]
    fn pochhammer_pair_identity() {
        // (1 + x)_2 (1 - x)_2 = (1 - x^2)(4 - x^2)
        let y = balanced_4f3(0, int(0), vec![], &int(1)).unwrap();
        assert_eq!(y, QPoly::one());
        let mut block = QPoly::one();
        for j in 0..2 {
            let s = int(1 + j);
            block = &block * &QPoly::new(vec![s.clone() * s, int(-1)]);
        }
        assert_eq!(block.compose_square(), &q(&[(1, 1), (0, 1), (-1, 1)]) * &q(&[(4, 1), (0, 1), (-1, 1)]));
    }

    #[test]
    fn complementary_bannai_ito_first_member() {
        assert_eq!(bannai_ito_kappa(&bi(), 1, 1), ratio(3, 2));
        assert_eq!(cbi_base(&bi(), 1).unwrap(), q(&[(1, 2), (0, 1), (1, 1)]));
        assert_eq!(cbi_base(&bi(), 0).unwrap(), QPoly::one());
        assert_eq!(cbi_companion(&bi(), 0).unwrap(), QPoly::one());
        assert_eq!(bannai_ito_g(&bi(), 1), ratio(-9, 8));
        assert_eq!(bannai_ito(&bi(), 0).unwrap(), QPoly::one());
    }

    #[test]
    fn laguerre_members() {
        assert_eq!(shifted_laguerre(&mp(), 0).unwrap(), QPoly::one());
        assert_eq!(shifted_laguerre(&mp(), 1).unwrap(), q(&[(-2, 1), (1, 1)]));
        assert_eq!(shifted_laguerre(&mp(), 2).unwrap().eval(&int(1)), int(2));
        assert_eq!(m1_meixner_pollaczek_direct(&mp(), 2).unwrap(), q(&[(-2, 1), (0, 1), (1, 1)]));
        assert_eq!(
            m1_meixner_pollaczek_direct(&mp(), 3).unwrap(),
            &q(&[(-1, 1), (1, 1)]) * &q(&[(-3, 1), (0, 1), (1, 1)])
        );
    }

    #[test]
    fn moment_rules() {
        let lag = family_moments(&MomentKind::ShiftedLaguerre(mp()), 3);
        assert_eq!(lag.moments(3).unwrap(), vec![int(1), int(2), int(5)]);
        assert!(lag.moment(3).is_err());
        let jm = family_moments(&MomentKind::ShiftedJacobi(jac()), 2);
        assert_eq!(jm.moment(1).unwrap(), ratio(5, 8));
        let one = family_moments(&MomentKind::ShiftedJacobi(jac()), 1);
        assert_eq!(one.moments(1).unwrap(), vec![int(1)]);
    }

    #[test]
    fn degeneracy_screened_eagerly() {
        // a + 2 = 0
        let p = JacobiParams::new(int(-2), int(0), ratio(1, 2)).unwrap();
        assert!(matches!(p.validate(3), Err(Error::DegenerateParameters { .. })));
        assert!(FamilyParams::Jacobi(FamilyKind::ShiftedJacobi, p).generate(3).is_err());
        let lag = LaguerreParams::new(ratio(-5, 2), int(1));
        assert!(matches!(shifted_laguerre(&lag, 3), Err(Error::DegenerateParameters { .. })));
        let bad_bi = BannaiItoParams::new(int(0), int(0), int(1), int(0));
        // g_1 denominator: 1 - 1 - 0 + 0 + 0 = 0
        assert!(bannai_ito_family(&bad_bi, 2).is_err());
    }

    #[test]
    fn parameter_maps() {
        let mut m = BTreeMap::new();
        m.insert("lambda".to_string(), "1/2".to_string());
        m.insert("c".to_string(), "2".to_string());
        m.insert("d".to_string(), "0".to_string());
        let fp = FamilyParams::from_map(FamilyKind::BigM1Jacobi, &m).unwrap();
        assert_eq!(fp, FamilyParams::Jacobi(FamilyKind::BigM1Jacobi, jac()));
        assert_eq!(fp.to_map()["a"], "1/2");
        m.insert("alpha".to_string(), "1".to_string());
        assert!(FamilyParams::from_map(FamilyKind::BigM1Jacobi, &m).is_err());
        assert_eq!("bannai-ito".parse::<FamilyKind>().unwrap(), FamilyKind::BannaiIto);
        assert!("hahn".parse::<FamilyKind>().is_err());
    }
}
