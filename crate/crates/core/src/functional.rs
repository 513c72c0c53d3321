//! Moment functionals and the alternating operator calculus.
//!
//! A functional is known through its moments `<u, x^k>`. Moments are either a
//! stored prefix or produced on demand by a rule; derived functionals (products
//! by a polynomial, transposes, pushforwards) are rules that read their parent.
//! Computed moments are cached, so re-querying always returns the same value.

use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{sign_pow, Scalar};

type RuleFn<T> = dyn Fn(usize, &[T]) -> Result<T> + Send + Sync;

/// Where the moments of a functional come from. Carried along for serialisation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Stored,
    /// A closed-form rule with its parameters as canonical strings.
    Named {
        rule: String,
        params: Vec<(String, String)>,
    },
    /// Built from another functional by one of the operators below.
    Derived(String),
}

enum Source<T> {
    Stored,
    Rule {
        f: Box<RuleFn<T>>,
        bound: Option<usize>,
    },
}

struct Inner<T> {
    cache: Mutex<Vec<T>>,
    source: Source<T>,
    generator: Generator,
}

/// A linear functional on polynomials, shared and cheap to clone.
pub struct MomentFunctional<T> {
    inner: Arc<Inner<T>>,
}

impl<T> Clone for MomentFunctional<T> {
    fn clone(&self) -> Self {
        MomentFunctional {
            inner: Arc::clone(&self.inner),
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for MomentFunctional<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cache = self.inner.cache.lock().expect("moment cache poisoned");
        f.debug_struct("MomentFunctional")
            .field("generator", &self.inner.generator)
            .field("known", &*cache)
            .finish()
    }
}

impl<T: Scalar> MomentFunctional<T> {
    /// A functional known only through a finite moment prefix.
    pub fn from_moments(moments: Vec<T>) -> Self {
        Self::tabulated(moments, Generator::Stored)
    }

    /// A stored prefix that remembers the rule it was tabulated from.
    pub fn tabulated(moments: Vec<T>, generator: Generator) -> Self {
        MomentFunctional {
            inner: Arc::new(Inner {
                cache: Mutex::new(moments),
                source: Source::Stored,
                generator,
            }),
        }
    }

    /// A functional whose `k`-th moment is `rule(k, &moments[..k])`.
    ///
    /// Moments are produced in order, so a rule may refer to the earlier ones.
    pub fn from_rule<F>(generator: Generator, rule: F) -> Self
    where
        F: Fn(usize, &[T]) -> Result<T> + Send + Sync + 'static,
    {
        Self::build(generator, Box::new(rule), None)
    }

    fn build(generator: Generator, f: Box<RuleFn<T>>, bound: Option<usize>) -> Self {
        MomentFunctional {
            inner: Arc::new(Inner {
                cache: Mutex::new(Vec::new()),
                source: Source::Rule { f, bound },
                generator,
            }),
        }
    }

    /// Same rule, but only the first `count` moments may be requested.
    pub fn bounded<F>(generator: Generator, count: usize, rule: F) -> Self
    where
        F: Fn(usize, &[T]) -> Result<T> + Send + Sync + 'static,
    {
        Self::build(generator, Box::new(rule), Some(count))
    }

    pub fn zero() -> Self {
        Self::from_rule(Generator::Derived("zero".into()), |_, _| Ok(T::zero()))
    }

    pub fn generator(&self) -> &Generator {
        &self.inner.generator
    }

    /// Number of moments that can be requested, `None` when unlimited.
    ///
    /// Derived functionals report `None` and fail on demand if their parent runs out.
    pub fn available(&self) -> Option<usize> {
        match &self.inner.source {
            Source::Stored => Some(self.inner.cache.lock().expect("moment cache poisoned").len()),
            Source::Rule { bound, .. } => *bound,
        }
    }

    /// `<u, x^k>`.
    pub fn moment(&self, k: usize) -> Result<T> {
        let mut cache = self.inner.cache.lock().expect("moment cache poisoned");
        if let Some(m) = cache.get(k) {
            return Ok(m.clone());
        }
        match &self.inner.source {
            Source::Stored => Err(Error::InsufficientMoments {
                requested: k,
                available: cache.len(),
            }),
            Source::Rule { f, bound } => {
                if let Some(b) = *bound {
                    if k >= b {
                        return Err(Error::InsufficientMoments {
                            requested: k,
                            available: b,
                        });
                    }
                }
                while cache.len() <= k {
                    let next = f(cache.len(), &cache)?;
                    cache.push(next);
                }
                Ok(cache[k].clone())
            }
        }
    }

    /// The first `count` moments.
    pub fn moments(&self, count: usize) -> Result<Vec<T>> {
        if count == 0 {
            return Ok(Vec::new());
        }
        self.moment(count - 1)?;
        let cache = self.inner.cache.lock().expect("moment cache poisoned");
        Ok(cache[..count].to_vec())
    }

    /// `<u, p>`.
    pub fn apply(&self, p: &Polynomial<T>) -> Result<T> {
        if let Some(deg) = p.degree() {
            self.moment(deg)?;
        }
        p.coeffs()
            .iter()
            .enumerate()
            .try_fold(T::zero(), |acc, (k, c)| {
                if c.is_zero() {
                    Ok(acc)
                } else {
                    Ok(acc + c.clone() * self.moment(k)?)
                }
            })
    }

    /// `phi u`, defined by `<phi u, p> = <u, phi p>`.
    pub fn mul_poly(&self, phi: &Polynomial<T>) -> Self {
        let parent = self.clone();
        let phi = phi.clone();
        Self::from_rule(Generator::Derived("product".into()), move |k, _| {
            phi.coeffs()
                .iter()
                .enumerate()
                .try_fold(T::zero(), |acc, (j, c)| {
                    if c.is_zero() {
                        Ok(acc)
                    } else {
                        Ok(acc + c.clone() * parent.moment(k + j)?)
                    }
                })
        })
    }

    /// Transpose of the divided difference: `<D u, p> = -<u, D p>`.
    pub fn transpose_d(&self) -> Self {
        let parent = self.clone();
        Self::from_rule(Generator::Derived("transpose-D".into()), move |n, _| {
            if n % 2 == 0 {
                Ok(T::zero())
            } else {
                Ok(-(sign_pow::<T>((n - 1) / 2) * parent.moment(n - 1)?))
            }
        })
    }

    /// Transpose of the averaging operator: `<S u, p> = <u, S p>`.
    pub fn transpose_s(&self) -> Self {
        let parent = self.clone();
        Self::from_rule(Generator::Derived("transpose-S".into()), move |n, _| {
            if n % 2 == 1 {
                Ok(T::zero())
            } else {
                Ok(sign_pow::<T>(n / 2) * parent.moment(n)?)
            }
        })
    }

    /// Transpose of `p(x) -> p(x^2)`: moment `k` is the parent's moment `2k`.
    pub fn sigma_pushforward(&self) -> Self {
        let parent = self.clone();
        Self::from_rule(Generator::Derived("sigma".into()), move |k, _| parent.moment(2 * k))
    }
}

/// Divided-difference operator: `D(x^{2k}) = 0`, `D(x^{2k+1}) = (-1)^k x^{2k}`.
pub fn dunkl_d<T: Scalar>(p: &Polynomial<T>) -> Polynomial<T> {
    let (_, odd) = p.parity_decompose();
    odd.compose_square()
}

/// Averaging operator: `S(x^{2k+1}) = 0`, `S(x^{2k}) = (-1)^k x^{2k}`.
pub fn dunkl_s<T: Scalar>(p: &Polynomial<T>) -> Polynomial<T> {
    let (even, _) = p.parity_decompose();
    even.compose_square()
}
