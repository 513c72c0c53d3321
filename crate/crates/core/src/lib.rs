//! Exact construction and verification of orthogonal polynomial families for
//! the normalised alternating map.
//!
//! Starting from an ordinary monic orthogonal family `R_n` for a functional
//! `v`, the alternating pullback interleaves `R_n(x^2)` with the Christoffel
//! companions `(x - tau) S_n(x^2)`; an optional Geronimus step then moves the
//! orthogonality to a functional with a mass at a chosen point. Every identity
//! is checked in exact rational arithmetic.
//!
//! The algebra is generic over [`Scalar`]; the `Q*` aliases fix it to
//! arbitrary-precision rationals, which is what the families, the Pearson
//! search and the JSON layer use.

pub mod checks;
pub mod error;
pub mod families;
pub mod functional;
pub mod hyper;
pub mod io;
pub mod linalg;
pub mod mops;
pub mod pearson;
pub mod pipeline;
pub mod poly;
pub mod scalar;
pub mod transforms;

pub use checks::{
    annihilation_check, gram_check, pearson_check, pearson_residuals, pearson_residuals_direct, recurrence_check,
    PearsonPair, Report, Violation,
};
pub use error::{Error, Result};
pub use functional::{dunkl_d, dunkl_s, Generator, MomentFunctional};
pub use hyper::{pochhammer, HypSeries};
pub use mops::{mops_from_functional, recurrence_fit, MonicOps};
pub use pearson::{pearson_find, PearsonSearch};
pub use poly::Polynomial;
pub use scalar::{format_rational, int, parse_rational, ratio, Rational, Scalar};
pub use transforms::{
    alternating_pullback, christoffel_step, geronimus_functional, geronimus_step, pullback_functional,
    AlternatingFamily, GeronimusCoefficients, MassSeed,
};

pub type QPoly = Polynomial<Rational>;
pub type QFunctional = MomentFunctional<Rational>;
pub type QMonicOps = MonicOps<Rational>;
pub type QReport = Report<Rational>;
pub type QAlternatingFamily = AlternatingFamily<Rational>;
