use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Exact division by a linear factor left a nonzero remainder.
    #[error("polynomial is not divisible by (x - {root}): remainder {remainder}")]
    NotDivisible { root: String, remainder: String },

    /// A Pochhammer factor or normalising denominator vanished.
    #[error("degenerate parameters at n = {n}: {context}")]
    DegenerateParameters { n: usize, context: String },

    #[error("moment {requested} requested but only {available} moments are stored")]
    InsufficientMoments { requested: usize, available: usize },

    /// `<u, P_n^2> = 0`: the functional is not regular up to the requested depth.
    #[error("functional is not regular: <u, P_{0}^2> = 0")]
    NotRegularUpTo(usize),

    #[error("family is not a three-term recurrence candidate at n = {n}")]
    NotAnOpsCandidate { n: usize },

    #[error("recurrence coefficient gamma_{n} vanishes")]
    DegenerateRecurrence { n: usize },

    /// `R_n(tau^2) = 0`, so the Christoffel kernel quotient is undefined.
    #[error("R_{0}(tau^2) = 0: Christoffel kernel vanishes")]
    KernelVanishes(usize),

    #[error("cannot fit the Dirac mass: {0}")]
    CannotFitMass(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub(crate) fn degenerate(n: usize, context: impl Into<String>) -> Self {
        Error::DegenerateParameters {
            n,
            context: context.into(),
        }
    }

    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    /// Re-anchors a parse error at a document location.
    pub fn at(self, location: impl Into<String>) -> Self {
        match self {
            Error::Parse { message, .. } => Error::Parse {
                location: location.into(),
                message,
            },
            other => other,
        }
    }
}
