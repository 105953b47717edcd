use thiserror::Error;

use crate::dsl::ParseError;
use crate::jet::JetError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown catalog curve `{0}`")]
    UnknownCurve(String),
    #[error("parameter `{0}` is required")]
    MissingParameter(String),
    #[error("parameter `{name}` must be positive, got {value}")]
    InvalidParameter { name: String, value: f64 },
    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),
    #[error("{op}: the curve is singular at t = {t}")]
    Singular { op: &'static str, t: f64 },
    #[error("{op}: expected {expected}, found {found}")]
    WrongClass {
        op: &'static str,
        expected: &'static str,
        found: String,
    },
    #[error("{op}: jet order {order} is too low, need at least {needed}")]
    OrderTooLow {
        op: &'static str,
        order: usize,
        needed: usize,
    },
    #[error("quadrature did not converge on [{a}, {b}] (last difference {diff:e})")]
    QuadratureFailure { a: f64, b: f64, diff: f64 },
    #[error("{op}: root finding failed for target {target}")]
    RootNotFound { op: &'static str, target: f64 },
    #[error("{op}: {message}")]
    Domain { op: &'static str, message: String },
    #[error("{op}: inconsistent evaluations ({a} vs {b})")]
    SelfCheck { op: &'static str, a: f64, b: f64 },
}

impl Error {
    pub(crate) fn domain(op: &'static str, message: impl Into<String>) -> Self {
        Error::Domain {
            op,
            message: message.into(),
        }
    }
}
