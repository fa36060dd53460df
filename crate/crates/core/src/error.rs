use thiserror::Error;

use crate::scalar::Symbol;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero: symbol `{0}` has a negative exponent but was assigned 0")]
    DivisionByZero(Symbol),

    #[error("parse error at `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("symbol `{0}` does not admit negative exponents")]
    NegativeExponent(Symbol),

    #[error("operator spaces differ: {left:?} vs {right:?}")]
    SpaceMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },

    #[error("time-derivative order {0} exceeds the supported cap of 1")]
    TimeDerivativeOrder(u32),

    #[error("function does not supply the partial derivative {orders:?} (d/dt order {time_order})")]
    MissingPartial { orders: [u32; 2], time_order: u32 },

    #[error("point has {got} coordinates, operator space has {expected}")]
    PointDimension { expected: usize, got: usize },

    #[error("`{0}` is not a unit of the exponential-polynomial ring")]
    NotAUnit(String),

    #[error("operator contains a d/dt factor: {0}")]
    ContainsTimeDerivative(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("malformed Lie table: {0}")]
    MalformedTable(String),

    #[error("realization missing generator `{0}`")]
    MissingGenerator(String),

    #[error("gauge reduction inconsistent: {0}")]
    GaugeInconsistent(String),

    #[error("invalid label: {0}")]
    InvalidLabel(String),

    #[error("point lies on a singular locus: {0}")]
    SingularPoint(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("step size underflow at t = {t}: required step {step:e}")]
    StepUnderflow { t: f64, step: f64 },

    #[error("constraint violated: {quantity} drifted to {value:e} at t = {t}")]
    ConstraintViolation {
        quantity: &'static str,
        value: f64,
        t: f64,
    },
}
