use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("root operand could not be certified positive (enclosure {enclosure})")]
    PositivityViolation { enclosure: String },
    #[error("division by an interval that could not be separated from zero")]
    DivisionByZero,
    #[error("precision cap of {cap_digits} digits reached before the requested width")]
    PrecisionExhausted { cap_digits: u32 },
    #[error("degenerate interval: endpoints are equal")]
    DegenerateInterval,
    #[error("interval endpoints are out of order")]
    UnorderedInterval,
    #[error("radicand {0} is not squarefree")]
    NotSquarefree(u64),
    #[error("quadratic fields Q(sqrt({0})) and Q(sqrt({1})) cannot be mixed")]
    FieldMismatch(u64, u64),
    #[error("the zero polynomial has no sign certificate")]
    ZeroPolynomial,
    #[error("root index must be at least 1 (got {0})")]
    BadRootIndex(u32),
    #[error("value must be positive: {0}")]
    NonPositive(String),
}
