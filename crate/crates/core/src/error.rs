use thiserror::Error;

/// Errors raised by the exact field layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("field descriptor mismatch: {left} vs {right}")]
    DescriptorMismatch { left: String, right: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not an odd prime")]
    NotAnOddPrime(u64),
    #[error("prime {0} exceeds the supported bound {bound}", bound = crate::field::MAX_PRIME)]
    PrimeTooLarge(u64),
    #[error("{d} is a square in {base}; the extension would not be a field")]
    SquareAdjoined { base: String, d: String },
    #[error("quadratic extensions may only be taken over q or fp:<p>")]
    NestingTooDeep,
    #[error("field {0} is infinite")]
    Infinite(String),
    #[error("field {0} is too large to enumerate")]
    TooLargeToEnumerate(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

impl FieldError {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        FieldError::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}

/// Crate-wide error type for curve, quartic and extension operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("point ({x}, {y}) does not lie on the curve")]
    NotOnCurve { x: String, y: String },
    #[error("({x}, {y}) is the singular point of the curve")]
    SingularPoint { x: String, y: String },
    #[error("the point at infinity has no affine 2-division quartic")]
    PointAtInfinity,
    #[error("the point is 2-torsion (y = 0)")]
    TwoTorsion,
    #[error("e(q) vanishes")]
    ZeroInvariant,
    #[error("quartic is not a 2-division quartic (e(q) = 0, a(q) = {a_q})")]
    NotADivision { a_q: String },
    #[error("homogeneous quartic precondition failed: {0}")]
    Homogeneous(String),
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
    #[error("element is not primitive: its Galois orbit has {distinct} distinct members")]
    NotPrimitive { distinct: usize },
    #[error("statistics check needs four rational halves: {0}")]
    Halves(String),
    #[error("root finding is not supported over {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
