use crate::blade::Signature;

/// Errors raised by the algebra operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("signature Cl({p},{q}) exceeds p + q <= 5")]
    SignatureTooLarge { p: usize, q: usize },
    #[error("operands live in different algebras: {left} vs {right}")]
    SignatureMismatch { left: Signature, right: Signature },
    #[error("grade {grade} outside 0..={n}")]
    GradeOutOfRange { grade: usize, n: usize },
    #[error("map is defined for n = {expected}, operand has n = {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operation not available for n = {n}")]
    DimensionOutOfRange { n: usize },
    #[error("length-delta table must start with +1 and hold only +-1, at most 6 entries")]
    InvalidDeltaTable,
    #[error("coefficient bound must be at least 1")]
    InvalidBound,
    #[error("blade {blade} does not belong to {sig}")]
    BladeOutOfRange { blade: crate::blade::Blade, sig: Signature },
    #[error("involution chain broken at step {step}: intermediate has grades outside {expected}")]
    SubspaceViolation {
        step: usize,
        expected: crate::involution::GradeSet,
    },
    #[error("chain is not valid for this algebra: {0}")]
    InvalidChain(&'static str),
    #[error("element is not invertible (discriminant is zero)")]
    NotInvertible,
}
