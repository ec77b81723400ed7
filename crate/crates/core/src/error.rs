use alloc::string::String;
use core::fmt;

/// Errors raised by kernel operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelError {
    DimensionMismatch { expected: usize, got: usize },
    OutsideDomain,
    NoMatchingRegion,
    PoleHit,
    ShapeMismatch,
    LimitMismatch,
    InvalidSpec(String),
    EmptyGrid,
    PreconditionFailed(String),
}

impl fmt::Display for KernelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            KernelError::OutsideDomain => write!(f, "point outside domain"),
            KernelError::NoMatchingRegion => write!(f, "no matching region"),
            KernelError::PoleHit => write!(f, "pole hit during evaluation"),
            KernelError::ShapeMismatch => write!(f, "shape mismatch"),
            KernelError::LimitMismatch => write!(f, "declared limit mismatch"),
            KernelError::InvalidSpec(s) => write!(f, "invalid specification: {s}"),
            KernelError::EmptyGrid => write!(f, "empty grid"),
            KernelError::PreconditionFailed(s) => write!(f, "precondition failed: {s}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, KernelError>;
