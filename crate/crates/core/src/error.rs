use alloc::string::String;

/// Errors raised by the toolkit.
///
/// Variants that carry a `String` name the offending object (a place, a
/// class, a generator) so that reports can point at it.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("zero root present")]
    ZeroRoot,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular matrix")]
    Singular,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("not irreducible: {0}")]
    NotIrreducible(String),
    #[error("not invariant: {0}")]
    NotInvariant(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("prime factor exceeds 64 bits")]
    PrimeTooLarge,
    #[error("separation failure at p = {0}")]
    SeparationFailure(u64),
    #[error("certification failure: {0}")]
    Certification(String),
    #[error("precision unreachable: achieved width 2^-{achieved_bits}")]
    Precision { achieved_bits: i64 },
    #[error("no positive entropy in designated block for this n")]
    NoPositiveEntropy,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = core::result::Result<T, Error>;
