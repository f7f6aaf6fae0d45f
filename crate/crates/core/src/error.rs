use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("ambient polynomial required")]
    AmbientPolynomialRequired,
    #[error("input is not in S3 normal form")]
    NotNormalForm,
    #[error("spinor space mismatch: expected {expected}, found {found}")]
    SpaceMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("basis index out of range: {0}")]
    BadIndex(String),
    #[error("expansion failed: nonzero residual after degree bound {bound}")]
    ExpansionFailed { bound: u32 },
    #[error("matrix size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("simple algebra sl(n) requires n >= 2, got {0}")]
    BadRank(usize),
    #[error("exponent overflow")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
