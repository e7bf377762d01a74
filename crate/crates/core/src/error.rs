use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan datum: {0}")]
    InvalidCartan(String),
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("root datum mismatch: {0}")]
    DatumMismatch(String),
    #[error("value is not in the declared lattice: {0}")]
    NotIntegral(String),
    #[error("group is not finite: {0}")]
    InfiniteGroup(String),
    #[error("unsupported type for this operation: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("normalization defect is structural: {0}")]
    StructuralDefect(String),
}
