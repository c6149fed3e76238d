use crate::ext::ExtNonneg;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("operands belong to different spaces")]
    SpaceMismatch,
    #[error("exhaustive scan refused: {n} atoms exceeds the cap of {cap}")]
    SizeCap { n: usize, cap: usize },
    #[error("value {0} is outside the carrier of the pseudo-multiplication")]
    Domain(ExtNonneg),
    #[error("custom pseudo-multiplication produced {0}, which is not in [0, inf]")]
    NotAValue(f64),
    #[error("zero-map estimate did not converge; infimum lies in [{lo}, {hi}]")]
    Unresolved { lo: Box<ExtNonneg>, hi: Box<ExtNonneg> },
    #[error("degenerate pseudo-multiplication: O(1) = {0} is not zero")]
    Degenerate(ExtNonneg),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("invalid pseudo-multiplication: {0}")]
    InvalidOp(String),
    #[error("inconsistent witness: {0}")]
    InvalidWitness(String),
}

impl Error {
    /// True for the errors a caller should report as "input too large" rather
    /// than "input invalid".
    pub fn is_size_cap(&self) -> bool {
        matches!(self, Error::SizeCap { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
