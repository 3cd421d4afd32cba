use thiserror::Error;

/// Errors raised by the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a unit: {0}")]
    NonUnit(String),
    #[error("exponential argument has nonzero constant term: {0}")]
    NonNilpotentConstant(String),
    #[error("precision exceeded: need {needed}, have {available}")]
    PrecisionExceeded { needed: usize, available: usize },
    #[error("zero input")]
    ZeroInput,
    #[error("window ({low}, {high}) does not contain the leading order {needed}")]
    WindowTooNarrow { low: i64, high: i64, needed: i64 },
    #[error("flat condition violated: {0}")]
    FlatViolation(String),
    #[error("bad modulus: need m < r < 2m, got m = {m}, r = {r}")]
    BadModulus { m: usize, r: usize },
    #[error("not in the image of (1+(t^m)) ⊗ Λ²: {0}")]
    NotInImage(String),
    #[error("not good at {point} (t-order {order}): {detail}")]
    NotGood { point: String, order: usize, detail: String },
    #[error("cocycle condition ({condition}) fails: {detail}")]
    CocycleViolation { condition: u8, detail: String },
    #[error("multiple root: {0}")]
    MultipleRoot(String),
    #[error("cycle not admissible: {0}")]
    NotAdmissible(String),
    #[error("cycles are not congruent: {0}")]
    NotCongruent(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Check `m < r < 2m`.
pub fn check_modulus(m: usize, r: usize) -> Result<()> {
    if m >= 1 && m < r && r < 2 * m {
        Ok(())
    } else {
        Err(Error::BadModulus { m, r })
    }
}
