use thiserror::Error;

/// Errors raised by the verification kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inner series has nonzero constant term")]
    NonzeroConstant,
    #[error("division by zero")]
    DivisionByZero,
    #[error("series is not invertible: constant term is zero")]
    NotInvertible,
    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("odd-degree support at x^{0}")]
    OddSupport(usize),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(what: &'static str, detail: impl Into<String>) -> Error {
    Error::OutOfRange {
        what,
        detail: detail.into(),
    }
}

pub(crate) fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::CheckFailed(msg()))
    }
}
