use thiserror::Error;

use crate::states::Family;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix has a NaN or infinite entry")]
    NonFinite,

    #[error("expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("NotHermitian: max |m - m†| entry is {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("TraceNotOne: trace is {trace} (deviation {:e})", (trace - 1.0).abs())]
    TraceNotOne { trace: f64 },

    #[error("NotPSD: min eigenvalue {min_eigenvalue:e}")]
    NotPsd { min_eigenvalue: f64 },

    #[error("Unphysical: min eigenvalue {min_eigenvalue:e}")]
    Unphysical { min_eigenvalue: f64 },

    #[error("ParamOutOfRange: {name} = {value} outside {range}")]
    ParamOutOfRange { name: &'static str, value: f64, range: &'static str },

    #[error("NegativeD: D(c, s) = {d:e} < 0")]
    NegativeD { d: f64 },

    #[error("NotXForm: entry ({row}, {col}) has modulus {modulus:e}")]
    NotXForm { row: usize, col: usize, modulus: f64 },

    #[error("UnsupportedFamily: {family:?} {reason}")]
    UnsupportedFamily { family: Family, reason: &'static str },

    #[error("OptimizerFailure: discord refinement did not converge in {iterations} iterations (spread {spread:e})")]
    OptimizerFailure { iterations: usize, spread: f64 },

    #[error("invalid time grid: {0}")]
    InvalidGrid(&'static str),
}

impl Error {
    /// True for errors that come from the caller's parameters or state rather
    /// than from a numerical routine.
    pub fn is_invalid_input(&self) -> bool {
        !matches!(self, Error::OptimizerFailure { .. })
    }
}

pub(crate) fn check_range(
    name: &'static str,
    value: f64,
    range: &'static str,
    ok: bool,
) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::ParamOutOfRange { name, value, range })
    }
}
