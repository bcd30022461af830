use thiserror::Error;

use crate::flows::FlowError;
use crate::lambert::LambertError;
use crate::series::SeriesError;
use crate::virasoro::fixture::FixtureError;
use crate::virasoro::OperatorError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} needs order >= {min}, got {got}")]
    OrderTooSmall { what: &'static str, got: usize, min: usize },
    #[error("{what}: working precision exhausted before reaching order {order}")]
    PrecisionExhausted { what: &'static str, order: usize },
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Lambert(#[from] LambertError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require(what: &'static str, got: usize, min: usize) -> Result<()> {
    if got < min {
        return Err(Error::OrderTooSmall { what, got, min });
    }
    Ok(())
}
