pub mod arith;
pub mod error;
pub mod families;
pub mod flows;
pub mod identities;
pub mod lambert;
pub mod named;
pub mod registry;
pub mod report;
pub mod series;
pub mod virasoro;

pub use error::{Error, Result};
