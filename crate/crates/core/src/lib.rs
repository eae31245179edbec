//! Exact and certified evaluation of basic hypergeometric series and the
//! identities built on them.

pub mod askey_wilson;
pub mod bigfloat;
pub mod error;
pub mod identities;
pub mod integrals;
pub mod products;
pub mod qkernel;
pub mod report;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::{ApproxScalar, ExactScalar, Mode, Scalar, Value};
