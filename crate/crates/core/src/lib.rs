pub mod analytic;
pub mod circumscribe;
pub mod error;
pub mod nest;
pub mod polygon;
pub mod primes;
pub mod translate;
pub mod validate;

pub use error::{Error, Result};
