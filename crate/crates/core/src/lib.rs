pub mod classify;
pub mod cli;
pub mod error;
pub mod frontal;
pub mod geometry;
pub mod germs;
pub mod jets;
pub mod numeric;
pub mod scalar;

pub use error::{Error, Result};
pub use jets::{Jet, Var};
pub use scalar::{Rational, Scalar};
