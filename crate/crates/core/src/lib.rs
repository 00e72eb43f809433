pub mod adversarial;
pub mod analysis;
pub mod cli;
pub mod error;
pub mod kernel;
pub mod matrix;
pub mod rng;
pub mod scalar;
pub mod strategy;

pub use error::{Error, Result};
pub use matrix::{SignedPermutation, SymMatrix};
pub use scalar::{BigFloat, Precision, Scalar};
