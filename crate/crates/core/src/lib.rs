pub mod classes;
pub mod cli;
pub mod closure;
pub mod convolution;
pub mod error;
pub mod linalg;
pub mod roots;
pub mod scalar;
pub mod solver;
pub mod wire;

pub use error::{Error, Result};
pub use scalar::{parse_scalar, Rational, Scalar};
