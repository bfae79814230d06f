pub mod algebra;
pub mod annih;
pub mod bracket;
pub mod cli;
pub mod constructions;
pub mod dlocus;
pub mod error;
pub mod linalg;
pub mod sample;
pub mod scalar;
pub mod verify;

pub use algebra::{ComplexScalar, Element};
pub use error::{CdError, Result};
pub use linalg::{Matrix, Subspace};
pub use scalar::Scalar;
