pub mod calculus;
pub mod dirac;
pub mod error;
pub mod field;
pub mod gcs;
pub mod induction;
pub mod kahler;
pub mod matrix;
pub mod sample;
pub mod spinor;
pub mod subspace;

pub use error::{Error, Result};
pub use field::{Field, C, Q};
pub use matrix::Matrix;
pub use subspace::Subspace;
