pub mod chain;
pub mod compute;
pub mod document;
pub mod error;
pub mod filtered;
pub mod fixtures;
pub mod generate;
pub mod linalg;
pub mod poincare;
pub mod sign;
pub mod suites;
pub mod torsion;

pub use error::{Error, Result};
pub use linalg::{IntMatrix, RatMatrix};
pub use sign::SignK1;
