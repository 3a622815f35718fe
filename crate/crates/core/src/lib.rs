pub mod check;
pub mod derivatives;
pub mod error;
pub mod exterior;
pub mod flat;
pub mod g2;
pub mod linalg;
pub mod model;
pub mod scalar;
pub mod structure;
pub mod torsion_space;

pub use error::{Error, Result};
