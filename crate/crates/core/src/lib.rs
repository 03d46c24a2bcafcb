pub mod equivariant;
pub mod error;
pub mod f2linalg;
pub mod fixtures;
pub mod formats;
pub mod graded;
pub mod involutive;
pub mod knot;
pub mod samples;
pub mod simplicial;

pub use error::{Error, Result};
