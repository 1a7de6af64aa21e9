pub mod complex;
pub mod cli;
pub mod cones;
pub mod derham;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod model;
pub mod monoid;

pub use error::{Error, Result};
