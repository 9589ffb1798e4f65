pub mod cli;
pub mod dynkin;
pub mod error;
pub mod forms;
pub mod homspace;
pub mod lattice;
pub mod puzzle;

pub use error::{Error, Result};
