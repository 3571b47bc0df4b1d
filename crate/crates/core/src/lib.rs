pub mod algebra;
pub mod classifier;
pub mod corpus;
pub mod equation;
pub mod error;
pub mod fpoly;
pub mod local;
pub mod parse;
pub mod reducer;
pub mod report;
pub mod series;

pub use error::{Error, Result};
