pub mod acceptance;
pub mod conjectures;
pub mod entropy;
pub mod equality;
pub mod error;
pub mod format;
pub mod frontier;
pub mod numerics;
pub mod observables;

pub use error::{Error, Result};
