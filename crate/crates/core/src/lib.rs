pub mod adet;
pub mod classify;
pub mod construct;
pub mod ehrhart;
pub mod error;
pub mod exactmath;
pub mod polytope;
pub mod suite;
pub mod triang;

pub use error::{Error, Result};
