//! Explicit geometric upper bounds for Courant-sharp Dirichlet eigenvalues.

pub mod bounds;
pub mod config;
pub mod error;
pub mod geometry;
pub mod specfun;
pub mod spectra;

pub use error::{Error, Result};
