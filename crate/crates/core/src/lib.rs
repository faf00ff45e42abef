//! Spectra, matrix elements and sum rules for a particle in a linear
//! potential on the half-line with the Robin boundary condition
//! psi(0) = lambda x0 psi'(0).

pub mod error;
pub mod special;
pub mod elements;
pub mod oracle;
pub mod qbounce;
pub mod quadrature;
pub mod rules;
pub mod spectrum;

pub use error::{Error, Result};
