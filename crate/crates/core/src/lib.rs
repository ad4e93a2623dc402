//! Closed-form quasi-static boundary-control solutions for a piezothermoelastic
//! plate of hexagonal 6mm symmetry, with a finite-difference cross-check.
//!
//! The plate occupies -h ≤ x ≤ h along its normal, which is either x1 or the
//! poling axis x3. Upper-face data fix temperature, potential and three
//! tractions; lower-face data fix the displacements, the heat inflow and
//! either the normal charge (variant I) or the potential (variant II).

pub mod cli;
pub mod control;
pub mod error;
pub mod fd;
pub mod general;
pub mod io;
pub mod model;
pub mod panel;
pub mod quasistatic;

pub use error::{Error, Result};
