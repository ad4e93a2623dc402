//! Material data, compressed notation, constitutive evaluation and reduction
//! to the thickness-direction scalar system.

pub mod constitutive;
pub mod material;
pub mod reduced;
pub mod voigt;

pub use constitutive::KinematicState;
pub use material::{validate_material, MaterialHexagonal};
pub use reduced::{reduce, Orientation, ReducedParams};
