use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("c66 = {c66} does not match (c11 - c12)/2 = {expected}")]
    SymmetryViolation { c66: f64, expected: f64 },

    #[error("non-physical material coefficient {field} = {value}: {reason}")]
    NonPhysical {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("electro-thermal cross coefficient {field} is zero")]
    DegenerateCrossFlux { field: &'static str },

    #[error("exponential rate a is zero (no pyroelectric/thermal coupling); closed form undefined")]
    DegenerateCoupling,

    #[error("coupling denominator {name} = {value} is singular")]
    SingularDenominator { name: &'static str, value: f64 },

    #[error("non-finite input: {0}")]
    NonFiniteData(String),

    #[error("coordinate {x} outside [-{h}, {h}]")]
    OutOfDomain { x: f64, h: f64 },

    #[error("target is insensitive to the free datum (slope {slope})")]
    Uncontrollable { slope: f64 },

    #[error("datum {datum} is not an admissible control for this problem")]
    InvalidFreeDatum { datum: &'static str },

    #[error("target field {target} cannot be controlled in this problem")]
    UnsupportedTarget { target: &'static str },

    #[error("finite-difference system is singular: {0}")]
    SingularSystem(String),

    #[error("grid with {n} intervals is too coarse (need at least {min})")]
    GridTooCoarse { n: usize, min: usize },

    #[error("closed-form and discrete solutions belong to different problems")]
    SpecMismatch,

    #[error("tau = {tau} outside schedule span [{start}, {end}]")]
    OutOfSchedule { tau: f64, start: f64, end: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable name, used on the CLI and across the C ABI.
    pub fn name(&self) -> &'static str {
        match self {
            Error::SymmetryViolation { .. } => "SymmetryViolation",
            Error::NonPhysical { .. } => "NonPhysical",
            Error::DegenerateCrossFlux { .. } => "DegenerateCrossFlux",
            Error::DegenerateCoupling => "DegenerateCoupling",
            Error::SingularDenominator { .. } => "SingularDenominator",
            Error::NonFiniteData(_) => "NonFiniteData",
            Error::OutOfDomain { .. } => "OutOfDomain",
            Error::Uncontrollable { .. } => "Uncontrollable",
            Error::InvalidFreeDatum { .. } => "InvalidFreeDatum",
            Error::UnsupportedTarget { .. } => "UnsupportedTarget",
            Error::SingularSystem(_) => "SingularSystem",
            Error::GridTooCoarse { .. } => "GridTooCoarse",
            Error::SpecMismatch => "SpecMismatch",
            Error::OutOfSchedule { .. } => "OutOfSchedule",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}
