//! The four boundary-control problems: statement, explicit solution and
//! field evaluation.

mod problem;
mod solve;
mod state;

pub use problem::{BoundaryData, Datum, LowerElectric, PanelTemplate, ProblemSpec, Variant};
pub use solve::{assemble_anchored, assemble_coefficients, solve_panel, LowerFace, PanelSolution};
pub use state::{
    displacement_gains, BoundaryCheck, FieldPoint, FieldResidual, PanelGeometry, StateSample,
    STATE_COLUMNS,
};
