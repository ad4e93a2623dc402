//! Choosing one boundary datum so that temperature or potential takes a
//! prescribed value on an interior plane.
//!
//! Every field is linear in the data, so the target is affine in the free
//! datum d: target(d) = target(0) + s·d. The slope s is the target of the
//! problem whose only nonzero datum is d = 1.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Orientation;
use crate::panel::{solve_panel, BoundaryData, Datum, FieldPoint, PanelSolution, ProblemSpec, Variant};

/// Field to be steered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetField {
    Temperature,
    Potential,
}

impl TargetField {
    pub fn name(self) -> &'static str {
        match self {
            TargetField::Temperature => "temperature",
            TargetField::Potential => "potential",
        }
    }

    fn pick(self, f: &FieldPoint) -> f64 {
        match self {
            TargetField::Temperature => f.temperature,
            TargetField::Potential => f.potential,
        }
    }
}

/// Data that may serve as the control for each problem.
pub fn admissible(orientation: Orientation, variant: Variant) -> &'static [Datum] {
    match (variant, orientation) {
        (Variant::I, Orientation::Thickness1) => &[Datum::Dbar, Datum::Tbar3, Datum::Qbar, Datum::Tbar],
        (Variant::I, Orientation::Thickness3) => &[Datum::Tbar1, Datum::Dbar, Datum::Qbar, Datum::Tbar],
        (Variant::II, _) => &[Datum::Tbar, Datum::Qbar, Datum::Phibar, Datum::Phibar2],
    }
}

/// Targets each problem may steer. The potential-prescribed problems steer
/// temperature only.
pub fn supported_targets(variant: Variant) -> &'static [TargetField] {
    match variant {
        Variant::I => &[TargetField::Temperature, TargetField::Potential],
        Variant::II => &[TargetField::Temperature],
    }
}

fn check_query(spec: &ProblemSpec, free: Datum, target: TargetField, x: f64) -> Result<()> {
    if !admissible(spec.orientation, spec.variant).contains(&free) {
        return Err(Error::InvalidFreeDatum { datum: free.name() });
    }
    if !supported_targets(spec.variant).contains(&target) {
        return Err(Error::UnsupportedTarget { target: target.name() });
    }
    if !(x >= -spec.h && x <= spec.h) {
        return Err(Error::OutOfDomain { x, h: spec.h });
    }
    Ok(())
}

/// Slope with its term-magnitude scale.
fn slope_with_scale(spec: &ProblemSpec, free: Datum, target: TargetField, x: f64) -> Result<(f64, f64)> {
    let mut unit = BoundaryData::zero(spec.variant);
    unit.set(free, 1.0)?;
    let sol = solve_panel(&spec.with_data(unit)?)?;
    Ok((target.pick(&sol.point(x)), target.pick(&sol.magnitude(x))))
}

/// d(target at x)/d(free datum). Other data in `spec` do not matter.
pub fn sensitivity(spec: &ProblemSpec, free: Datum, target: TargetField, x: f64) -> Result<f64> {
    check_query(spec, free, target, x)?;
    Ok(slope_with_scale(spec, free, target, x)?.0)
}

/// Relative size below which a slope counts as zero.
pub const UNCONTROLLABLE_TOL: f64 = 1e-12;

/// A control request: the problem with every datum except `free` set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlQuery {
    pub spec: ProblemSpec,
    pub free: Datum,
    pub target: TargetField,
    pub x_target: f64,
    pub value: f64,
}

/// Result of an inversion.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlOutcome {
    /// Value assigned to the free datum.
    pub datum_value: f64,
    pub sensitivity: f64,
    /// Target field at x_target with the free datum set to zero.
    pub baseline: f64,
    /// Target field at x_target after re-solving with the computed datum.
    pub achieved: f64,
    /// |achieved - value| / max(1, |value|).
    pub residual: f64,
    pub solution: PanelSolution,
}

/// Solves for the free datum and re-solves the completed problem.
pub fn invert(q: &ControlQuery) -> Result<ControlOutcome> {
    check_query(&q.spec, q.free, q.target, q.x_target)?;
    if !q.value.is_finite() {
        return Err(Error::NonFiniteData(format!("target value {}", q.value)));
    }
    let (slope, scale) = slope_with_scale(&q.spec, q.free, q.target, q.x_target)?;
    if !(slope.abs() > UNCONTROLLABLE_TOL * scale) {
        return Err(Error::Uncontrollable { slope });
    }
    let mut data = q.spec.data;
    data.set(q.free, 0.0)?;
    let baseline = q
        .target
        .pick(&solve_panel(&q.spec.with_data(data)?)?.point(q.x_target));
    let datum_value = (q.value - baseline) / slope;
    data.set(q.free, datum_value)?;
    let solution = solve_panel(&q.spec.with_data(data)?)?;
    let achieved = q.target.pick(&solution.point(q.x_target));
    Ok(ControlOutcome {
        datum_value,
        sensitivity: slope,
        baseline,
        achieved,
        residual: (achieved - q.value).abs() / q.value.abs().max(1.0),
        solution,
    })
}
