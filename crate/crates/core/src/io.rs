//! File formats: material and problem JSON, schedule JSON, profile CSV.

use std::fmt;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::control::TargetField;
use crate::error::Error;
use crate::model::{MaterialHexagonal, Orientation};
use crate::panel::{BoundaryData, Datum, PanelTemplate, ProblemSpec, StateSample, Variant, STATE_COLUMNS};
use crate::quasistatic::{Schedule, ScheduleSample};

/// Failure while reading inputs.
#[derive(Debug)]
pub enum InputError {
    /// File missing or unreadable.
    Read(String),
    /// Malformed JSON or a field that does not fit the schema.
    Schema(String),
    /// Well-formed input that violates a domain invariant.
    Domain(Error),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Read(m) | InputError::Schema(m) => f.write_str(m),
            InputError::Domain(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for InputError {}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError::Domain(e)
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::Read(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| InputError::Schema(format!("{}: {e}", path.display())))
}

fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Schema(e.to_string()))
}

/// Reads and validates a material file.
pub fn load_material(path: &Path) -> Result<MaterialHexagonal, InputError> {
    let m: MaterialHexagonal = read_json(path)?;
    m.validate()?;
    Ok(m)
}

/// Parses and validates material JSON held in memory.
pub fn material_from_str(text: &str) -> Result<MaterialHexagonal, InputError> {
    let m: MaterialHexagonal = parse_json(text)?;
    m.validate()?;
    Ok(m)
}

/// Control request inside a problem file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControlRequest {
    pub free: Datum,
    pub target: TargetField,
    pub x: f64,
    pub value: f64,
}

/// Problem file: geometry, variant and optionally data and a control request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub orientation: Orientation,
    pub variant: Variant,
    pub h: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<BoundaryData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub control: Option<ControlRequest>,
}

impl ProblemFile {
    pub fn template(&self, material: MaterialHexagonal) -> Result<PanelTemplate, InputError> {
        Ok(PanelTemplate::new(material, self.orientation, self.variant, self.h)?)
    }

    pub fn spec(&self, material: MaterialHexagonal) -> Result<ProblemSpec, InputError> {
        let data = self
            .data
            .ok_or_else(|| InputError::Schema("problem file has no \"data\" object".into()))?;
        Ok(self.template(material)?.with_data(data)?)
    }
}

pub fn load_problem(path: &Path) -> Result<ProblemFile, InputError> {
    read_json(path)
}

pub fn problem_from_str(text: &str) -> Result<ProblemFile, InputError> {
    parse_json(text)
}

/// Reads a JSON array of `{tau, data}` objects.
pub fn load_schedule(path: &Path) -> Result<Schedule, InputError> {
    let samples: Vec<ScheduleSample> = read_json(path)?;
    Ok(Schedule::new(samples)?)
}

/// Shortest decimal that reads back to the same double. Plain notation for
/// moderate magnitudes, exponent notation otherwise.
pub fn fmt_num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Profile CSV: header row, then one row per sample.
pub fn write_profile_csv<W: Write>(w: W, samples: &[StateSample]) -> std::io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(STATE_COLUMNS)?;
    for s in samples {
        out.write_record(s.columns().iter().map(|v| fmt_num(*v)))?;
    }
    out.flush()
}

/// Long-format CSV of a sweep: `tau` followed by the profile columns.
pub fn write_sweep_csv<W: Write>(w: W, rows: &[(f64, Vec<StateSample>)]) -> std::io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(std::iter::once("tau").chain(STATE_COLUMNS))?;
    for (tau, samples) in rows {
        for s in samples {
            out.write_record(
                std::iter::once(fmt_num(*tau)).chain(s.columns().iter().map(|v| fmt_num(*v))),
            )?;
        }
    }
    out.flush()
}
