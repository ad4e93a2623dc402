//! Problem statement: orientation, lower-face electric condition and the ten
//! boundary data.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{reduce, validate_material, MaterialHexagonal, Orientation, ReducedParams};

/// Electric condition on the lower face x = -h.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// Normal charge prescribed.
    I,
    /// Potential prescribed.
    II,
}

impl Variant {
    pub fn label(self) -> &'static str {
        match self {
            Variant::I => "I",
            Variant::II => "II",
        }
    }
}

/// Lower-face electric datum; its kind fixes the variant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LowerElectric {
    /// -D_n(-h) [C/m²].
    Charge(f64),
    /// φ(-h) [V].
    Potential(f64),
}

impl LowerElectric {
    pub fn value(self) -> f64 {
        match self {
            LowerElectric::Charge(v) | LowerElectric::Potential(v) => v,
        }
    }

    pub fn variant(self) -> Variant {
        match self {
            LowerElectric::Charge(_) => Variant::I,
            LowerElectric::Potential(_) => Variant::II,
        }
    }

    pub fn of(variant: Variant, value: f64) -> Self {
        match variant {
            Variant::I => LowerElectric::Charge(value),
            Variant::II => LowerElectric::Potential(value),
        }
    }
}

/// The ten boundary data.
///
/// Upper face x = +h: temperature, potential and three traction components.
/// Lower face x = -h: three displacements, inward heat flux and the electric
/// datum. Which Voigt stress components the tractions prescribe depends on
/// the orientation, see [`Orientation::traction_components`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBoundaryData", into = "RawBoundaryData")]
pub struct BoundaryData {
    pub upper_temperature: f64,
    pub upper_potential: f64,
    pub upper_traction: [f64; 3],
    pub lower_displacement: [f64; 3],
    /// -q_n(-h) [W/m²].
    pub lower_heat_inflow: f64,
    pub lower_electric: LowerElectric,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBoundaryData {
    #[serde(rename = "Tbar")]
    upper_temperature: f64,
    phibar: f64,
    tbar1: f64,
    tbar2: f64,
    tbar3: f64,
    ubar1: f64,
    ubar2: f64,
    ubar3: f64,
    qbar: f64,
    #[serde(rename = "Dbar", default, skip_serializing_if = "Option::is_none")]
    charge: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phibar2: Option<f64>,
}

impl TryFrom<RawBoundaryData> for BoundaryData {
    type Error = String;
    fn try_from(r: RawBoundaryData) -> std::result::Result<Self, String> {
        let lower_electric = match (r.charge, r.phibar2) {
            (Some(d), None) => LowerElectric::Charge(d),
            (None, Some(p)) => LowerElectric::Potential(p),
            (Some(_), Some(_)) => return Err("exactly one of Dbar and phibar2 may be given".into()),
            (None, None) => return Err("one of Dbar or phibar2 is required".into()),
        };
        Ok(BoundaryData {
            upper_temperature: r.upper_temperature,
            upper_potential: r.phibar,
            upper_traction: [r.tbar1, r.tbar2, r.tbar3],
            lower_displacement: [r.ubar1, r.ubar2, r.ubar3],
            lower_heat_inflow: r.qbar,
            lower_electric,
        })
    }
}

impl From<BoundaryData> for RawBoundaryData {
    fn from(b: BoundaryData) -> Self {
        let (charge, phibar2) = match b.lower_electric {
            LowerElectric::Charge(d) => (Some(d), None),
            LowerElectric::Potential(p) => (None, Some(p)),
        };
        RawBoundaryData {
            upper_temperature: b.upper_temperature,
            phibar: b.upper_potential,
            tbar1: b.upper_traction[0],
            tbar2: b.upper_traction[1],
            tbar3: b.upper_traction[2],
            ubar1: b.lower_displacement[0],
            ubar2: b.lower_displacement[1],
            ubar3: b.lower_displacement[2],
            qbar: b.lower_heat_inflow,
            charge,
            phibar2,
        }
    }
}

/// Names one boundary datum. The last slot of the data array is `Dbar` in
/// variant I and `Phibar2` in variant II.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Datum {
    #[serde(rename = "Tbar")]
    Tbar,
    #[serde(rename = "phibar")]
    Phibar,
    #[serde(rename = "tbar1")]
    Tbar1,
    #[serde(rename = "tbar2")]
    Tbar2,
    #[serde(rename = "tbar3")]
    Tbar3,
    #[serde(rename = "ubar1")]
    Ubar1,
    #[serde(rename = "ubar2")]
    Ubar2,
    #[serde(rename = "ubar3")]
    Ubar3,
    #[serde(rename = "qbar")]
    Qbar,
    #[serde(rename = "Dbar")]
    Dbar,
    #[serde(rename = "phibar2")]
    Phibar2,
}

impl Datum {
    pub const ALL: [Datum; 11] = [
        Datum::Tbar,
        Datum::Phibar,
        Datum::Tbar1,
        Datum::Tbar2,
        Datum::Tbar3,
        Datum::Ubar1,
        Datum::Ubar2,
        Datum::Ubar3,
        Datum::Qbar,
        Datum::Dbar,
        Datum::Phibar2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Datum::Tbar => "Tbar",
            Datum::Phibar => "phibar",
            Datum::Tbar1 => "tbar1",
            Datum::Tbar2 => "tbar2",
            Datum::Tbar3 => "tbar3",
            Datum::Ubar1 => "ubar1",
            Datum::Ubar2 => "ubar2",
            Datum::Ubar3 => "ubar3",
            Datum::Qbar => "qbar",
            Datum::Dbar => "Dbar",
            Datum::Phibar2 => "phibar2",
        }
    }

    pub fn from_name(s: &str) -> Option<Datum> {
        Datum::ALL.into_iter().find(|d| d.name() == s)
    }

    /// Position in the data array for the given variant, or `None` if the
    /// datum does not exist there.
    pub fn slot(self, variant: Variant) -> Option<usize> {
        match (self, variant) {
            (Datum::Dbar, Variant::II) | (Datum::Phibar2, Variant::I) => None,
            (Datum::Dbar, _) | (Datum::Phibar2, _) => Some(9),
            (d, _) => Some(d as usize),
        }
    }

    /// Data names in array order for a variant.
    pub fn ordered(variant: Variant) -> [Datum; 10] {
        let last = match variant {
            Variant::I => Datum::Dbar,
            Variant::II => Datum::Phibar2,
        };
        [
            Datum::Tbar,
            Datum::Phibar,
            Datum::Tbar1,
            Datum::Tbar2,
            Datum::Tbar3,
            Datum::Ubar1,
            Datum::Ubar2,
            Datum::Ubar3,
            Datum::Qbar,
            last,
        ]
    }
}

impl BoundaryData {
    /// All ten data zero.
    pub fn zero(variant: Variant) -> Self {
        Self::from_array(variant, &[0.0; 10])
    }

    pub fn variant(&self) -> Variant {
        self.lower_electric.variant()
    }

    /// `[Tbar, phibar, tbar1, tbar2, tbar3, ubar1, ubar2, ubar3, qbar, Dbar|phibar2]`.
    pub fn to_array(&self) -> [f64; 10] {
        [
            self.upper_temperature,
            self.upper_potential,
            self.upper_traction[0],
            self.upper_traction[1],
            self.upper_traction[2],
            self.lower_displacement[0],
            self.lower_displacement[1],
            self.lower_displacement[2],
            self.lower_heat_inflow,
            self.lower_electric.value(),
        ]
    }

    pub fn from_array(variant: Variant, v: &[f64; 10]) -> Self {
        BoundaryData {
            upper_temperature: v[0],
            upper_potential: v[1],
            upper_traction: [v[2], v[3], v[4]],
            lower_displacement: [v[5], v[6], v[7]],
            lower_heat_inflow: v[8],
            lower_electric: LowerElectric::of(variant, v[9]),
        }
    }

    pub fn get(&self, d: Datum) -> Result<f64> {
        let slot = d
            .slot(self.variant())
            .ok_or(Error::InvalidFreeDatum { datum: d.name() })?;
        Ok(self.to_array()[slot])
    }

    pub fn set(&mut self, d: Datum, value: f64) -> Result<()> {
        let variant = self.variant();
        let slot = d
            .slot(variant)
            .ok_or(Error::InvalidFreeDatum { datum: d.name() })?;
        let mut v = self.to_array();
        v[slot] = value;
        *self = Self::from_array(variant, &v);
        Ok(())
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }

    /// Entry-wise linear combination `alpha·self + beta·other`.
    pub fn combine(&self, alpha: f64, other: &BoundaryData, beta: f64) -> BoundaryData {
        let (a, b) = (self.to_array(), other.to_array());
        Self::from_array(
            self.variant(),
            &std::array::from_fn(|i| alpha * a[i] + beta * b[i]),
        )
    }
}

/// A problem without its boundary data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PanelTemplate {
    pub material: MaterialHexagonal,
    pub orientation: Orientation,
    pub variant: Variant,
    /// Half-thickness [m].
    pub h: f64,
}

impl PanelTemplate {
    pub fn new(
        material: MaterialHexagonal,
        orientation: Orientation,
        variant: Variant,
        h: f64,
    ) -> Result<Self> {
        let material = validate_material(material)?;
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidInput(format!("half-thickness must be positive, got {h}")));
        }
        Ok(PanelTemplate {
            material,
            orientation,
            variant,
            h,
        })
    }

    pub fn params(&self) -> ReducedParams {
        reduce(&self.material, self.orientation)
    }

    /// Short problem label such as `I.1.3`.
    pub fn label(&self) -> &'static str {
        match (self.variant, self.orientation) {
            (Variant::I, Orientation::Thickness1) => "I.1.3",
            (Variant::II, Orientation::Thickness1) => "II.1.3",
            (Variant::I, Orientation::Thickness3) => "I.3.3",
            (Variant::II, Orientation::Thickness3) => "II.3.3",
        }
    }

    pub fn with_data(&self, data: BoundaryData) -> Result<ProblemSpec> {
        ProblemSpec::from_template(self.clone(), data)
    }
}

/// A complete problem: geometry, material and data.
///
/// Construction does not require a nonzero rate a; the closed-form solvers
/// reject a = 0 while the finite-difference oracle accepts it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub material: MaterialHexagonal,
    pub orientation: Orientation,
    pub variant: Variant,
    pub h: f64,
    pub data: BoundaryData,
}

impl ProblemSpec {
    pub fn new(
        material: MaterialHexagonal,
        orientation: Orientation,
        variant: Variant,
        h: f64,
        data: BoundaryData,
    ) -> Result<Self> {
        Self::from_template(PanelTemplate::new(material, orientation, variant, h)?, data)
    }

    fn from_template(t: PanelTemplate, data: BoundaryData) -> Result<Self> {
        if !data.is_finite() {
            return Err(Error::NonFiniteData(format!("boundary data {:?}", data.to_array())));
        }
        if data.variant() != t.variant {
            return Err(Error::InvalidInput(format!(
                "variant {} expects {} on the lower face",
                t.variant.label(),
                match t.variant {
                    Variant::I => "Dbar",
                    Variant::II => "phibar2",
                }
            )));
        }
        Ok(ProblemSpec {
            material: t.material,
            orientation: t.orientation,
            variant: t.variant,
            h: t.h,
            data,
        })
    }

    pub fn template(&self) -> PanelTemplate {
        PanelTemplate {
            material: self.material.clone(),
            orientation: self.orientation,
            variant: self.variant,
            h: self.h,
        }
    }

    pub fn params(&self) -> ReducedParams {
        reduce(&self.material, self.orientation)
    }

    pub fn label(&self) -> &'static str {
        self.template().label()
    }

    /// Same problem with other data of the same variant.
    pub fn with_data(&self, data: BoundaryData) -> Result<ProblemSpec> {
        self.template().with_data(data)
    }
}
