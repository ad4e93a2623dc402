//! Field evaluation for anchored coefficients: values, kinematic states,
//! boundary functionals and field-equation residuals, all routed through the
//! constitutive evaluators.

use serde::{Deserialize, Serialize};

use super::problem::{PanelTemplate, Variant};
use crate::general::{expm1_over_rate, relative, AnchoredCoefficients, ANCHORED_LEN};
use crate::model::{KinematicState, MaterialHexagonal, Orientation, ReducedParams};

/// Fields and their thickness derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldPoint {
    pub temperature: f64,
    pub potential: f64,
    pub displacement: [f64; 3],
    /// Gradients (only the normal component is nonzero) and T.
    pub state: KinematicState,
    /// d/dx of `state`: second derivatives, with T' in the temperature slot.
    /// Feeding it to a constitutive evaluator gives the thickness derivative
    /// of that field.
    pub derivative: KinematicState,
}

impl FieldPoint {
    fn add_scaled(&mut self, other: &FieldPoint, c: f64) {
        self.temperature += c * other.temperature;
        self.potential += c * other.potential;
        for j in 0..3 {
            self.displacement[j] += c * other.displacement[j];
        }
        self.state += other.state * c;
        self.derivative += other.derivative * c;
    }

    fn abs(&self) -> FieldPoint {
        FieldPoint {
            temperature: self.temperature.abs(),
            potential: self.potential.abs(),
            displacement: self.displacement.map(f64::abs),
            state: self.state.abs(),
            derivative: self.derivative.abs(),
        }
    }
}

/// Displacement gains g_j: the factor multiplying Θ expm1(aX)/a in u_j.
pub fn displacement_gains(m: &MaterialHexagonal, o: Orientation, p: &ReducedParams) -> [f64; 3] {
    match o {
        Orientation::Thickness1 => [m.beta1 / m.c11, 0.0, p.displacement_gain()],
        Orientation::Thickness3 => [0.0, 0.0, p.displacement_gain()],
    }
}

/// Everything needed to turn anchored coefficients into fields.
#[derive(Debug, Clone, PartialEq)]
pub struct PanelGeometry {
    pub material: MaterialHexagonal,
    pub orientation: Orientation,
    pub variant: Variant,
    pub h: f64,
    pub params: ReducedParams,
    pub gains: [f64; 3],
}

impl PanelGeometry {
    pub fn new(t: &PanelTemplate) -> Self {
        let params = t.params();
        PanelGeometry {
            gains: displacement_gains(&t.material, t.orientation, &params),
            material: t.material.clone(),
            orientation: t.orientation,
            variant: t.variant,
            h: t.h,
            params,
        }
    }

    /// Field point of the j-th basis function (unit coefficient j).
    pub fn basis(&self, j: usize, x: f64) -> FieldPoint {
        let axis = self.orientation.axis();
        let dx = x - self.h;
        let mut f = FieldPoint::default();
        let set_u = |f: &mut FieldPoint, comp: usize, v: f64, d1: f64, d2: f64| {
            f.displacement[comp] = v;
            f.state.grad_u[comp][axis] = d1;
            f.derivative.grad_u[comp][axis] = d2;
        };
        match j {
            0 => {
                let a = self.params.rate;
                let k = self.params.potential_gain;
                let e = (a * dx).exp_m1();
                let p = (a * dx).exp();
                let l = expm1_over_rate(a, dx);
                f.temperature = e;
                f.state.t = e;
                f.state.grad_t[axis] = a * p;
                f.derivative.t = a * p;
                f.derivative.grad_t[axis] = a * a * p;
                f.potential = k * e;
                f.state.grad_phi[axis] = k * a * p;
                f.derivative.grad_phi[axis] = k * a * a * p;
                for (comp, g) in self.gains.iter().enumerate() {
                    set_u(&mut f, comp, g * l, g * p, g * a * p);
                }
            }
            1 => {
                f.temperature = 1.0;
                f.state.t = 1.0;
            }
            2 => {
                f.potential = dx;
                f.state.grad_phi[axis] = 1.0;
            }
            3 => f.potential = 1.0,
            4 | 6 | 8 => set_u(&mut f, (j - 4) / 2, dx, 1.0, 0.0),
            5 | 7 | 9 => set_u(&mut f, (j - 5) / 2, 1.0, 0.0, 0.0),
            _ => panic!("basis index {j} out of range"),
        }
        f
    }

    /// Field point for the given coefficients.
    ///
    /// Near the far face the temperature is re-expressed as
    /// (T_ref - Θ) + Θ e^{aX}, which keeps relative precision when e^{aX}
    /// is small.
    pub fn point(&self, c: &AnchoredCoefficients, x: f64) -> FieldPoint {
        let v = c.to_array();
        let mut f = FieldPoint::default();
        for (j, cj) in v.iter().enumerate() {
            if *cj != 0.0 {
                f.add_scaled(&self.basis(j, x), *cj);
            }
        }
        let p = (self.params.rate * (x - self.h)).exp();
        if p < 0.5 {
            let t = (c.temperature_ref - c.temperature_step) + c.temperature_step * p;
            f.temperature = t;
            f.state.t = t;
        }
        f
    }

    /// Sum over basis functions of |c_j|·|basis_j|: the term magnitudes that
    /// serve as scales for relative errors.
    pub fn magnitude(&self, c: &AnchoredCoefficients, x: f64) -> FieldPoint {
        let v = c.to_array();
        let mut f = FieldPoint::default();
        for (j, cj) in v.iter().enumerate() {
            if *cj != 0.0 {
                f.add_scaled(&self.basis(j, x).abs(), cj.abs());
            }
        }
        f
    }

    /// The ten boundary functionals, in data order.
    pub fn boundary_values(&self, c: &AnchoredCoefficients) -> [f64; 10] {
        let m = &self.material;
        let axis = self.orientation.axis();
        let top = self.point(c, self.h);
        let bottom = self.point(c, -self.h);
        let t = m.stress(&top.state);
        let tc = self.orientation.traction_components();
        let lower = match self.variant {
            Variant::I => -m.electric_displacement(&bottom.state)[axis],
            Variant::II => bottom.potential,
        };
        [
            top.temperature,
            top.potential,
            t[tc[0]],
            t[tc[1]],
            t[tc[2]],
            bottom.displacement[0],
            bottom.displacement[1],
            bottom.displacement[2],
            -m.heat_flux(&bottom.state)[axis],
            lower,
        ]
    }

    /// Term-magnitude scales of the boundary functionals.
    pub fn boundary_scales(&self, c: &AnchoredCoefficients) -> [f64; 10] {
        let m = &self.material;
        let axis = self.orientation.axis();
        let top = self.magnitude(c, self.h);
        let bottom = self.magnitude(c, -self.h);
        let t = m.stress_bound(&top.state);
        let tc = self.orientation.traction_components();
        let lower = match self.variant {
            Variant::I => m.electric_displacement_bound(&bottom.state)[axis],
            Variant::II => bottom.potential,
        };
        [
            top.temperature,
            top.potential,
            t[tc[0]],
            t[tc[1]],
            t[tc[2]],
            bottom.displacement[0],
            bottom.displacement[1],
            bottom.displacement[2],
            m.heat_flux_bound(&bottom.state)[axis],
            lower,
        ]
    }

    /// Thickness derivatives of the three normal stresses, the normal
    /// electric displacement and the normal heat flux, with their scales.
    pub fn field_residuals(&self, c: &AnchoredCoefficients, x: f64) -> FieldResidual {
        let m = &self.material;
        let axis = self.orientation.axis();
        let rows = self.orientation.normal_stress_row();
        let d = self.point(c, x).derivative;
        let dm = self.magnitude(c, x).derivative;
        let (t, tb) = (m.stress(&d), m.stress_bound(&dm));
        FieldResidual {
            residual: [
                t[rows[0]],
                t[rows[1]],
                t[rows[2]],
                m.electric_displacement(&d)[axis],
                m.heat_flux(&d)[axis],
            ],
            scale: [
                tb[rows[0]],
                tb[rows[1]],
                tb[rows[2]],
                m.electric_displacement_bound(&dm)[axis],
                m.heat_flux_bound(&dm)[axis],
            ],
        }
    }

    /// Column j of the linear map from coefficients to boundary functionals.
    pub fn boundary_matrix(&self) -> [[f64; ANCHORED_LEN]; 10] {
        let mut out = [[0.0; ANCHORED_LEN]; 10];
        for j in 0..ANCHORED_LEN {
            let mut e = [0.0; ANCHORED_LEN];
            e[j] = 1.0;
            let col = self.boundary_values(&AnchoredCoefficients::from_array(&e));
            for i in 0..10 {
                out[i][j] = col[i];
            }
        }
        out
    }
}

/// Residuals of the five field equations at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldResidual {
    /// Three equilibrium rows, charge conservation, energy balance.
    pub residual: [f64; 5],
    pub scale: [f64; 5],
}

impl FieldResidual {
    pub fn max_relative(&self) -> f64 {
        self.residual
            .iter()
            .zip(self.scale)
            .map(|(r, s)| relative(*r, s))
            .fold(0.0, f64::max)
    }
}

/// Boundary functionals next to the prescribed data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCheck {
    pub values: [f64; 10],
    pub data: [f64; 10],
    pub scales: [f64; 10],
}

impl BoundaryCheck {
    /// Per-condition |value - datum| / max(term scale, |datum|).
    pub fn relative_errors(&self) -> [f64; 10] {
        std::array::from_fn(|i| {
            relative(
                self.values[i] - self.data[i],
                self.scales[i].max(self.data[i].abs()),
            )
        })
    }

    pub fn max_relative(&self) -> f64 {
        self.relative_errors().into_iter().fold(0.0, f64::max)
    }
}

/// Full field state at one thickness coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateSample {
    pub x: f64,
    #[serde(rename = "T")]
    pub temperature: f64,
    #[serde(rename = "phi")]
    pub potential: f64,
    #[serde(rename = "u")]
    pub displacement: [f64; 3],
    #[serde(rename = "t")]
    pub stress: [f64; 6],
    #[serde(rename = "D")]
    pub electric_displacement: [f64; 3],
    #[serde(rename = "q")]
    pub heat_flux: [f64; 3],
}

impl StateSample {
    pub fn from_point(m: &MaterialHexagonal, x: f64, f: &FieldPoint) -> Self {
        StateSample {
            x,
            temperature: f.temperature,
            potential: f.potential,
            displacement: f.displacement,
            stress: m.stress(&f.state),
            electric_displacement: m.electric_displacement(&f.state),
            heat_flux: m.heat_flux(&f.state),
        }
    }

    /// The 18 numeric columns in CSV order.
    pub fn columns(&self) -> [f64; 18] {
        let mut out = [0.0; 18];
        out[0] = self.x;
        out[1] = self.temperature;
        out[2] = self.potential;
        out[3..6].copy_from_slice(&self.displacement);
        out[6..12].copy_from_slice(&self.stress);
        out[12..15].copy_from_slice(&self.electric_displacement);
        out[15..18].copy_from_slice(&self.heat_flux);
        out
    }
}

/// CSV header names matching [`StateSample::columns`].
pub const STATE_COLUMNS: [&str; 18] = [
    "x", "T", "phi", "u1", "u2", "u3", "t1", "t2", "t3", "t4", "t5", "t6", "D1", "D2", "D3", "q1",
    "q2", "q3",
];
