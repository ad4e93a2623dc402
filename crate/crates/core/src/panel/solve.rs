//! Explicit coefficient formulas for the four problems and the solved panel.

use serde::Serialize;

use super::problem::{LowerElectric, ProblemSpec, Variant};
use super::state::{BoundaryCheck, FieldPoint, FieldResidual, PanelGeometry, StateSample};
use crate::error::{Error, Result};
use crate::general::{expm1_over_rate, AnchoredCoefficients, SolutionCoefficients};
use crate::model::{Orientation, ReducedParams};

/// Index into the traction data of the component normal to the plate
/// (t5 for Thickness1, t3 for Thickness3).
fn normal_traction_slot(o: Orientation) -> usize {
    match o {
        Orientation::Thickness1 => 2,
        Orientation::Thickness3 => 0,
    }
}

/// Forward substitution from the data to the anchored coefficients.
///
/// Order of evaluation: potential slope from the flux datum; then the normal
/// displacement slope and temperature offset from the traction and lower
/// electric data; then the offsets at the lower face; then the decoupled
/// in-plane components.
pub fn assemble_anchored(spec: &ProblemSpec) -> Result<AnchoredCoefficients> {
    let p = spec.params();
    let geo = PanelGeometry::new(&spec.template());
    let a = p.rate;
    if a == 0.0 {
        return Err(Error::DegenerateCoupling);
    }
    if !a.is_finite() {
        return Err(Error::NonFiniteData(format!("exponential rate {a}")));
    }
    let m = &spec.material;
    let d = &spec.data;
    let h = spec.h;
    let ReducedParams {
        stiffness: c,
        piezo: e,
        piezo_prime: ep,
        thermal_stress: beta,
        pyro: omega,
        permittivity: eps,
        conductivity: k,
        cross_conductivity: kp,
        coupling,
        ..
    } = p;

    let t_bar = d.upper_temperature;
    let q_bar = d.lower_heat_inflow;
    let t_n = d.upper_traction[normal_traction_slot(spec.orientation)];
    let potential_slope = -q_bar / kp;

    // normal displacement slope, temperature offset T2 and step Θ = T(h) - T2
    let (u_slope, offset, step) = match (spec.variant, d.lower_electric) {
        (Variant::I, LowerElectric::Charge(d_bar)) => match spec.orientation {
            Orientation::Thickness1 => {
                // no thermal stress along x1: traction alone fixes the slope
                let u_slope = (t_n - ep * potential_slope) / c;
                let offset = (eps * potential_slope - e * u_slope - d_bar) / omega;
                (u_slope, offset, t_bar - offset)
            }
            Orientation::Thickness3 => {
                let r_mech = t_n - ep * potential_slope;
                let r_elec = eps * potential_slope - d_bar;
                let offset = (c * r_elec - e * r_mech) / coupling;
                ((omega * r_mech + beta * r_elec) / coupling, offset, t_bar - offset)
            }
        },
        (Variant::II, LowerElectric::Potential(phi_bar2)) => {
            // T(h) - T(-h), fixed by the potential drop and the flux
            let drop = (kp * (d.upper_potential - phi_bar2) + 2.0 * h * q_bar) / k;
            let step = drop / -(-2.0 * a * h).exp_m1();
            let offset = t_bar - step;
            ((t_n - ep * potential_slope + beta * offset) / c, offset, step)
        }
        _ => {
            return Err(Error::InvalidInput(
                "lower-face electric datum does not match the variant".into(),
            ))
        }
    };

    let span = expm1_over_rate(a, -2.0 * h);
    let gains = geo.gains;
    let mut slopes = [0.0; 3];
    slopes[2] = u_slope;
    match spec.orientation {
        Orientation::Thickness1 => {
            if m.c66 == 0.0 {
                return Err(Error::SingularDenominator {
                    name: "c66",
                    value: m.c66,
                });
            }
            slopes[0] = (d.upper_traction[0] + m.beta1 * offset) / m.c11;
            slopes[1] = d.upper_traction[1] / m.c66;
        }
        Orientation::Thickness3 => {
            slopes[0] = d.upper_traction[2] / m.c44;
            slopes[1] = d.upper_traction[1] / m.c44;
        }
    }
    let refs = std::array::from_fn(|j| {
        d.lower_displacement[j] - gains[j] * step * span + 2.0 * h * slopes[j]
    });
    let out = AnchoredCoefficients {
        temperature_step: step,
        temperature_ref: t_bar,
        potential_slope,
        potential_ref: d.upper_potential,
        displacement_slope: slopes,
        displacement_ref: refs,
    };
    if !out.is_finite() {
        return Err(Error::NonFiniteData(format!("coefficients {:?}", out.to_array())));
    }
    Ok(out)
}

/// Plain-form coefficients of the solved problem.
pub fn assemble_coefficients(spec: &ProblemSpec) -> Result<SolutionCoefficients> {
    solve_panel(spec)?.coefficients()
}

/// Solves the problem and checks that the far face is representable.
pub fn solve_panel(spec: &ProblemSpec) -> Result<PanelSolution> {
    let anchored = assemble_anchored(spec)?;
    let sol = PanelSolution::from_parts(spec.clone(), anchored);
    let far = sol.point(-spec.h);
    if !(far.temperature.is_finite() && far.potential.is_finite())
        || !far.displacement.iter().all(|v| v.is_finite())
    {
        return Err(Error::NonFiniteData(
            "fields overflow at the lower face (a·h too large and negative)".into(),
        ));
    }
    Ok(sol)
}

/// Temperature and potential on the lower face.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerFace {
    #[serde(rename = "phi")]
    pub potential: f64,
    #[serde(rename = "T")]
    pub temperature: f64,
}

/// A solved problem.
#[derive(Debug, Clone, PartialEq)]
pub struct PanelSolution {
    pub spec: ProblemSpec,
    pub params: ReducedParams,
    pub anchored: AnchoredCoefficients,
    geometry: PanelGeometry,
}

impl PanelSolution {
    /// Wraps coefficients without solving; used by oracles and tests.
    pub fn from_parts(spec: ProblemSpec, anchored: AnchoredCoefficients) -> Self {
        let geometry = PanelGeometry::new(&spec.template());
        PanelSolution {
            params: geometry.params,
            spec,
            anchored,
            geometry,
        }
    }

    pub fn geometry(&self) -> &PanelGeometry {
        &self.geometry
    }

    pub fn coefficients(&self) -> Result<SolutionCoefficients> {
        self.anchored
            .to_plain(&self.params, self.geometry.gains, self.spec.h)
    }

    pub fn point(&self, x: f64) -> FieldPoint {
        self.geometry.point(&self.anchored, x)
    }

    pub fn magnitude(&self, x: f64) -> FieldPoint {
        self.geometry.magnitude(&self.anchored, x)
    }

    fn check_domain(&self, x: f64) -> Result<()> {
        let h = self.spec.h;
        if x >= -h && x <= h {
            Ok(())
        } else {
            Err(Error::OutOfDomain { x, h })
        }
    }

    pub fn evaluate_state(&self, x: f64) -> Result<StateSample> {
        self.check_domain(x)?;
        Ok(StateSample::from_point(&self.spec.material, x, &self.point(x)))
    }

    /// `n` samples at uniform spacing from -h to +h, both faces included.
    pub fn profile(&self, n: usize) -> Result<Vec<StateSample>> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("need at least 2 samples, got {n}")));
        }
        let h = self.spec.h;
        (0..n)
            .map(|i| {
                let x = if i == n - 1 {
                    h
                } else {
                    -h + 2.0 * h * i as f64 / (n - 1) as f64
                };
                self.evaluate_state(x)
            })
            .collect()
    }

    pub fn boundary_check(&self) -> BoundaryCheck {
        BoundaryCheck {
            values: self.geometry.boundary_values(&self.anchored),
            data: self.spec.data.to_array(),
            scales: self.geometry.boundary_scales(&self.anchored),
        }
    }

    pub fn field_residuals(&self, x: f64) -> Result<FieldResidual> {
        self.check_domain(x)?;
        Ok(self.geometry.field_residuals(&self.anchored, x))
    }

    /// Lower-face temperature and potential from the endpoint formulas,
    /// which share no code with the coefficient assembly.
    ///
    /// Charge-prescribed lower face:
    /// `T(-h) = T2 (1 - e^{-2ah}) + Tbar e^{-2ah}` with T2 from the
    /// traction/charge/flux data, and
    /// `φ(-h) = φbar + K (Tbar - T2)(e^{-2ah} - 1) + 2h qbar/k'`.
    ///
    /// Potential-prescribed lower face:
    /// `T(-h) = Tbar - 2h qbar/k - (k'/k)(φbar - φbar2)`, `φ(-h) = φbar2`.
    pub fn lower_face_summary(&self) -> LowerFace {
        let p = &self.params;
        let d = &self.spec.data;
        let h = self.spec.h;
        let (t_bar, phi_bar, q_bar) = (d.upper_temperature, d.upper_potential, d.lower_heat_inflow);
        match d.lower_electric {
            LowerElectric::Charge(d_bar) => {
                let t_n = d.upper_traction[normal_traction_slot(self.spec.orientation)];
                let r_mech = t_n + p.piezo_prime * q_bar / p.cross_conductivity;
                let r_elec = -d_bar - p.permittivity * q_bar / p.cross_conductivity;
                let offset = (p.stiffness * r_elec - p.piezo * r_mech) / p.coupling;
                let decay = (-2.0 * p.rate * h).exp();
                let decay_m1 = (-2.0 * p.rate * h).exp_m1();
                LowerFace {
                    temperature: t_bar * decay - offset * decay_m1,
                    potential: phi_bar
                        + p.potential_gain * (t_bar - offset) * decay_m1
                        + 2.0 * h * q_bar / p.cross_conductivity,
                }
            }
            LowerElectric::Potential(phi_bar2) => LowerFace {
                temperature: t_bar
                    - 2.0 * h * q_bar / p.conductivity
                    - p.cross_conductivity / p.conductivity * (phi_bar - phi_bar2),
                potential: phi_bar2,
            },
        }
    }
}
