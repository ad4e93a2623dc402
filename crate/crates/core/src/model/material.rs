//! Hexagonal 6mm (C6v) material data, with x3 along the poling direction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance on c66 = (c11 - c12)/2.
pub const C66_REL_TOL: f64 = 1e-12;

/// Full coefficient set of a poled 6mm ceramic, SI units.
///
/// Temperatures are incremental (T = θ - θ0). The JSON form uses exactly
/// these field names (`kappaE11`, `kappaE33` for the cross coefficients)
/// and rejects anything else.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialHexagonal {
    pub name: String,
    /// Elastic moduli [Pa].
    pub c11: f64,
    pub c12: f64,
    pub c13: f64,
    pub c33: f64,
    pub c44: f64,
    pub c66: f64,
    /// Piezoelectric moduli [C/m²].
    pub e15: f64,
    pub e31: f64,
    pub e33: f64,
    /// Permittivities [F/m].
    pub eps11: f64,
    pub eps33: f64,
    /// Pyroelectric coefficients [C/(m²·K)].
    pub omega1: f64,
    pub omega2: f64,
    pub omega3: f64,
    /// Thermal stress moduli [Pa/K].
    pub beta1: f64,
    pub beta2: f64,
    pub beta3: f64,
    /// Fourier conductivities [W/(m·K)].
    pub kappa11: f64,
    pub kappa33: f64,
    /// Heat flux driven by the electric field, q = -κ∇T - κᴱE [W/(m·V)].
    #[serde(rename = "kappaE11")]
    pub kappa_e11: f64,
    #[serde(rename = "kappaE33")]
    pub kappa_e33: f64,
    /// Reference absolute temperature [K].
    pub theta0: f64,
    /// Reference mass density [kg/m³].
    pub rho0: f64,
}

impl MaterialHexagonal {
    /// Illustrative PZT-class values, not a measured dataset.
    ///
    /// The cross coefficients are picked so that a 1 mm half-thickness plate
    /// has a·h of order one in both orientations.
    pub fn illustrative_pzt() -> Self {
        MaterialHexagonal {
            name: "illustrative PZT-class values".to_string(),
            c11: 12.6e10,
            c12: 7.95e10,
            c13: 8.41e10,
            c33: 11.7e10,
            c44: 2.3e10,
            c66: 2.325e10,
            e15: 17.0,
            e31: -6.5,
            e33: 23.3,
            eps11: 1.505e-8,
            eps33: 1.302e-8,
            omega1: 1.0e-4,
            omega2: 1.0e-4,
            omega3: 5.4e-4,
            beta1: 4.7e5,
            beta2: 4.7e5,
            beta3: 4.5e5,
            kappa11: 1.5,
            kappa33: 1.5,
            kappa_e11: 0.2,
            kappa_e33: 0.03,
            theta0: 293.15,
            rho0: 7500.0,
        }
    }

    fn numeric_fields(&self) -> [(&'static str, f64); 23] {
        [
            ("c11", self.c11),
            ("c12", self.c12),
            ("c13", self.c13),
            ("c33", self.c33),
            ("c44", self.c44),
            ("c66", self.c66),
            ("e15", self.e15),
            ("e31", self.e31),
            ("e33", self.e33),
            ("eps11", self.eps11),
            ("eps33", self.eps33),
            ("omega1", self.omega1),
            ("omega2", self.omega2),
            ("omega3", self.omega3),
            ("beta1", self.beta1),
            ("beta2", self.beta2),
            ("beta3", self.beta3),
            ("kappa11", self.kappa11),
            ("kappa33", self.kappa33),
            ("kappaE11", self.kappa_e11),
            ("kappaE33", self.kappa_e33),
            ("theta0", self.theta0),
            ("rho0", self.rho0),
        ]
    }

    /// Checks finiteness, positivity, nonzero cross coefficients and the
    /// transverse-isotropy relation for c66.
    pub fn validate(&self) -> Result<()> {
        for (field, value) in self.numeric_fields() {
            if !value.is_finite() {
                return Err(Error::NonPhysical {
                    field,
                    value,
                    reason: "not finite",
                });
            }
        }
        let positive = [
            ("c11", self.c11),
            ("c33", self.c33),
            ("c44", self.c44),
            ("eps11", self.eps11),
            ("eps33", self.eps33),
            ("kappa11", self.kappa11),
            ("kappa33", self.kappa33),
            ("theta0", self.theta0),
            ("rho0", self.rho0),
        ];
        for (field, value) in positive {
            if value <= 0.0 {
                return Err(Error::NonPhysical {
                    field,
                    value,
                    reason: "must be positive",
                });
            }
        }
        if self.kappa_e11 == 0.0 {
            return Err(Error::DegenerateCrossFlux { field: "kappaE11" });
        }
        if self.kappa_e33 == 0.0 {
            return Err(Error::DegenerateCrossFlux { field: "kappaE33" });
        }
        let expected = 0.5 * (self.c11 - self.c12);
        let scale = self.c66.abs().max(expected.abs());
        if (self.c66 - expected).abs() > C66_REL_TOL * scale {
            return Err(Error::SymmetryViolation {
                c66: self.c66,
                expected,
            });
        }
        Ok(())
    }

    /// Coefficients arranged so that the constitutive evaluators, applied to
    /// an entry-wise absolute kinematic state, return the sum of absolute
    /// values of their individual terms. Coefficients that enter with a minus
    /// sign (β, ε, κ) are stored as -|x|. Only meaningful through the
    /// `*_bound` evaluators.
    pub(crate) fn bound_coefficients(&self) -> Self {
        MaterialHexagonal {
            name: self.name.clone(),
            c11: self.c11.abs(),
            c12: self.c12.abs(),
            c13: self.c13.abs(),
            c33: self.c33.abs(),
            c44: self.c44.abs(),
            c66: self.c66.abs(),
            e15: self.e15.abs(),
            e31: self.e31.abs(),
            e33: self.e33.abs(),
            eps11: -self.eps11.abs(),
            eps33: -self.eps33.abs(),
            omega1: self.omega1.abs(),
            omega2: self.omega2.abs(),
            omega3: self.omega3.abs(),
            beta1: -self.beta1.abs(),
            beta2: -self.beta2.abs(),
            beta3: -self.beta3.abs(),
            kappa11: -self.kappa11.abs(),
            kappa33: -self.kappa33.abs(),
            kappa_e11: self.kappa_e11.abs(),
            kappa_e33: self.kappa_e33.abs(),
            theta0: self.theta0,
            rho0: self.rho0,
        }
    }
}

/// Returns the material unchanged if all invariants hold.
pub fn validate_material(raw: MaterialHexagonal) -> Result<MaterialHexagonal> {
    raw.validate()?;
    Ok(raw)
}
