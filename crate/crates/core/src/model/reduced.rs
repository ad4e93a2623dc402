//! Reduction of the 6mm coefficients to the scalar thickness-direction system
//!
//! ```text
//! c u'' - β T' + e' φ'' = 0
//! e u'' + ω T' - ε φ'' = 0
//! -k T'' + k' φ'' = 0
//! ```
//!
//! for a plate whose normal is x1 or x3.

use serde::{Deserialize, Serialize};

use super::material::MaterialHexagonal;

/// Direction of the plate normal relative to the poling axis x3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Normal along x1; poling lies in the plate plane.
    Thickness1,
    /// Normal along x3, the poling direction.
    Thickness3,
}

impl Orientation {
    /// Zero-based index of the thickness coordinate.
    pub fn axis(self) -> usize {
        match self {
            Orientation::Thickness1 => 0,
            Orientation::Thickness3 => 2,
        }
    }

    /// Voigt positions (zero-based) of the stress components prescribed by
    /// the three upper-face traction data, in data order.
    ///
    /// Thickness1 prescribes (t1, t6, t5); Thickness3 prescribes (t3, t4, t5).
    pub fn traction_components(self) -> [usize; 3] {
        match self {
            Orientation::Thickness1 => [0, 5, 4],
            Orientation::Thickness3 => [2, 3, 4],
        }
    }

    /// Voigt positions of t_{n1}, t_{n2}, t_{n3} for the plate normal n,
    /// i.e. the stress components whose thickness derivative is the
    /// equilibrium residual for each displacement component.
    pub fn normal_stress_row(self) -> [usize; 3] {
        match self {
            Orientation::Thickness1 => [0, 5, 4],
            Orientation::Thickness3 => [4, 3, 2],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Orientation::Thickness1 => "thickness1",
            Orientation::Thickness3 => "thickness3",
        }
    }
}

/// Scalar parameters of the thickness-direction system and the derived
/// combinations that shape its exact solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedParams {
    /// c: stiffness coupling the displacement along the normal.
    #[serde(rename = "c")]
    pub stiffness: f64,
    #[serde(rename = "e")]
    pub piezo: f64,
    #[serde(rename = "eprime")]
    pub piezo_prime: f64,
    #[serde(rename = "beta")]
    pub thermal_stress: f64,
    #[serde(rename = "omega")]
    pub pyro: f64,
    #[serde(rename = "eps")]
    pub permittivity: f64,
    #[serde(rename = "k")]
    pub conductivity: f64,
    #[serde(rename = "kprime")]
    pub cross_conductivity: f64,
    /// K = k/k': ratio of the potential and temperature exponential amplitudes.
    #[serde(rename = "K")]
    pub potential_gain: f64,
    /// A = βe + cω.
    #[serde(rename = "A")]
    pub coupling: f64,
    /// B = ee' + cε.
    #[serde(rename = "B")]
    pub stiffened_modulus: f64,
    /// a = A/(K B): exponential rate along the normal [1/m].
    #[serde(rename = "a")]
    pub rate: f64,
    /// V = β - K a e', evaluated as c(βε - ωe')/B, which avoids the
    /// cancellation between β and K a e'.
    #[serde(rename = "V")]
    pub mechanical_drive: f64,
    /// a > 0: no growth of the solution as the thickness grows.
    pub stable: bool,
}

impl ReducedParams {
    /// Builds the derived combinations from the eight primitive scalars.
    #[allow(clippy::too_many_arguments)]
    pub fn from_scalars(
        c: f64,
        e: f64,
        eprime: f64,
        beta: f64,
        omega: f64,
        eps: f64,
        k: f64,
        kprime: f64,
    ) -> Self {
        let potential_gain = k / kprime;
        let coupling = beta * e + c * omega;
        let stiffened_modulus = e * eprime + c * eps;
        let rate = coupling / (potential_gain * stiffened_modulus);
        let mechanical_drive = c * (beta * eps - omega * eprime) / stiffened_modulus;
        ReducedParams {
            stiffness: c,
            piezo: e,
            piezo_prime: eprime,
            thermal_stress: beta,
            pyro: omega,
            permittivity: eps,
            conductivity: k,
            cross_conductivity: kprime,
            potential_gain,
            coupling,
            stiffened_modulus,
            rate,
            mechanical_drive,
            stable: rate > 0.0,
        }
    }

    /// V/c: displacement amplitude per unit of T' amplitude, i.e.
    /// u'' = (V/c) T'.
    pub fn displacement_gain(&self) -> f64 {
        self.mechanical_drive / self.stiffness
    }
}

/// Selects the scalar coefficients for the given plate orientation.
pub fn reduce(m: &MaterialHexagonal, o: Orientation) -> ReducedParams {
    match o {
        Orientation::Thickness1 => ReducedParams::from_scalars(
            m.c44,
            m.e15,
            m.e15,
            0.0,
            m.omega1,
            m.eps11,
            m.kappa11,
            m.kappa_e11,
        ),
        Orientation::Thickness3 => ReducedParams::from_scalars(
            m.c33,
            m.e33,
            m.e33,
            m.beta3,
            m.omega3,
            m.eps33,
            m.kappa33,
            m.kappa_e33,
        ),
    }
}
