//! Linear constitutive evaluation for the 6mm class.
//!
//! Stress, electric displacement and heat flux at a point, from the
//! displacement gradient, potential gradient, temperature gradient and
//! incremental temperature. E = -∇φ is substituted throughout.

use std::ops::{Add, AddAssign, Mul};

use super::material::MaterialHexagonal;

/// Local kinematic state: gradients of u, φ, T and the temperature increment.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct KinematicState {
    /// `grad_u[i][j] = u_{i,j}`.
    pub grad_u: [[f64; 3]; 3],
    pub grad_phi: [f64; 3],
    pub grad_t: [f64; 3],
    pub t: f64,
}

impl KinematicState {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_finite(&self) -> bool {
        self.grad_u.iter().flatten().all(|v| v.is_finite())
            && self.grad_phi.iter().all(|v| v.is_finite())
            && self.grad_t.iter().all(|v| v.is_finite())
            && self.t.is_finite()
    }

    /// Entry-wise absolute value.
    pub fn abs(&self) -> Self {
        let mut out = *self;
        out.grad_u.iter_mut().flatten().for_each(|v| *v = v.abs());
        out.grad_phi.iter_mut().for_each(|v| *v = v.abs());
        out.grad_t.iter_mut().for_each(|v| *v = v.abs());
        out.t = out.t.abs();
        out
    }
}

impl Add for KinematicState {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for KinematicState {
    fn add_assign(&mut self, rhs: Self) {
        for i in 0..3 {
            for j in 0..3 {
                self.grad_u[i][j] += rhs.grad_u[i][j];
            }
            self.grad_phi[i] += rhs.grad_phi[i];
            self.grad_t[i] += rhs.grad_t[i];
        }
        self.t += rhs.t;
    }
}

impl Mul<f64> for KinematicState {
    type Output = Self;
    fn mul(mut self, s: f64) -> Self {
        self.grad_u.iter_mut().flatten().for_each(|v| *v *= s);
        self.grad_phi.iter_mut().for_each(|v| *v *= s);
        self.grad_t.iter_mut().for_each(|v| *v *= s);
        self.t *= s;
        self
    }
}

impl MaterialHexagonal {
    /// Voigt stress (t1..t6) [Pa].
    pub fn stress(&self, ks: &KinematicState) -> [f64; 6] {
        let g = &ks.grad_u;
        let p = &ks.grad_phi;
        let t = ks.t;
        [
            self.c11 * g[0][0] + self.c12 * g[1][1] + self.c13 * g[2][2] + self.e31 * p[2]
                - self.beta1 * t,
            self.c12 * g[0][0] + self.c11 * g[1][1] + self.c13 * g[2][2] + self.e31 * p[2]
                - self.beta2 * t,
            self.c13 * (g[0][0] + g[1][1]) + self.c33 * g[2][2] + self.e33 * p[2]
                - self.beta3 * t,
            self.c44 * (g[2][1] + g[1][2]) + self.e15 * p[1],
            self.c44 * (g[2][0] + g[0][2]) + self.e15 * p[0],
            self.c66 * (g[0][1] + g[1][0]),
        ]
    }

    /// Electric displacement [C/m²].
    pub fn electric_displacement(&self, ks: &KinematicState) -> [f64; 3] {
        let g = &ks.grad_u;
        let p = &ks.grad_phi;
        let t = ks.t;
        [
            self.e15 * (g[2][0] + g[0][2]) - self.eps11 * p[0] + self.omega1 * t,
            self.e15 * (g[2][1] + g[1][2]) - self.eps11 * p[1] + self.omega2 * t,
            self.e31 * (g[0][0] + g[1][1]) + self.e33 * g[2][2] - self.eps33 * p[2]
                + self.omega3 * t,
        ]
    }

    /// Heat flux q = -κ∇T + κᴱ∇φ [W/m²].
    pub fn heat_flux(&self, ks: &KinematicState) -> [f64; 3] {
        let k = [self.kappa11, self.kappa11, self.kappa33];
        let ke = [self.kappa_e11, self.kappa_e11, self.kappa_e33];
        std::array::from_fn(|i| -k[i] * ks.grad_t[i] + ke[i] * ks.grad_phi[i])
    }
}

/// Sums of absolute values of the individual constitutive terms.
///
/// These are the scales against which relative errors of the corresponding
/// fields are measured; `ks` should already hold term magnitudes.
impl MaterialHexagonal {
    pub fn stress_bound(&self, ks: &KinematicState) -> [f64; 6] {
        self.bound_coefficients().stress(&ks.abs())
    }

    pub fn electric_displacement_bound(&self, ks: &KinematicState) -> [f64; 3] {
        self.bound_coefficients().electric_displacement(&ks.abs())
    }

    pub fn heat_flux_bound(&self, ks: &KinematicState) -> [f64; 3] {
        self.bound_coefficients().heat_flux(&ks.abs())
    }
}

/// Free-function forms of the evaluators.
pub fn stress(m: &MaterialHexagonal, ks: &KinematicState) -> [f64; 6] {
    m.stress(ks)
}

pub fn electric_displacement(m: &MaterialHexagonal, ks: &KinematicState) -> [f64; 3] {
    m.electric_displacement(ks)
}

pub fn heat_flux(m: &MaterialHexagonal, ks: &KinematicState) -> [f64; 3] {
    m.heat_flux(ks)
}
