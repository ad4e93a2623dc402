//! Exact general solution of the thickness-direction system
//!
//! ```text
//! T = T1 e^{ax} + T2
//! φ = K T1 e^{ax} + F1 x + F2
//! u = (V/(ac)) T1 e^{ax} + U1 x + U2
//! ```
//!
//! Two coefficient forms are used. [`SolutionCoefficients`] is the plain form
//! above, convenient for reporting. [`AnchoredCoefficients`] writes the same
//! family around the upper face x = h with `expm1(a(x - h))`, which never
//! overflows for a > 0 on [-h, h] and keeps full precision when a·h is small.
//! All solvers work in the anchored form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ReducedParams;

/// γ e^{ax} + b, the solution of f' = a (f - b).
pub fn first_order_solution(a: f64, b: f64, gamma: f64, x: f64) -> f64 {
    gamma * (a * x).exp() + b
}

/// Integration constants in the plain form.
///
/// Displacement entries are indexed by global component (u1, u2, u3). The
/// component coupled to T and φ through the exponential is always u3.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SolutionCoefficients {
    pub temperature_amplitude: f64,
    pub temperature_offset: f64,
    pub potential_slope: f64,
    pub potential_offset: f64,
    pub displacement_slope: [f64; 3],
    pub displacement_offset: [f64; 3],
}

impl SolutionCoefficients {
    pub fn is_finite(&self) -> bool {
        [
            self.temperature_amplitude,
            self.temperature_offset,
            self.potential_slope,
            self.potential_offset,
        ]
        .iter()
        .chain(&self.displacement_slope)
        .chain(&self.displacement_offset)
        .all(|v| v.is_finite())
    }
}

/// Temperature, potential and the coupled displacement at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralValues {
    pub temperature: f64,
    pub potential: f64,
    pub displacement: f64,
}

/// Plain-form evaluation. Overflows for large |a x|; prefer the anchored form.
pub fn evaluate_general(
    p: &ReducedParams,
    c: &SolutionCoefficients,
    x: f64,
) -> Result<GeneralValues> {
    if p.rate == 0.0 {
        return Err(Error::DegenerateCoupling);
    }
    let amp = ExponentialAmplitudes::from_params(p, c.temperature_amplitude);
    let ex = (p.rate * x).exp();
    Ok(GeneralValues {
        temperature: amp.temperature * ex + c.temperature_offset,
        potential: amp.potential * ex + c.potential_slope * x + c.potential_offset,
        displacement: amp.displacement * ex + c.displacement_slope[2] * x + c.displacement_offset[2],
    })
}

/// The a = 0 limit: T is affine with slope `temperature_amplitude`,
/// φ = K T1 x + F1 x + F2 and u = β T1 x²/(2c) + U1 x + U2.
///
/// Only meaningful when the coupling vanishes; the closed-form solvers
/// never produce it.
pub fn evaluate_general_limit(
    p: &ReducedParams,
    c: &SolutionCoefficients,
    x: f64,
) -> GeneralValues {
    let t1 = c.temperature_amplitude;
    GeneralValues {
        temperature: t1 * x + c.temperature_offset,
        potential: p.potential_gain * t1 * x + c.potential_slope * x + c.potential_offset,
        displacement: p.thermal_stress * t1 * x * x / (2.0 * p.stiffness)
            + c.displacement_slope[2] * x
            + c.displacement_offset[2],
    }
}

/// Amplitudes of e^{ax} in T, φ and u. In an exact solution the latter two
/// are fixed multiples of the first; they are separate here so that a broken
/// coupling can be fed to [`residual_for_amplitudes`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialAmplitudes {
    pub temperature: f64,
    pub potential: f64,
    pub displacement: f64,
}

impl ExponentialAmplitudes {
    pub fn from_params(p: &ReducedParams, temperature: f64) -> Self {
        ExponentialAmplitudes {
            temperature,
            potential: p.potential_gain * temperature,
            displacement: p.mechanical_drive / (p.rate * p.stiffness) * temperature,
        }
    }
}

/// Left-hand sides of the three reduced equations and the sums of absolute
/// values of their terms.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SystemResidual {
    /// c u'' - β T' + e' φ''
    pub mechanical: f64,
    /// e u'' + ω T' - ε φ''
    pub electrical: f64,
    /// -k T'' + k' φ''
    pub thermal: f64,
    pub scale: [f64; 3],
}

impl SystemResidual {
    /// Largest residual relative to its own term scale. Zero residuals with
    /// zero scale count as exact.
    pub fn max_relative(&self) -> f64 {
        [self.mechanical, self.electrical, self.thermal]
            .iter()
            .zip(self.scale)
            .map(|(r, s)| relative(*r, s))
            .fold(0.0, f64::max)
    }
}

pub(crate) fn relative(r: f64, scale: f64) -> f64 {
    if r == 0.0 {
        0.0
    } else if scale > 0.0 {
        r.abs() / scale
    } else {
        f64::INFINITY
    }
}

/// Residuals from analytically differentiated exponentials. The affine
/// parts of φ and u drop out of every second derivative, so only the
/// amplitudes matter.
pub fn residual_for_amplitudes(
    p: &ReducedParams,
    amp: &ExponentialAmplitudes,
    x: f64,
) -> SystemResidual {
    let a = p.rate;
    let ex = (a * x).exp();
    let dt = a * amp.temperature * ex;
    let ddt = a * a * amp.temperature * ex;
    let ddphi = a * a * amp.potential * ex;
    let ddu = a * a * amp.displacement * ex;
    let mech = [p.stiffness * ddu, -p.thermal_stress * dt, p.piezo_prime * ddphi];
    let elec = [p.piezo * ddu, p.pyro * dt, -p.permittivity * ddphi];
    let heat = [-p.conductivity * ddt, p.cross_conductivity * ddphi];
    let abs_sum = |v: &[f64]| v.iter().map(|t| t.abs()).sum::<f64>();
    SystemResidual {
        mechanical: mech.iter().sum(),
        electrical: elec.iter().sum(),
        thermal: heat.iter().sum(),
        scale: [abs_sum(&mech), abs_sum(&elec), abs_sum(&heat)],
    }
}

/// Residuals of the reduced system for plain-form coefficients.
pub fn residual_system(p: &ReducedParams, c: &SolutionCoefficients, x: f64) -> SystemResidual {
    if c.temperature_amplitude == 0.0 {
        return SystemResidual::default();
    }
    residual_for_amplitudes(
        p,
        &ExponentialAmplitudes::from_params(p, c.temperature_amplitude),
        x,
    )
}

/// `expm1(a X) / a`, with the limit X at a = 0.
pub fn expm1_over_rate(a: f64, dx: f64) -> f64 {
    if a == 0.0 {
        dx
    } else {
        (a * dx).exp_m1() / a
    }
}

/// Number of anchored coefficients.
pub const ANCHORED_LEN: usize = 10;

/// The general solution written around a reference plane x_ref:
///
/// ```text
/// T = T_ref + Θ expm1(a X)
/// φ = φ_ref + K Θ expm1(a X) + F1 X
/// u_j = u_j,ref + g_j Θ expm1(a X)/a + U_j X          X = x - x_ref
/// ```
///
/// with displacement gains g = (β1/c11 or 0, 0, V/c) set by the orientation.
/// The array order is
/// `[Θ, T_ref, F1, φ_ref, U1, u1_ref, U2, u2_ref, U3, u3_ref]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AnchoredCoefficients {
    pub temperature_step: f64,
    pub temperature_ref: f64,
    pub potential_slope: f64,
    pub potential_ref: f64,
    pub displacement_slope: [f64; 3],
    pub displacement_ref: [f64; 3],
}

impl AnchoredCoefficients {
    pub fn to_array(&self) -> [f64; ANCHORED_LEN] {
        [
            self.temperature_step,
            self.temperature_ref,
            self.potential_slope,
            self.potential_ref,
            self.displacement_slope[0],
            self.displacement_ref[0],
            self.displacement_slope[1],
            self.displacement_ref[1],
            self.displacement_slope[2],
            self.displacement_ref[2],
        ]
    }

    pub fn from_array(v: &[f64; ANCHORED_LEN]) -> Self {
        AnchoredCoefficients {
            temperature_step: v[0],
            temperature_ref: v[1],
            potential_slope: v[2],
            potential_ref: v[3],
            displacement_slope: [v[4], v[6], v[8]],
            displacement_ref: [v[5], v[7], v[9]],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }

    /// Converts to the plain form. `gains` are the displacement gains g_j.
    ///
    /// The amplitude Θ e^{-a x_ref} underflows to zero once a·x_ref exceeds
    /// about 745; the anchored form stays exact there.
    pub fn to_plain(&self, p: &ReducedParams, gains: [f64; 3], x_ref: f64) -> Result<SolutionCoefficients> {
        let a = p.rate;
        if a == 0.0 {
            return Err(Error::DegenerateCoupling);
        }
        let theta = self.temperature_step;
        let offsets = std::array::from_fn(|j| {
            self.displacement_ref[j] - self.displacement_slope[j] * x_ref - gains[j] * theta / a
        });
        Ok(SolutionCoefficients {
            temperature_amplitude: theta * (-a * x_ref).exp(),
            temperature_offset: self.temperature_ref - theta,
            potential_slope: self.potential_slope,
            potential_offset: self.potential_ref
                - p.potential_gain * theta
                - self.potential_slope * x_ref,
            displacement_slope: self.displacement_slope,
            displacement_offset: offsets,
        })
    }

    /// Inverse of [`AnchoredCoefficients::to_plain`].
    pub fn from_plain(
        c: &SolutionCoefficients,
        p: &ReducedParams,
        gains: [f64; 3],
        x_ref: f64,
    ) -> Result<Self> {
        let a = p.rate;
        if a == 0.0 {
            return Err(Error::DegenerateCoupling);
        }
        let theta = c.temperature_amplitude * (a * x_ref).exp();
        Ok(AnchoredCoefficients {
            temperature_step: theta,
            temperature_ref: c.temperature_offset + theta,
            potential_slope: c.potential_slope,
            potential_ref: c.potential_offset + p.potential_gain * theta + c.potential_slope * x_ref,
            displacement_slope: c.displacement_slope,
            displacement_ref: std::array::from_fn(|j| {
                c.displacement_offset[j] + c.displacement_slope[j] * x_ref + gains[j] * theta / a
            }),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn unit_params() -> ReducedParams {
        ReducedParams::from_scalars(1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0)
    }

    #[test]
    fn first_order_examples() {
        assert_eq!(first_order_solution(0.5, 0.0, 1.0, 0.0), 1.0);
        assert_eq!(first_order_solution(-3.0, 7.0, 0.0, 12.0), 7.0);
        let f = |x| first_order_solution(1.0, 2.0, 3.0, x);
        assert!((f(1.0) - (3.0 * std::f64::consts::E + 2.0)).abs() < 1e-14);
        assert!((f(1.0) - 10.15485).abs() < 1e-5);
        // f' = a (f - b) by central difference
        for dx in [1e-2, 5e-3] {
            let d = (f(1.0 + dx) - f(1.0 - dx)) / (2.0 * dx);
            let err = (d - (f(1.0) - 2.0)).abs();
            assert!(err < 3.0 * dx * dx, "dx = {dx}, err = {err}");
        }
    }

    #[test]
    fn zero_amplitude_is_affine() {
        let p = unit_params();
        let c = SolutionCoefficients {
            temperature_offset: 3.0,
            potential_slope: 2.0,
            potential_offset: -1.0,
            displacement_slope: [0.0, 0.0, 4.0],
            displacement_offset: [0.0, 0.0, 5.0],
            ..Default::default()
        };
        for x in [-1.0, 0.0, 0.3, 2.0] {
            let v = evaluate_general(&p, &c, x).unwrap();
            assert_eq!(v.temperature, 3.0);
            assert_eq!(v.potential, 2.0 * x - 1.0);
            assert_eq!(v.displacement, 4.0 * x + 5.0);
        }
    }

    #[test]
    fn unit_amplitude_at_origin() {
        let p = unit_params();
        let c = SolutionCoefficients {
            temperature_amplitude: 1.0,
            ..Default::default()
        };
        let v = evaluate_general(&p, &c, 0.0).unwrap();
        assert_eq!((v.temperature, v.potential, v.displacement), (1.0, 1.0, -1.0));
    }

    #[test]
    fn zero_rate_is_degenerate() {
        let p = ReducedParams::from_scalars(1.0, 1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0);
        assert_eq!(p.rate, 0.0);
        let c = SolutionCoefficients::default();
        assert_eq!(evaluate_general(&p, &c, 0.0), Err(Error::DegenerateCoupling));
        let lim = SolutionCoefficients {
            temperature_amplitude: 2.0,
            temperature_offset: 1.0,
            ..Default::default()
        };
        let v = evaluate_general_limit(&p, &lim, 0.5);
        assert_eq!(v.temperature, 2.0);
        assert_eq!(v.potential, 1.0);
    }

    #[test]
    fn zero_coefficients_have_zero_residual() {
        let r = residual_system(&unit_params(), &SolutionCoefficients::default(), 0.4);
        assert_eq!((r.mechanical, r.electrical, r.thermal), (0.0, 0.0, 0.0));
    }

    fn random_params(rng: &mut ChaCha8Rng) -> ReducedParams {
        let mut s = || rng.gen_range(0.1..10.0);
        let (c, e, beta, omega, eps, k, kp) = (s(), s(), s(), s(), s(), s(), s());
        ReducedParams::from_scalars(c, e, e, beta, omega, eps, k, kp)
    }

    #[test]
    fn random_residuals_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let p = random_params(&mut rng);
            let c = SolutionCoefficients {
                temperature_amplitude: rng.gen_range(-5.0..5.0),
                temperature_offset: rng.gen_range(-5.0..5.0),
                potential_slope: rng.gen_range(-5.0..5.0),
                potential_offset: rng.gen_range(-5.0..5.0),
                displacement_slope: [0.0, 0.0, rng.gen_range(-5.0..5.0)],
                displacement_offset: [0.0, 0.0, rng.gen_range(-5.0..5.0)],
            };
            for _ in 0..20 {
                let x = rng.gen_range(-1.0..1.0);
                let r = residual_system(&p, &c, x);
                assert!(r.max_relative() < 1e-10, "{r:?}");
                // φ'' = K T''
                let ex = (p.rate * x).exp();
                let ddt = p.rate * p.rate * c.temperature_amplitude * ex;
                let ddphi = p.rate * p.rate * p.potential_gain * c.temperature_amplitude * ex;
                assert!((ddphi - p.potential_gain * ddt).abs() <= 1e-14 * ddphi.abs());
            }
        }
    }

    #[test]
    fn broken_potential_amplitude_is_detected() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let p = random_params(&mut rng);
            let mut amp = ExponentialAmplitudes::from_params(&p, rng.gen_range(0.5..2.0));
            amp.potential *= 1.1;
            let r = residual_for_amplitudes(&p, &amp, 0.2);
            // the heat equation couples only T and φ, so it must fire
            assert!(r.thermal.abs() > 1e-3 * r.scale[2], "{r:?}");
            assert!(r.max_relative() > 1e-10);
        }
    }

    #[test]
    fn residual_matches_finite_differences() {
        // independent check of the analytic derivatives
        let p = ReducedParams::from_scalars(2.0, 1.5, 1.5, 0.7, 0.4, 0.9, 1.2, 0.8);
        let c = SolutionCoefficients {
            temperature_amplitude: 1.3,
            temperature_offset: 0.2,
            potential_slope: -0.4,
            potential_offset: 0.1,
            displacement_slope: [0.0, 0.0, 0.3],
            displacement_offset: [0.0, 0.0, -0.2],
        };
        let x = 0.3;
        let dx = 1e-4;
        let v = |x| evaluate_general(&p, &c, x).unwrap();
        let (m, z, pl) = (v(x - dx), v(x), v(x + dx));
        let d2 = |f: fn(&GeneralValues) -> f64| (f(&m) - 2.0 * f(&z) + f(&pl)) / (dx * dx);
        let dt = (pl.temperature - m.temperature) / (2.0 * dx);
        let ddu = d2(|g| g.displacement);
        let ddphi = d2(|g| g.potential);
        let ddt = d2(|g| g.temperature);
        let mech = p.stiffness * ddu - p.thermal_stress * dt + p.piezo_prime * ddphi;
        let heat = -p.conductivity * ddt + p.cross_conductivity * ddphi;
        let scale = p.stiffness * ddu.abs() + p.thermal_stress * dt.abs();
        assert!(mech.abs() < 1e-5 * scale, "{mech}");
        assert!(heat.abs() < 1e-5 * p.conductivity * ddt.abs(), "{heat}");
    }

    proptest! {
        #[test]
        fn anchored_round_trip(
            v in prop::collection::vec(-10.0f64..10.0, 10),
            a in 0.05f64..3.0,
            h in 0.1f64..2.0,
        ) {
            let p = ReducedParams::from_scalars(1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0);
            // rescale ω so the rate is a
            let p = ReducedParams::from_scalars(1.0, 1.0, 1.0, 0.0, a * p.potential_gain * p.stiffened_modulus, 1.0, 1.0, 1.0);
            let gains = [0.3, 0.0, p.displacement_gain()];
            let arr: [f64; 10] = v.clone().try_into().unwrap();
            let anc = AnchoredCoefficients::from_array(&arr);
            prop_assert_eq!(anc.to_array(), arr);
            let plain = anc.to_plain(&p, gains, h).unwrap();
            let back = AnchoredCoefficients::from_plain(&plain, &p, gains, h).unwrap();
            for (x, y) in back.to_array().iter().zip(arr) {
                prop_assert!((x - y).abs() < 1e-11 * (1.0 + y.abs()) * (1.0 + (a * h).exp()));
            }
            // same field at an interior point
            let x = 0.37 * h;
            let g = evaluate_general(&p, &plain, x).unwrap();
            let e = (p.rate * (x - h)).exp_m1();
            let t = anc.temperature_ref + anc.temperature_step * e;
            let u3 = anc.displacement_ref[2]
                + gains[2] * anc.temperature_step * expm1_over_rate(p.rate, x - h)
                + anc.displacement_slope[2] * (x - h);
            prop_assert!((g.temperature - t).abs() < 1e-11 * 100.0);
            prop_assert!((g.displacement - u3).abs() < 1e-11 * 1000.0);
        }
    }
}
