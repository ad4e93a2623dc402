//! Shared generators and dense oracles for the integration tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use pyroplate::model::{reduce, KinematicState, MaterialHexagonal, Orientation};
use pyroplate::panel::{BoundaryData, ProblemSpec, Variant};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const ALL: [(Orientation, Variant); 4] = [
    (Orientation::Thickness1, Variant::I),
    (Orientation::Thickness1, Variant::II),
    (Orientation::Thickness3, Variant::I),
    (Orientation::Thickness3, Variant::II),
];

/// Typical size of each datum for a PZT-class plate, in data order.
pub const DATA_SCALE: [f64; 10] = [50.0, 100.0, 1e6, 1e6, 1e6, 1e-6, 1e-6, 1e-6, 1e4, 1e-2];

fn log_factor(rng: &mut ChaCha8Rng, decades: f64) -> f64 {
    10f64.powf(rng.gen_range(-0.5 * decades..=0.5 * decades))
}

fn signed(rng: &mut ChaCha8Rng) -> f64 {
    if rng.gen_bool(0.5) {
        1.0
    } else {
        -1.0
    }
}

/// Every coefficient of the sample material scaled by an independent
/// log-uniform factor spanning `decades`. Signs are kept, so the rate stays
/// positive in both orientations.
pub fn random_material(rng: &mut ChaCha8Rng, decades: f64) -> MaterialHexagonal {
    let mut m = MaterialHexagonal::illustrative_pzt();
    m.name = "random".into();
    for v in [
        &mut m.c11, &mut m.c13, &mut m.c33, &mut m.c44, &mut m.c66, &mut m.e15, &mut m.e31,
        &mut m.e33, &mut m.eps11, &mut m.eps33, &mut m.omega1, &mut m.omega2, &mut m.omega3,
        &mut m.beta1, &mut m.beta2, &mut m.beta3, &mut m.kappa11, &mut m.kappa33,
        &mut m.kappa_e11, &mut m.kappa_e33,
    ] {
        *v *= log_factor(rng, decades);
    }
    m.c12 = m.c11 - 2.0 * m.c66;
    m.c66 = 0.5 * (m.c11 - m.c12);
    m.validate().expect("generated material is valid");
    m
}

/// Data with random sign and a log-uniform magnitude around `DATA_SCALE`.
pub fn random_data(rng: &mut ChaCha8Rng, variant: Variant, decades: f64) -> BoundaryData {
    let d: [f64; 10] =
        std::array::from_fn(|i| signed(rng) * DATA_SCALE[i] * log_factor(rng, decades));
    BoundaryData::from_array(variant, &d)
}

/// Material, data and half-thickness all log-uniform over six decades.
pub fn log_uniform_spec(rng: &mut ChaCha8Rng, o: Orientation, v: Variant) -> ProblemSpec {
    let m = random_material(rng, 6.0);
    let h = 1e-3 * log_factor(rng, 6.0);
    let d = random_data(rng, v, 6.0);
    ProblemSpec::new(m, o, v, h, d).unwrap()
}

/// Moderately perturbed material, data within one decade of typical size
/// and h chosen so that a·h lies in [0.1, 2].
pub fn unit_spec(rng: &mut ChaCha8Rng, o: Orientation, v: Variant) -> ProblemSpec {
    let m = random_material(rng, 1.0);
    let a = reduce(&m, o).rate;
    let h = rng.gen_range(0.1..=2.0) / a;
    let d = random_data(rng, v, 2.0);
    ProblemSpec::new(m, o, v, h, d).unwrap()
}

pub fn rel(a: f64, b: f64, scale: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Values and kinematic state of one basis function at x, plus the thickness
/// derivative of the state.
#[derive(Clone, Copy, Default)]
struct Basis {
    t: f64,
    phi: f64,
    u: [f64; 3],
    state: KinematicState,
    derivative: KinematicState,
}

/// The ten boundary functionals of one basis function, as the problem
/// statement lists them.
fn boundary_row(spec: &ProblemSpec, f: &dyn Fn(f64) -> Basis) -> [f64; 10] {
    let m = &spec.material;
    let axis = spec.orientation.axis();
    let tc = spec.orientation.traction_components();
    let top = f(spec.h);
    let bottom = f(-spec.h);
    let s = m.stress(&top.state);
    [
        top.t,
        top.phi,
        s[tc[0]],
        s[tc[1]],
        s[tc[2]],
        bottom.u[0],
        bottom.u[1],
        bottom.u[2],
        -m.heat_flux(&bottom.state)[axis],
        match spec.variant {
            Variant::I => -m.electric_displacement(&bottom.state)[axis],
            Variant::II => bottom.phi,
        },
    ]
}

/// Thickness derivatives of the three normal stresses, normal charge and
/// normal heat flux.
fn field_row(spec: &ProblemSpec, b: &Basis) -> [f64; 5] {
    let m = &spec.material;
    let axis = spec.orientation.axis();
    let rows = spec.orientation.normal_stress_row();
    let s = m.stress(&b.derivative);
    [
        s[rows[0]],
        s[rows[1]],
        s[rows[2]],
        m.electric_displacement(&b.derivative)[axis],
        m.heat_flux(&b.derivative)[axis],
    ]
}

/// Row and column equilibration followed by full-pivot LU.
fn dense_solve(a: DMatrix<f64>, b: DVector<f64>) -> Option<DVector<f64>> {
    let (r, c) = a.shape();
    let row_s: Vec<f64> = (0..r).map(|i| a.row(i).amax().max(f64::MIN_POSITIVE)).collect();
    let mut a = a;
    let mut b = b;
    for i in 0..r {
        a.row_mut(i).scale_mut(1.0 / row_s[i]);
        b[i] /= row_s[i];
    }
    let col_s: Vec<f64> = (0..c).map(|j| a.column(j).amax().max(f64::MIN_POSITIVE)).collect();
    for j in 0..c {
        a.column_mut(j).scale_mut(1.0 / col_s[j]);
    }
    let y = a.full_piv_lu().solve(&b)?;
    Some(DVector::from_iterator(c, (0..c).map(|j| y[j] / col_s[j])))
}

/// Plain-form coefficients from a dense solve that knows only the field
/// equations, the boundary list and the rate a.
///
/// Unknowns: e^{ax} amplitudes of (u1, u2, u3, T, φ), then T offset, φ slope
/// and offset, and slope/offset of each displacement. The five field
/// equations on the exponential part have rank four because a is a root of
/// their determinant, so the charge row is dropped and the remaining four
/// close the ten boundary rows.
///
/// Returns `[T1, T2, F1, F2, U1_1, U2_1, U1_2, U2_2, U1_3, U2_3]`.
pub fn plain_oracle(spec: &ProblemSpec) -> Option<[f64; 10]> {
    let a = spec.params().rate;
    let axis = spec.orientation.axis();
    let n = 14;
    let basis = |j: usize, x: f64| -> Basis {
        let mut b = Basis::default();
        let ex = (a * x).exp();
        match j {
            0..=2 => {
                b.u[j] = ex;
                b.state.grad_u[j][axis] = a * ex;
                b.derivative.grad_u[j][axis] = a * a * ex;
            }
            3 => {
                b.t = ex;
                b.state.t = ex;
                b.state.grad_t[axis] = a * ex;
                b.derivative.t = a * ex;
                b.derivative.grad_t[axis] = a * a * ex;
            }
            4 => {
                b.phi = ex;
                b.state.grad_phi[axis] = a * ex;
                b.derivative.grad_phi[axis] = a * a * ex;
            }
            5 => {
                b.t = 1.0;
                b.state.t = 1.0;
            }
            6 => {
                b.phi = x;
                b.state.grad_phi[axis] = 1.0;
            }
            7 => b.phi = 1.0,
            _ => {
                let k = j - 8;
                let comp = k / 2;
                if k % 2 == 0 {
                    b.u[comp] = x;
                    b.state.grad_u[comp][axis] = 1.0;
                } else {
                    b.u[comp] = 1.0;
                }
            }
        }
        b
    };
    let mut m = DMatrix::zeros(n, n);
    for j in 0..n {
        let col = boundary_row(spec, &|x| basis(j, x));
        for i in 0..10 {
            m[(i, j)] = col[i];
        }
        // exponential part only; affine terms have no second derivative
        if j < 5 {
            let fr = field_row(spec, &basis(j, 0.0));
            for (i, r) in [0, 1, 2, 4].into_iter().enumerate() {
                m[(10 + i, j)] = fr[r];
            }
        }
    }
    let mut rhs = DVector::zeros(n);
    for (i, v) in spec.data.to_array().into_iter().enumerate() {
        rhs[i] = v;
    }
    let y = dense_solve(m, rhs)?;
    Some([y[3], y[5], y[6], y[7], y[8], y[9], y[10], y[11], y[12], y[13]])
}

/// Fields of the a = 0 limit from a dense solve.
///
/// With the coupling gone, T and φ are affine and each displacement gains a
/// quadratic term. Unknowns: T slope and offset, φ slope and offset, and for
/// each displacement the x², x and constant coefficients. The interior
/// equations are imposed at x = 0 (they are constant for such fields).
pub struct LimitOracle {
    pub coefficients: Vec<f64>,
}

impl LimitOracle {
    pub fn solve(spec: &ProblemSpec) -> Option<Self> {
        let axis = spec.orientation.axis();
        let n = 13;
        let basis = |j: usize, x: f64| -> Basis {
            let mut b = Basis::default();
            match j {
                0 => {
                    b.t = x;
                    b.state.t = x;
                    b.state.grad_t[axis] = 1.0;
                    b.derivative.t = 1.0;
                }
                1 => {
                    b.t = 1.0;
                    b.state.t = 1.0;
                }
                2 => {
                    b.phi = x;
                    b.state.grad_phi[axis] = 1.0;
                }
                3 => b.phi = 1.0,
                _ => {
                    let comp = (j - 4) / 3;
                    match (j - 4) % 3 {
                        0 => {
                            b.u[comp] = x * x;
                            b.state.grad_u[comp][axis] = 2.0 * x;
                            b.derivative.grad_u[comp][axis] = 2.0;
                        }
                        1 => {
                            b.u[comp] = x;
                            b.state.grad_u[comp][axis] = 1.0;
                        }
                        _ => b.u[comp] = 1.0,
                    }
                }
            }
            b
        };
        let mut m = DMatrix::zeros(n, n);
        for j in 0..n {
            let col = boundary_row(spec, &|x| basis(j, x));
            for i in 0..10 {
                m[(i, j)] = col[i];
            }
            // equilibrium rows only: with zero coupling the charge row follows
            // from them and the heat row vanishes for affine T and φ
            let fr = field_row(spec, &basis(j, 0.0));
            for i in 0..3 {
                m[(10 + i, j)] = fr[i];
            }
        }
        let mut rhs = DVector::zeros(n);
        for (i, v) in spec.data.to_array().into_iter().enumerate() {
            rhs[i] = v;
        }
        let y = dense_solve(m, rhs)?;
        Some(LimitOracle { coefficients: y.iter().copied().collect() })
    }

    /// [u1, u2, u3, T, φ] at x.
    pub fn values(&self, x: f64) -> [f64; 5] {
        let c = &self.coefficients;
        let u = |k: usize| c[4 + 3 * k] * x * x + c[5 + 3 * k] * x + c[6 + 3 * k];
        [u(0), u(1), u(2), c[0] * x + c[1], c[2] * x + c[3]]
    }
}

/// Material whose rate a vanishes in the given orientation.
pub fn zero_rate_material(o: Orientation) -> MaterialHexagonal {
    let mut m = MaterialHexagonal::illustrative_pzt();
    match o {
        Orientation::Thickness1 => m.omega1 = 0.0,
        Orientation::Thickness3 => m.omega3 = -m.beta3 * m.e33 / m.c33,
    }
    m
}
