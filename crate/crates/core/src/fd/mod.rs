//! Second-order finite differences for the thickness-direction boundary-value
//! problem.
//!
//! The discretization knows only the constitutive evaluators and the list of
//! boundary conditions; it uses none of the closed-form coefficient formulas,
//! so agreement between the two is an independent check. It also handles a
//! vanishing exponential rate, which the closed form cannot.

mod band;
mod compare;

pub use band::{solve_banded, BandLu, BandMatrix, BandSolve};
pub use compare::{compare, compare_pair, verify, ConvergenceReport, ErrorReport, FieldError};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::KinematicState;
use crate::panel::{PanelSolution, ProblemSpec, Variant};

/// Unknowns per node, interleaved as (u1, u2, u3, T, φ).
pub const FIELDS: usize = 5;
pub const FIELD_NAMES: [&str; FIELDS] = ["u1", "u2", "u3", "T", "phi"];
const T_FIELD: usize = 3;
const PHI_FIELD: usize = 4;
/// Band half-widths of the assembled system.
const KL: usize = 14;
const KU: usize = 14;

/// Smallest admissible number of intervals.
pub const MIN_INTERVALS: usize = 8;

/// Uniform grid x_i = -h + iΔ, i = 0..=n, Δ = 2h/n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    /// Number of intervals; the grid has n + 1 nodes.
    pub n: usize,
    pub h: f64,
}

impl Grid {
    pub fn new(n: usize, h: f64) -> Result<Self> {
        if n < MIN_INTERVALS {
            return Err(Error::GridTooCoarse {
                n,
                min: MIN_INTERVALS,
            });
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidInput(format!("half-thickness must be positive, got {h}")));
        }
        Ok(Grid { n, h })
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.h / self.n as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        if i == self.n {
            self.h
        } else {
            -self.h + i as f64 * self.spacing()
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.n).map(|i| self.node(i))
    }
}

/// Nodal values of the discrete solution.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSolution {
    pub spec: ProblemSpec,
    pub grid: Grid,
    /// `values[i] = [u1, u2, u3, T, φ]` at node i.
    pub values: Vec<[f64; FIELDS]>,
    /// Relative residual of the linear solve.
    pub residual: f64,
}

impl DiscreteSolution {
    /// A closed-form solution sampled at the grid nodes.
    pub fn from_closed_form(sol: &PanelSolution, grid: Grid) -> Self {
        DiscreteSolution {
            spec: sol.spec.clone(),
            grid,
            values: grid.nodes().map(|x| closed_form_values(sol, x)).collect(),
            residual: 0.0,
        }
    }
}

pub(crate) fn closed_form_values(sol: &PanelSolution, x: f64) -> [f64; FIELDS] {
    let f = sol.point(x);
    [
        f.displacement[0],
        f.displacement[1],
        f.displacement[2],
        f.temperature,
        f.potential,
    ]
}

/// Kinematic state with one unknown's contribution.
///
/// `value` multiplies the nodal value in the temperature slot; `slope`
/// multiplies it in the normal gradient slot.
fn unit_state(field: usize, axis: usize, value: f64, slope: f64) -> KinematicState {
    let mut ks = KinematicState::zero();
    match field {
        0..=2 => ks.grad_u[field][axis] = slope,
        T_FIELD => {
            ks.grad_t[axis] = slope;
            ks.t = value;
        }
        PHI_FIELD => ks.grad_phi[axis] = slope,
        _ => unreachable!(),
    }
    ks
}

/// Adds the row `functional(Σ_m Σ_f ks(node_m, f))` to the matrix, one
/// column per (node, field) pair, where each stencil entry is
/// `(node, weight on T, weight on gradients)`.
fn add_functional_row(
    a: &mut BandMatrix,
    row: usize,
    axis: usize,
    stencil: &[(usize, f64, f64)],
    functional: &dyn Fn(&KinematicState) -> f64,
) {
    for &(node, w_value, w_slope) in stencil {
        for f in 0..FIELDS {
            let v = functional(&unit_state(f, axis, w_value, w_slope));
            if v != 0.0 {
                a.add(row, FIELDS * node + f, v);
            }
        }
    }
}

/// Solves the discrete boundary-value problem.
pub fn solve_fd(spec: &ProblemSpec, grid: Grid) -> Result<DiscreteSolution> {
    let grid = Grid::new(grid.n, grid.h)?;
    if grid.h != spec.h {
        return Err(Error::SpecMismatch);
    }
    let m = &spec.material;
    let o = spec.orientation;
    let axis = o.axis();
    let n = grid.n;
    let dx = grid.spacing();
    let size = FIELDS * (n + 1);
    let mut a = BandMatrix::new(size, KL, KU);
    let mut b = vec![0.0; size];
    let data = spec.data.to_array();

    // interior: d/dx of normal stresses, heat flux and charge
    let rows = o.normal_stress_row();
    let interior: [Box<dyn Fn(&KinematicState) -> f64>; FIELDS] = [
        Box::new(move |ks| m.stress(ks)[rows[0]]),
        Box::new(move |ks| m.stress(ks)[rows[1]]),
        Box::new(move |ks| m.stress(ks)[rows[2]]),
        Box::new(move |ks| m.heat_flux(ks)[axis]),
        Box::new(move |ks| m.electric_displacement(ks)[axis]),
    ];
    let inv2 = 1.0 / (dx * dx);
    let inv1 = 0.5 / dx;
    for i in 1..n {
        // the derivative state holds second differences in the gradient
        // slots and the central first difference of T in the T slot
        let stencil = [
            (i - 1, -inv1, inv2),
            (i, 0.0, -2.0 * inv2),
            (i + 1, inv1, inv2),
        ];
        for (r, func) in interior.iter().enumerate() {
            add_functional_row(&mut a, FIELDS * i + r, axis, &stencil, func.as_ref());
        }
    }

    // lower face x = -h: forward one-sided gradients
    let s = 0.5 / dx;
    let lower = [(0, 1.0, -3.0 * s), (1, 0.0, 4.0 * s), (2, 0.0, -s)];
    for j in 0..3 {
        a.add(j, j, 1.0);
        b[j] = data[5 + j];
    }
    add_functional_row(&mut a, T_FIELD, axis, &lower, &|ks| -m.heat_flux(ks)[axis]);
    b[T_FIELD] = data[8];
    match spec.variant {
        Variant::I => {
            add_functional_row(&mut a, PHI_FIELD, axis, &lower, &|ks| {
                -m.electric_displacement(ks)[axis]
            });
        }
        Variant::II => a.add(PHI_FIELD, PHI_FIELD, 1.0),
    }
    b[PHI_FIELD] = data[9];

    // upper face x = +h: backward one-sided gradients for the tractions
    let base = FIELDS * n;
    let upper = [(n - 2, 0.0, s), (n - 1, 0.0, -4.0 * s), (n, 1.0, 3.0 * s)];
    let tc = o.traction_components();
    for (j, comp) in rows.into_iter().enumerate() {
        let slot = tc.iter().position(|&c| c == comp).expect("traction set");
        add_functional_row(&mut a, base + j, axis, &upper, &|ks| m.stress(ks)[comp]);
        b[base + j] = data[2 + slot];
    }
    a.add(base + T_FIELD, base + T_FIELD, 1.0);
    b[base + T_FIELD] = data[0];
    a.add(base + PHI_FIELD, base + PHI_FIELD, 1.0);
    b[base + PHI_FIELD] = data[1];

    let out = solve_banded(a, b)?;
    let values = out
        .x
        .chunks_exact(FIELDS)
        .map(|c| [c[0], c[1], c[2], c[3], c[4]])
        .collect();
    Ok(DiscreteSolution {
        spec: spec.clone(),
        grid,
        values,
        residual: out.residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{MaterialHexagonal, Orientation};
    use crate::panel::{solve_panel, BoundaryData};

    fn spec(o: Orientation, v: Variant, d: [f64; 10]) -> ProblemSpec {
        ProblemSpec::new(
            MaterialHexagonal::illustrative_pzt(),
            o,
            v,
            1e-3,
            BoundaryData::from_array(v, &d),
        )
        .unwrap()
    }

    #[test]
    fn grid_checks() {
        assert_eq!(Grid::new(4, 1.0), Err(Error::GridTooCoarse { n: 4, min: 8 }));
        let g = Grid::new(8, 1.0).unwrap();
        assert_eq!(g.node(0), -1.0);
        assert_eq!(g.node(8), 1.0);
        assert_eq!(g.spacing(), 0.25);
    }

    #[test]
    fn zero_data_gives_zero_solution() {
        let s = spec(Orientation::Thickness1, Variant::I, [0.0; 10]);
        let d = solve_fd(&s, Grid::new(16, 1e-3).unwrap()).unwrap();
        assert!(d.values.iter().flatten().all(|v| *v == 0.0));
    }

    #[test]
    fn second_order_convergence_on_sample() {
        let d = [20.0, 50.0, 1e6, -2e6, 5e5, 1e-6, -1e-6, 2e-6, 3e3, 1e-3];
        let s = spec(Orientation::Thickness1, Variant::I, d);
        let sol = solve_panel(&s).unwrap();
        let c = compare(&sol, &solve_fd(&s, Grid::new(256, 1e-3).unwrap()).unwrap()).unwrap();
        let f = compare(&sol, &solve_fd(&s, Grid::new(512, 1e-3).unwrap()).unwrap()).unwrap();
        let ratio = c.max_relative / f.max_relative;
        assert!((3.4..4.6).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn affine_fields_are_exact() {
        // u2 never sees the exponential; its FD profile is exact
        let d = [0.0, 0.0, 0.0, 4e5, 0.0, 0.0, 3e-6, 0.0, 0.0, 0.0];
        for (o, v) in [(Orientation::Thickness1, Variant::I), (Orientation::Thickness3, Variant::II)] {
            let s = spec(o, v, d);
            let sol = solve_panel(&s).unwrap();
            let disc = solve_fd(&s, Grid::new(32, 1e-3).unwrap()).unwrap();
            for (x, vals) in disc.grid.nodes().zip(&disc.values) {
                let want = sol.point(x).displacement[1];
                assert!((vals[1] - want).abs() < 1e-12 * want.abs().max(1e-6));
            }
        }
    }
}
