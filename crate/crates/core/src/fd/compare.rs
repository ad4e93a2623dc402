//! Closed form against the discrete solution.

use serde::Serialize;

use super::{closed_form_values, solve_fd, DiscreteSolution, Grid, FIELDS, FIELD_NAMES};
use crate::error::{Error, Result};
use crate::panel::{solve_panel, PanelSolution, ProblemSpec};

/// Deviation of one field over the grid nodes.
///
/// Relative norms divide by max(1, max |closed form|) so that identically
/// zero fields do not divide by zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldError {
    pub field: &'static str,
    pub max_abs: f64,
    pub max_relative: f64,
    pub l2_relative: f64,
    pub normalization: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    pub n: usize,
    pub fields: Vec<FieldError>,
    /// Largest `max_relative` over the fields.
    pub max_relative: f64,
    pub solver_residual: f64,
}

/// Per-field max and RMS deviations.
pub fn compare(sol: &PanelSolution, disc: &DiscreteSolution) -> Result<ErrorReport> {
    if sol.spec != disc.spec || disc.values.len() != disc.grid.n + 1 {
        return Err(Error::SpecMismatch);
    }
    let closed: Vec<[f64; FIELDS]> = disc.grid.nodes().map(|x| closed_form_values(sol, x)).collect();
    let count = closed.len() as f64;
    let fields: Vec<FieldError> = (0..FIELDS)
        .map(|f| {
            let peak = closed.iter().map(|v| v[f].abs()).fold(0.0, f64::max);
            let norm = peak.max(1.0);
            let (mut max_abs, mut sq) = (0.0f64, 0.0);
            for (c, d) in closed.iter().zip(&disc.values) {
                let e = (c[f] - d[f]).abs();
                max_abs = max_abs.max(e);
                sq += e * e;
            }
            FieldError {
                field: FIELD_NAMES[f],
                max_abs,
                max_relative: max_abs / norm,
                l2_relative: (sq / count).sqrt() / norm,
                normalization: norm,
            }
        })
        .collect();
    let max_relative = fields.iter().map(|f| f.max_relative).fold(0.0, f64::max);
    Ok(ErrorReport {
        n: disc.grid.n,
        fields,
        max_relative,
        solver_residual: disc.residual,
    })
}

/// Two grid levels and the observed order of accuracy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub problem: &'static str,
    pub coarse: ErrorReport,
    pub fine: ErrorReport,
    /// log2 of the ratio of the overall max errors; meaningful for n_fine = 2 n_coarse.
    pub order: f64,
    /// Same ratio per field; `None` where either error is zero.
    pub field_orders: Vec<Option<f64>>,
}

pub fn compare_pair(
    sol: &PanelSolution,
    coarse: &DiscreteSolution,
    fine: &DiscreteSolution,
) -> Result<ConvergenceReport> {
    let c = compare(sol, coarse)?;
    let f = compare(sol, fine)?;
    let levels = (fine.grid.n as f64 / coarse.grid.n as f64).log2();
    let ord = |ec: f64, ef: f64| (ec / ef).log2() / levels;
    let field_orders = c
        .fields
        .iter()
        .zip(&f.fields)
        .map(|(a, b)| (a.max_abs > 0.0 && b.max_abs > 0.0).then(|| ord(a.max_abs, b.max_abs)))
        .collect();
    Ok(ConvergenceReport {
        problem: sol.spec.label(),
        order: ord(c.max_relative, f.max_relative),
        coarse: c,
        fine: f,
        field_orders,
    })
}

/// Solves in closed form and on grids with n/2 and n intervals.
pub fn verify(spec: &ProblemSpec, n: usize) -> Result<ConvergenceReport> {
    if n % 2 != 0 {
        return Err(Error::InvalidInput(format!("grid size {n} must be even")));
    }
    let sol = solve_panel(spec)?;
    let coarse = solve_fd(spec, Grid::new(n / 2, spec.h)?)?;
    let fine = solve_fd(spec, Grid::new(n, spec.h)?)?;
    compare_pair(&sol, &coarse, &fine)
}
