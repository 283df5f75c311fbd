//! Small-holonomy numerics for smooth gauge fields on R²: path-ordered
//! holonomy by fourth-order Magnus integration and the round-loop defect
//! estimate ‖h_A(α) − (1 − F(m₀)|α|)‖ = O(|α|^{3/2}).

pub mod field;
pub mod holonomy;
mod matrixutil;

pub use field::{GaugeField2D, MatrixPolynomial, Monomial};
pub use holonomy::{curvature, holonomy, holonomy_along, Holonomy, RoundLoop};
pub use matrixutil::{frobenius_norm, unitarity_defect, CMatrix};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::singularity::log_log_slope;

/// One row of the round-loop defect table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundLoopRow {
    pub area: f64,
    /// ‖h − (1 − F(m₀)·area)‖_F.
    pub defect: f64,
    /// ‖h − 1‖_F.
    pub deviation: f64,
    /// ‖h − 1‖_F / area, the first-order witness c_A of that row.
    pub first_order_ratio: f64,
    pub integration_estimate: f64,
}

/// Result of the shrinking round-loop experiment.
#[derive(Debug, Clone)]
pub struct RoundLoopReport {
    pub rows: Vec<RoundLoopRow>,
    /// Least-squares slope of log defect vs log area over the smallest half
    /// of the radii; +∞ when every defect sits at the numerical floor.
    pub fitted_exponent: f64,
    /// Largest per-row first-order ratio (a fitted c_A witness).
    pub fitted_c_a: f64,
}

/// Defects of circles through `basepoint` shrinking tangentially, against the
/// first-order model 1 − F(m₀)·area with the exact curvature at the basepoint.
///
/// Fails if the integration error estimate exceeds 10% of the smallest
/// defect above the numerical floor (raise `steps`).
pub fn round_loop_estimate(
    field: &GaugeField2D,
    basepoint: [f64; 2],
    radii: &[f64],
    steps: usize,
) -> Result<RoundLoopReport> {
    if radii.is_empty() {
        return Err(Error::InvalidArgument("need at least one radius".into()));
    }
    if radii.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::InvalidArgument("radii must be strictly descending".into()));
    }
    let f0 = field.exact_curvature(basepoint[0], basepoint[1]);
    let id = nalgebra::DMatrix::identity(field.dim(), field.dim());
    let mut rows = Vec::with_capacity(radii.len());
    for &r in radii {
        let lp = RoundLoop::through_point(basepoint, r);
        let h = holonomy(field, &lp, steps)?;
        let area = lp.area();
        let model = &id - &f0 * Complex64::new(area, 0.0);
        let defect = frobenius_norm(&(&h.matrix - model));
        let deviation = frobenius_norm(&(&h.matrix - &id));
        rows.push(RoundLoopRow {
            area,
            defect,
            deviation,
            first_order_ratio: deviation / area,
            integration_estimate: h.error_estimate,
        });
    }

    const DEFECT_FLOOR: f64 = 1e-13;
    let smallest_live_defect = rows
        .iter()
        .map(|r| r.defect)
        .filter(|&d| d > DEFECT_FLOOR)
        .fold(f64::INFINITY, f64::min);
    if smallest_live_defect.is_finite() {
        let worst_estimate = rows
            .iter()
            .map(|r| r.integration_estimate)
            .fold(0.0, f64::max);
        if worst_estimate > 0.1 * smallest_live_defect {
            return Err(Error::Precision(format!(
                "integration error estimate {worst_estimate:.3e} exceeds 10% of the \
                 smallest defect {smallest_live_defect:.3e}; raise the step count"
            )));
        }
    }

    let fitted_exponent = if smallest_live_defect.is_finite() {
        let half: Vec<(f64, f64)> = rows
            .iter()
            .skip(rows.len() / 2)
            .filter(|r| r.defect > DEFECT_FLOOR)
            .map(|r| (r.area, r.defect))
            .collect();
        if half.len() >= 2 {
            log_log_slope(&half)
        } else {
            f64::INFINITY
        }
    } else {
        // All defects at the floor (e.g. the zero field).
        f64::INFINITY
    };
    let fitted_c_a = rows.iter().map(|r| r.first_order_ratio).fold(0.0, f64::max);
    Ok(RoundLoopReport {
        rows,
        fitted_exponent,
        fitted_c_a,
    })
}
