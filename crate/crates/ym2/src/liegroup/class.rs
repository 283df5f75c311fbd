use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::liegroup::group::{FactorKind, GroupSpec};

/// A conjugacy class of the group in maximal-torus coordinates:
/// θ ∈ [0, π] per SU(2) factor, φ ∈ [−π, π) per U(1) factor.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassPoint {
    coords: Vec<f64>,
}

impl ClassPoint {
    pub fn new(group: &GroupSpec, coords: Vec<f64>) -> Result<Self> {
        if coords.len() != group.n_factors() {
            return Err(Error::InvalidArgument(format!(
                "class point arity {} does not match {} factors",
                coords.len(),
                group.n_factors()
            )));
        }
        for (f, &c) in group.factors().iter().zip(&coords) {
            let ok = match f.kind {
                FactorKind::Su2 => (0.0..=PI).contains(&c),
                FactorKind::Torus => (-PI..PI).contains(&c),
            };
            if !ok {
                return Err(Error::InvalidArgument(format!(
                    "class coordinate {c} out of range for factor kind {:?}",
                    f.kind
                )));
            }
        }
        Ok(ClassPoint { coords })
    }

    /// Class of the identity element (all coordinates zero).
    pub fn identity(group: &GroupSpec) -> Self {
        ClassPoint {
            coords: vec![0.0; group.n_factors()],
        }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        ClassPoint { coords }
    }
}

/// Hint used to pick quadrature orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmoothnessHint {
    Analytic,
    Smooth,
    Measurable,
}

/// An Ad-invariant function given by its values on class coordinates.
#[derive(Clone)]
pub struct ClassFunction {
    evaluator: Arc<dyn Fn(&ClassPoint) -> Complex64 + Send + Sync>,
    pub smoothness: SmoothnessHint,
}

impl ClassFunction {
    pub fn new<F>(f: F, smoothness: SmoothnessHint) -> Self
    where
        F: Fn(&ClassPoint) -> Complex64 + Send + Sync + 'static,
    {
        ClassFunction {
            evaluator: Arc::new(f),
            smoothness,
        }
    }

    /// Real-valued convenience constructor.
    pub fn new_real<F>(f: F, smoothness: SmoothnessHint) -> Self
    where
        F: Fn(&ClassPoint) -> f64 + Send + Sync + 'static,
    {
        ClassFunction {
            evaluator: Arc::new(move |p| Complex64::new(f(p), 0.0)),
            smoothness,
        }
    }

    pub fn constant(value: f64) -> Self {
        ClassFunction::new_real(move |_| value, SmoothnessHint::Analytic)
    }

    pub fn eval(&self, point: &ClassPoint) -> Complex64 {
        (self.evaluator)(point)
    }
}

impl std::fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ClassFunction")
            .field("smoothness", &self.smoothness)
            .finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_point_ranges() {
        let g = GroupSpec::parse("su2*u1").unwrap();
        assert!(ClassPoint::new(&g, vec![0.5, -1.0]).is_ok());
        assert!(ClassPoint::new(&g, vec![-0.1, 0.0]).is_err());
        assert!(ClassPoint::new(&g, vec![0.5, PI]).is_err());
        assert!(ClassPoint::new(&g, vec![0.5]).is_err());
        assert_eq!(ClassPoint::identity(&g).coords(), &[0.0, 0.0]);
    }
}
