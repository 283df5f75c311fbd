//! Small complex-matrix helpers for holonomy integration.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn frobenius_norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// Matrix exponential by scaling-and-squaring with a Taylor series; the
/// scaled norm is kept below 2⁻⁴, where 16 Taylor terms reach machine
/// precision.
pub fn expm(m: &CMatrix) -> CMatrix {
    let norm = frobenius_norm(m);
    let scale = if norm > 0.0625 {
        (norm / 0.0625).log2().ceil() as i32
    } else {
        0
    };
    let x = m / Complex64::new(2f64.powi(scale), 0.0);
    let n = m.nrows();
    let mut term = identity(n);
    let mut sum = identity(n);
    for k in 1..=16 {
        term = &term * &x / Complex64::new(k as f64, 0.0);
        sum += &term;
    }
    let mut result = sum;
    for _ in 0..scale {
        result = &result * &result;
    }
    result
}

/// Polar projection onto the unitary group by the Newton iteration
/// X ← ½(X + X^{−†}); quadratically convergent near unitarity.
pub fn polar_unitarize(m: &CMatrix) -> CMatrix {
    let mut x = m.clone();
    for _ in 0..8 {
        let inv = x
            .clone()
            .try_inverse()
            .expect("holonomy matrix is invertible");
        let next = (&x + inv.adjoint()) * Complex64::new(0.5, 0.0);
        let delta = frobenius_norm(&(&next - &x));
        x = next;
        if delta < 1e-15 {
            break;
        }
    }
    x
}

/// ‖X†X − 1‖_F, the unitarity defect.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    frobenius_norm(&(m.adjoint() * m - identity(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pauli3() -> CMatrix {
        CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, -1.0),
            ],
        )
    }

    #[test]
    fn expm_diagonal_closed_form() {
        // exp(a·iσ₃) = diag(e^{ia}, e^{−ia}).
        let a = 0.7;
        let e = expm(&(pauli3() * Complex64::new(a, 0.0)));
        assert_abs_diff_eq!(e[(0, 0)].re, a.cos(), epsilon = 1e-14);
        assert_abs_diff_eq!(e[(0, 0)].im, a.sin(), epsilon = 1e-14);
        assert_abs_diff_eq!(e[(1, 1)].im, -a.sin(), epsilon = 1e-14);
        assert_abs_diff_eq!(e[(0, 1)].norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn expm_large_argument() {
        let e = expm(&(pauli3() * Complex64::new(10.0, 0.0)));
        assert_abs_diff_eq!(e[(0, 0)].re, 10f64.cos(), epsilon = 1e-12);
        assert!(unitarity_defect(&e) < 1e-12);
    }

    #[test]
    fn polar_restores_unitarity() {
        let mut m = expm(&(pauli3() * Complex64::new(0.3, 0.0)));
        m[(0, 1)] += Complex64::new(1e-6, -2e-6);
        let u = polar_unitarize(&m);
        assert!(unitarity_defect(&u) < 1e-14);
        assert!(frobenius_norm(&(&u - &m)) < 1e-5);
    }
}
