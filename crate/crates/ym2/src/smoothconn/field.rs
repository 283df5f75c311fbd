//! Polynomial gauge fields on R² valued in 2×2 anti-Hermitian matrices,
//! with exact closed-form curvature.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::smoothconn::matrixutil::{commutator, frobenius_norm, CMatrix};

/// One monomial x^px · y^py · M of a matrix-valued polynomial.
#[derive(Debug, Clone)]
pub struct Monomial {
    pub px: u32,
    pub py: u32,
    pub coeff: CMatrix,
}

#[derive(Debug, Clone, Default)]
pub struct MatrixPolynomial {
    terms: Vec<Monomial>,
}

impl MatrixPolynomial {
    pub fn new(terms: Vec<Monomial>) -> Self {
        MatrixPolynomial { terms }
    }

    pub fn eval(&self, x: f64, y: f64, n: usize) -> CMatrix {
        let mut sum = CMatrix::zeros(n, n);
        for t in &self.terms {
            let s = x.powi(t.px as i32) * y.powi(t.py as i32);
            sum += &t.coeff * Complex64::new(s, 0.0);
        }
        sum
    }

    /// Exact partial derivative, term by term.
    pub fn derivative(&self, wrt_x: bool) -> MatrixPolynomial {
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                let p = if wrt_x { t.px } else { t.py };
                if p == 0 {
                    return None;
                }
                Some(Monomial {
                    px: if wrt_x { t.px - 1 } else { t.px },
                    py: if wrt_x { t.py } else { t.py - 1 },
                    coeff: &t.coeff * Complex64::new(p as f64, 0.0),
                })
            })
            .collect();
        MatrixPolynomial { terms }
    }
}

/// A smooth gauge field A = A_x dx + A_y dy on R², polynomial in the
/// coordinates, valued in the 2×2 anti-Hermitian traceless matrices.
#[derive(Debug, Clone)]
pub struct GaugeField2D {
    pub name: String,
    ax: MatrixPolynomial,
    ay: MatrixPolynomial,
    dim: usize,
}

/// Generators iσ₁, iσ₂, iσ₃.
pub fn su2_generator(k: usize) -> CMatrix {
    let i = Complex64::new(0.0, 1.0);
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match k {
        1 => CMatrix::from_row_slice(2, 2, &[z, i, i, z]),
        2 => CMatrix::from_row_slice(2, 2, &[z, one, -one, z]),
        3 => CMatrix::from_row_slice(2, 2, &[i, z, z, -i]),
        _ => panic!("generator index must be 1..=3"),
    }
}

impl GaugeField2D {
    pub fn new(name: &str, ax: MatrixPolynomial, ay: MatrixPolynomial) -> Result<Self> {
        let field = GaugeField2D {
            name: name.to_string(),
            ax,
            ay,
            dim: 2,
        };
        field.validate()?;
        Ok(field)
    }

    /// Checks anti-Hermiticity and tracelessness on a sample grid to 1e−12.
    fn validate(&self) -> Result<()> {
        for i in -3..=3 {
            for j in -3..=3 {
                let (x, y) = (i as f64 / 3.0, j as f64 / 3.0);
                for m in [self.a_x(x, y), self.a_y(x, y)] {
                    let anti = frobenius_norm(&(&m + m.adjoint()));
                    let trace: Complex64 = (0..self.dim).map(|k| m[(k, k)]).sum();
                    if anti > 1e-12 || trace.norm() > 1e-12 {
                        return Err(Error::InvalidArgument(format!(
                            "field '{}' is not su(2)-valued at ({x}, {y})",
                            self.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn a_x(&self, x: f64, y: f64) -> CMatrix {
        self.ax.eval(x, y, self.dim)
    }

    pub fn a_y(&self, x: f64, y: f64) -> CMatrix {
        self.ay.eval(x, y, self.dim)
    }

    /// Exact curvature F = ∂_x A_y − ∂_y A_x + [A_x, A_y] from the
    /// polynomial closed form; the reference for the finite-difference route.
    pub fn exact_curvature(&self, x: f64, y: f64) -> CMatrix {
        let dxay = self.ay.derivative(true).eval(x, y, self.dim);
        let dyax = self.ax.derivative(false).eval(x, y, self.dim);
        dxay - dyax + commutator(&self.a_x(x, y), &self.a_y(x, y))
    }

    /// The built-in catalog: "zero", "abelian-constant-B",
    /// "nonabelian-poly-1".
    pub fn catalog(name: &str) -> Result<Self> {
        match name {
            "zero" => GaugeField2D::new("zero", MatrixPolynomial::default(), MatrixPolynomial::default()),
            "abelian-constant-B" => {
                // A = ½B(−y dx + x dy)·iσ₃: constant curvature F = B·iσ₃.
                let b = 0.7;
                let ax = MatrixPolynomial::new(vec![Monomial {
                    px: 0,
                    py: 1,
                    coeff: su2_generator(3) * Complex64::new(-0.5 * b, 0.0),
                }]);
                let ay = MatrixPolynomial::new(vec![Monomial {
                    px: 1,
                    py: 0,
                    coeff: su2_generator(3) * Complex64::new(0.5 * b, 0.0),
                }]);
                GaugeField2D::new("abelian-constant-B", ax, ay)
            }
            "nonabelian-poly-1" => {
                // Non-commuting components with nonzero F and ∇F at the origin.
                let ax = MatrixPolynomial::new(vec![
                    Monomial {
                        px: 0,
                        py: 0,
                        coeff: su2_generator(1) * Complex64::new(0.2, 0.0),
                    },
                    Monomial {
                        px: 1,
                        py: 0,
                        coeff: su2_generator(2) * Complex64::new(0.3, 0.0),
                    },
                ]);
                let ay = MatrixPolynomial::new(vec![
                    Monomial {
                        px: 0,
                        py: 0,
                        coeff: su2_generator(2) * Complex64::new(0.25, 0.0),
                    },
                    Monomial {
                        px: 0,
                        py: 1,
                        coeff: su2_generator(3) * Complex64::new(0.2, 0.0),
                    },
                ]);
                GaugeField2D::new("nonabelian-poly-1", ax, ay)
            }
            other => Err(Error::InvalidArgument(format!(
                "unknown catalog field '{other}' (expected \"zero\", \
                 \"abelian-constant-B\" or \"nonabelian-poly-1\")"
            ))),
        }
    }

    /// The constant-curvature strength of the abelian catalog entry.
    pub fn abelian_field_strength() -> f64 {
        0.7
    }

    /// Load a custom polynomial field from the JSON coefficient-table form
    /// {"ax": [[[px, py], [[[re, im], [re, im]], [[re, im], [re, im]]]], …],
    ///  "ay": […]}.
    pub fn from_json(text: &[u8]) -> Result<Self> {
        let value: Value = serde_json::from_slice(text)
            .map_err(|e| Error::InvalidArgument(format!("field JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::InvalidArgument("field JSON must be an object".into()))?;
        let parse_component = |key: &str| -> Result<MatrixPolynomial> {
            let arr = obj
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::InvalidArgument(format!("missing component '{key}'")))?;
            let mut terms = Vec::new();
            for item in arr {
                let pair = item
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::InvalidArgument("monomial must be [powers, matrix]".into()))?;
                let powers: Vec<u64> = pair[0]
                    .as_array()
                    .and_then(|p| p.iter().map(Value::as_u64).collect())
                    .filter(|p: &Vec<u64>| p.len() == 2)
                    .ok_or_else(|| {
                        Error::InvalidArgument("powers must be two nonnegative integers".into())
                    })?;
                let rows = pair[1]
                    .as_array()
                    .filter(|r| r.len() == 2)
                    .ok_or_else(|| Error::InvalidArgument("matrix must be 2×2".into()))?;
                let mut entries = Vec::with_capacity(4);
                for row in rows {
                    let row = row
                        .as_array()
                        .filter(|r| r.len() == 2)
                        .ok_or_else(|| Error::InvalidArgument("matrix must be 2×2".into()))?;
                    for z in row {
                        let z = z
                            .as_array()
                            .and_then(|p| {
                                Some(Complex64::new(p.first()?.as_f64()?, p.get(1)?.as_f64()?))
                            })
                            .ok_or_else(|| {
                                Error::InvalidArgument("matrix entry must be [re, im]".into())
                            })?;
                        entries.push(z);
                    }
                }
                terms.push(Monomial {
                    px: powers[0] as u32,
                    py: powers[1] as u32,
                    coeff: DMatrix::from_row_slice(2, 2, &entries),
                });
            }
            Ok(MatrixPolynomial::new(terms))
        };
        GaugeField2D::new("custom", parse_component("ax")?, parse_component("ay")?)
    }
}
