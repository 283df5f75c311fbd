use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::liegroup::class::{ClassFunction, ClassPoint};
use crate::liegroup::group::{FactorKind, GroupSpec, Irrep};

/// Threshold below which the SU(2) character switches to its Dirichlet-kernel
/// limit value to avoid 0/0 at the torus singularities sin θ = 0.
const SIN_SINGULARITY_EPS: f64 = 1e-8;

/// SU(2) character χ_n(θ) = sin((n+1)θ)/sin θ, with the limit values
/// n+1 at θ = 0 and (−1)ⁿ(n+1) at θ = π.
pub fn su2_character(n: i64, theta: f64) -> f64 {
    debug_assert!(n >= 0);
    let s = theta.sin();
    if s.abs() < SIN_SINGULARITY_EPS {
        let d = (n + 1) as f64;
        if theta < PI / 2.0 {
            d
        } else if n % 2 == 0 {
            d
        } else {
            -d
        }
    } else {
        (((n + 1) as f64) * theta).sin() / s
    }
}

/// Character of `irrep` at a class point: product of per-factor values,
/// e^{izφ} for torus factors (complex; real for self-dual irreps).
pub fn character(group: &GroupSpec, irrep: &Irrep, point: &ClassPoint) -> Complex64 {
    let mut value = Complex64::new(1.0, 0.0);
    for ((f, &entry), &coord) in group
        .factors()
        .iter()
        .zip(irrep.label())
        .zip(point.coords())
    {
        match f.kind {
            FactorKind::Su2 => value *= su2_character(entry, coord),
            FactorKind::Torus => {
                value *= Complex64::from_polar(1.0, entry as f64 * coord);
            }
        }
    }
    value
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on [−1, 1],
/// computed by Newton iteration on Pₙ and cached per order.
pub(crate) fn gauss_legendre(n: usize) -> Arc<(Vec<f64>, Vec<f64>)> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<(Vec<f64>, Vec<f64>)>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = cache.lock().unwrap().get(&n) {
        return rule.clone();
    }
    let rule = Arc::new(compute_gauss_legendre(n));
    cache.lock().unwrap().insert(n, rule.clone());
    rule
}

fn compute_gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    // Roots come in ± pairs; solve the positive half.
    for i in 0..n.div_ceil(2) {
        // Tricomi-style initial guess for the i-th root from the top.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        // One polishing step so the weight uses a consistent derivative.
        let (p, d) = legendre_and_derivative(n, x);
        x -= p / d;
        let dp = legendre_and_derivative(n, x).1;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        let dp = legendre_and_derivative(n, 0.0).1;
        weights[n / 2] = 2.0 / (dp * dp);
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Tensor-product quadrature over the class coordinates of a group against
/// the per-factor class-measure densities: (2/π)sin²θ dθ on [0, π] for SU(2)
/// factors, dφ/2π on [−π, π) for torus factors.
///
/// SU(2) factors use Gauss-Legendre; torus factors use the midpoint rule,
/// which is spectrally accurate for periodic integrands.
#[derive(Debug, Clone)]
pub struct ClassQuadrature {
    group: GroupSpec,
    factor_nodes: Vec<Vec<f64>>,
    factor_weights: Vec<Vec<f64>>,
}

impl ClassQuadrature {
    pub fn new(group: &GroupSpec, quad_order: usize) -> Self {
        assert!(quad_order >= 2, "quad_order must be at least 2");
        let mut factor_nodes = Vec::new();
        let mut factor_weights = Vec::new();
        for f in group.factors() {
            match f.kind {
                FactorKind::Su2 => {
                    let rule = gauss_legendre(quad_order);
                    let (ref xs, ref ws) = *rule;
                    let nodes: Vec<f64> = xs.iter().map(|x| PI * (x + 1.0) / 2.0).collect();
                    let weights: Vec<f64> = ws
                        .iter()
                        .zip(&nodes)
                        .map(|(w, th)| w * th.sin().powi(2))
                        .collect();
                    factor_nodes.push(nodes);
                    factor_weights.push(weights);
                }
                FactorKind::Torus => {
                    let q = quad_order;
                    let nodes: Vec<f64> = (0..q)
                        .map(|j| -PI + 2.0 * PI * (j as f64 + 0.5) / q as f64)
                        .collect();
                    factor_nodes.push(nodes);
                    factor_weights.push(vec![1.0 / q as f64; q]);
                }
            }
        }
        ClassQuadrature {
            group: group.clone(),
            factor_nodes,
            factor_weights,
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    /// Visit every tensor-grid node with its combined weight.
    pub(crate) fn for_each_node<F>(&self, mut visit: F)
    where
        F: FnMut(&ClassPoint, f64),
    {
        let nf = self.factor_nodes.len();
        let mut idx = vec![0usize; nf];
        let mut coords = vec![0.0; nf];
        loop {
            let mut weight = 1.0;
            for (k, &i) in idx.iter().enumerate() {
                coords[k] = self.factor_nodes[k][i];
                weight *= self.factor_weights[k][i];
            }
            let point = ClassPoint::from_raw(coords.clone());
            visit(&point, weight);
            // Odometer over the tensor grid.
            let mut k = 0;
            loop {
                if k == nf {
                    return;
                }
                idx[k] += 1;
                if idx[k] < self.factor_nodes[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    pub fn integrate_fn<F>(&self, f: F) -> Complex64
    where
        F: Fn(&ClassPoint) -> Complex64,
    {
        let mut sum = Complex64::new(0.0, 0.0);
        self.for_each_node(|point, weight| sum += weight * f(point));
        sum
    }

    pub fn integrate(&self, f: &ClassFunction) -> Complex64 {
        self.integrate_fn(|p| f.eval(p))
    }
}

/// Haar integral of a class function by tensor-product quadrature.
/// Deterministic for fixed `quad_order`; accuracy is the caller's concern.
pub fn haar_integrate(group: &GroupSpec, f: &ClassFunction, quad_order: usize) -> Complex64 {
    ClassQuadrature::new(group, quad_order).integrate(f)
}

/// All coefficients ⟨χ_ν, f⟩ = ∫ f·conj(χ_ν) dHaar at once, on one shared
/// quadrature grid (f is evaluated once per node). Numerically identical to
/// per-irrep `haar_integrate` at the same order.
pub fn fourier_coefficients(
    group: &GroupSpec,
    f: &ClassFunction,
    reps: &[Irrep],
    quad_order: usize,
) -> Vec<Complex64> {
    let quad = ClassQuadrature::new(group, quad_order);
    let mut sums = vec![Complex64::new(0.0, 0.0); reps.len()];
    quad.for_each_node(|point, weight| {
        let fv = f.eval(point) * weight;
        for (sum, rep) in sums.iter_mut().zip(reps) {
            *sum += fv * character(group, rep, point).conj();
        }
    });
    sums
}
