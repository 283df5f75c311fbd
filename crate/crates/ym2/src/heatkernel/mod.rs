//! The heat-kernel Radon-Nikodym density f_t = Σ d_ν e^{−t c_ν} χ_ν with
//! certified truncation, its measures, products over non-overlapping flags,
//! and class-coordinate sampling.
//!
//! The flag time parameter is t = ½κ²·|β| (coupling squared times enclosed
//! area over two); the density is the Radon-Nikodym derivative of the
//! lattice Yang-Mills measure with respect to Haar.

mod sampler;
mod tail;

pub use sampler::{sample_class, ClassSampler};
pub use tail::{casimir_power_tail, sup_bound_value, tail_bound_series};

use std::io::Write;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::liegroup::{
    character, irreps_up_to, ClassFunction, ClassPoint, ClassQuadrature, GroupSpec, Irrep,
};

/// Default hard cap for the enumeration cutoff ‖ν‖.
pub const DEFAULT_CUTOFF_CAP: f64 = 1e4;

/// Heat-kernel parameters of one flag: the group and the time t = ½κ²|β|.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatKernelParams {
    group: GroupSpec,
    time: f64,
}

impl HeatKernelParams {
    /// t = 0 is the delta-measure degenerate case and is rejected here;
    /// expectation-level operations return the exact delta limit instead.
    pub fn new(group: GroupSpec, time: f64) -> Result<Self> {
        if !(time > 0.0) || !time.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "heat-kernel time must be positive and finite, got {time}"
            )));
        }
        Ok(HeatKernelParams { group, time })
    }

    /// Parameters for a flag of the given enclosed area: t = ½κ²·area.
    pub fn for_flag(group: GroupSpec, coupling: f64, area: f64) -> Result<Self> {
        HeatKernelParams::new(group, 0.5 * coupling * coupling * area)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn time(&self) -> f64 {
        self.time
    }
}

/// The truncated heat-kernel density with a certified sup-norm bound on the
/// omitted tail.
#[derive(Debug, Clone)]
pub struct TruncatedDensity {
    params: HeatKernelParams,
    coefficients: Vec<(Irrep, f64)>,
    tail_bound: f64,
    cutoff: f64,
}

impl TruncatedDensity {
    pub fn params(&self) -> &HeatKernelParams {
        &self.params
    }

    /// Kept coefficients (Irrep, d_ν e^{−t c_ν}), Casimir-ascending.
    pub fn coefficients(&self) -> &[(Irrep, f64)] {
        &self.coefficients
    }

    /// Certified bound on Σ_{omitted ν} d_ν² e^{−t c_ν} ≥ sup-norm of the
    /// omitted series (using sup|χ_ν| = d_ν).
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    /// Density value at a class point with its error bar (± tail_bound).
    ///
    /// The exact density is real; torus contributions of dual labels ±z share
    /// one coefficient and the kept label set is symmetric under z ↦ −z, so
    /// summing real parts realizes the ±z pairing 2cos(zφ) exactly.
    pub fn eval(&self, point: &ClassPoint) -> (f64, f64) {
        let group = &self.params.group;
        let value = self
            .coefficients
            .iter()
            .map(|(rep, c)| c * character(group, rep, point).re)
            .sum();
        (value, self.tail_bound)
    }

    /// Value at the identity class point: Σ coeff_ν · d_ν.
    pub fn eval_identity(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|(rep, c)| c * rep.dimension() as f64)
            .sum()
    }

    /// ∫ indicator · f_t dHaar by tensor-product quadrature.
    pub fn measure(&self, indicator: &ClassFunction, quad_order: usize) -> f64 {
        let quad = ClassQuadrature::new(&self.params.group, quad_order);
        quad.integrate_fn(|p| Complex64::new(indicator.eval(p).re * self.eval(p).0, 0.0))
            .re
    }

    /// CSV dump: header "group,t,label,coefficient", one row per kept irrep,
    /// trailer row "tail_bound,<value>".
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "group,t,label,coefficient")?;
        let name = self.params.group.canonical_name();
        for (rep, c) in &self.coefficients {
            writeln!(w, "{},{},{},{}", name, self.params.time, rep, c)?;
        }
        writeln!(w, "tail_bound,{}", self.tail_bound)
    }
}

/// Build the density with the smallest integer enumeration cutoff whose
/// certified tail bound is ≤ `tol`, capped at [`DEFAULT_CUTOFF_CAP`].
pub fn build_density(params: &HeatKernelParams, tol: f64) -> Result<TruncatedDensity> {
    build_density_capped(params, tol, DEFAULT_CUTOFF_CAP)
}

/// [`build_density`] with an explicit cutoff cap (for callers that knowingly
/// work at very small times).
pub fn build_density_capped(
    params: &HeatKernelParams,
    tol: f64,
    cap: f64,
) -> Result<TruncatedDensity> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let group = &params.group;
    let t = params.time;

    // Bracket the smallest integer cutoff with tail ≤ tol, then bisect.
    let mut hi = 1u64;
    while tail_bound_series(group, t, hi as f64) > tol {
        if (hi as f64) > cap {
            // Report the bracketing cutoff as the needed one.
            return Err(Error::ResourceExceeded {
                needed: hi as f64,
                cap,
            });
        }
        hi *= 2;
    }
    let mut lo = hi / 2;
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if tail_bound_series(group, t, mid as f64) <= tol {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let cutoff = hi.max(1) as f64;
    if cutoff > cap {
        return Err(Error::ResourceExceeded {
            needed: cutoff,
            cap,
        });
    }

    let coefficients = irreps_up_to(group, cutoff)
        .into_iter()
        .map(|rep| {
            let c = rep.dimension() as f64 * (-t * rep.casimir()).exp();
            (rep, c)
        })
        .collect();
    Ok(TruncatedDensity {
        params: params.clone(),
        coefficients,
        tail_bound: tail_bound_series(group, t, cutoff),
        cutoff,
    })
}

/// Density value with error bar at a class point (thin wrapper over
/// [`TruncatedDensity::eval`]).
pub fn density_eval(density: &TruncatedDensity, point: &ClassPoint) -> (f64, f64) {
    density.eval(point)
}

/// Closed-form sup-norm bound 1 + Σ_ν const_ν t^{−(ν+1)/2} for the density;
/// always ≥ f_t(e) − tail_bound.
pub fn sup_bound(params: &HeatKernelParams) -> f64 {
    sup_bound_value(&params.group, params.time)
}

/// μ_YM,β of an Ad-invariant set given by an indicator with values in [0,1]:
/// ∫ indicator · f_t dHaar on the truncated density.
pub fn measure_of_class_set(
    params: &HeatKernelParams,
    indicator: &ClassFunction,
    tol: f64,
    quad_order: usize,
) -> Result<f64> {
    let density = build_density(params, tol)?;
    Ok(density.measure(indicator, quad_order))
}

/// Product of per-flag densities over a moderately independent flag world:
/// evaluation at (g₁,…,g_n) is the product of component evaluations.
#[derive(Debug, Clone)]
pub struct ProductDensity {
    components: Vec<TruncatedDensity>,
}

impl ProductDensity {
    pub fn new(components: Vec<TruncatedDensity>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidArgument(
                "product density needs at least one component".into(),
            ));
        }
        Ok(ProductDensity { components })
    }

    pub fn components(&self) -> &[TruncatedDensity] {
        &self.components
    }

    /// Product evaluation with a propagated error bar.
    pub fn eval(&self, points: &[ClassPoint]) -> (f64, f64) {
        assert_eq!(points.len(), self.components.len());
        let mut value = 1.0;
        let mut outer = 1.0;
        for (d, p) in self.components.iter().zip(points) {
            let (v, e) = d.eval(p);
            value *= v;
            outer *= v.abs() + e;
        }
        (value, outer - value.abs())
    }

    /// Measure of a product set U₁ × ··· × U_n: the product of the
    /// per-component measures.
    pub fn measure_product(&self, indicators: &[ClassFunction], quad_order: usize) -> f64 {
        assert_eq!(indicators.len(), self.components.len());
        self.components
            .iter()
            .zip(indicators)
            .map(|(d, ind)| d.measure(ind, quad_order))
            .product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liegroup::SmoothnessHint;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rejects_time_zero() {
        assert!(HeatKernelParams::new(GroupSpec::su2(), 0.0).is_err());
        assert!(HeatKernelParams::new(GroupSpec::su2(), -1.0).is_err());
    }

    #[test]
    fn trivial_coefficient_is_one() {
        let p = HeatKernelParams::new(GroupSpec::su2(), 0.3).unwrap();
        let d = build_density(&p, 1e-10).unwrap();
        let (rep, c) = &d.coefficients()[0];
        assert!(rep.is_trivial());
        assert_eq!(*c, 1.0);
    }

    #[test]
    fn long_time_density_is_one() {
        let p = HeatKernelParams::new(GroupSpec::su2(), 50.0).unwrap();
        let d = build_density(&p, 1e-12).unwrap();
        let e = ClassPoint::identity(&GroupSpec::su2());
        let (v, err) = d.eval(&e);
        assert!((v - 1.0).abs() < 1e-12 + err);
    }

    #[test]
    fn small_kept_set_at_large_time() {
        let p = HeatKernelParams::new(GroupSpec::su2(), 10.0).unwrap();
        let d = build_density(&p, 1e-12).unwrap();
        assert!(d.coefficients().len() <= 6, "{}", d.coefficients().len());
        // f ≈ 1 + 4e^{−30}·cosθ-part: coefficient of n=1 is 2e^{−30}.
        let c1 = d
            .coefficients()
            .iter()
            .find(|(r, _)| r.label() == [1])
            .map(|(_, c)| *c)
            .unwrap();
        assert_abs_diff_eq!(c1, 2.0 * (-30.0f64).exp(), epsilon = 1e-25);
    }

    #[test]
    fn identity_value_matches_partial_sums() {
        // Brute-force oracle: Σ (n+1)² e^{−0.1 n(n+2)} to n = 400.
        let t = 0.1;
        let brute: f64 = (0..=400)
            .map(|n| ((n + 1) as f64).powi(2) * (-t * (n * (n + 2)) as f64).exp())
            .sum();
        let p = HeatKernelParams::new(GroupSpec::su2(), t).unwrap();
        let d = build_density(&p, 1e-12).unwrap();
        assert!((d.eval_identity() - brute).abs() <= d.tail_bound() + 1e-12);
    }

    #[test]
    fn jacobi_theta_value_on_u1() {
        // f_1(0) on U(1) = Σ_z e^{−z²} = 1 + 2Σ_{z≥1} e^{−z²} ≈ 1.7726372048.
        let brute: f64 = 1.0 + 2.0 * (1..=12).map(|z| (-((z * z) as f64)).exp()).sum::<f64>();
        assert_abs_diff_eq!(brute, 1.7726372048266516, epsilon = 1e-12);
        let p = HeatKernelParams::new(GroupSpec::u1(), 1.0).unwrap();
        let d = build_density(&p, 1e-12).unwrap();
        let phi0 = ClassPoint::identity(&GroupSpec::u1());
        let (v, err) = d.eval(&phi0);
        assert!((v - brute).abs() <= err + 1e-12);
        assert_abs_diff_eq!(v, 1.7726372048266516, epsilon = 1e-10);
    }

    #[test]
    fn resource_error_names_needed_cutoff() {
        let p = HeatKernelParams::new(GroupSpec::su2(), 1e-12).unwrap();
        match build_density(&p, 1e-10) {
            Err(Error::ResourceExceeded { needed, cap }) => {
                assert!(needed > cap);
            }
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn normalization_via_quadrature() {
        for &t in &[0.05, 0.5, 5.0] {
            let p = HeatKernelParams::new(GroupSpec::su2(), t).unwrap();
            let d = build_density(&p, 1e-10).unwrap();
            let order = 2 * (d.cutoff() as usize + 1) + 16;
            let total = d.measure(&ClassFunction::constant(1.0), order);
            assert!(
                (total - 1.0).abs() <= d.tail_bound() + 1e-9,
                "normalization off at t={t}: {total}"
            );
        }
    }

    #[test]
    fn identity_is_sup_over_sampled_points() {
        let p = HeatKernelParams::new(GroupSpec::su2(), 0.2).unwrap();
        let d = build_density(&p, 1e-10).unwrap();
        let at_e = d.eval(&ClassPoint::identity(&GroupSpec::su2())).0;
        for i in 1..64 {
            let th = std::f64::consts::PI * i as f64 / 64.0;
            let p = ClassPoint::new(&GroupSpec::su2(), vec![th]).unwrap();
            assert!(d.eval(&p).0 <= at_e + 1e-12);
        }
    }

    #[test]
    fn positivity_on_grid() {
        for &t in &[0.05, 0.5, 10.0] {
            let p = HeatKernelParams::new(GroupSpec::su2(), t).unwrap();
            let d = build_density(&p, 1e-10).unwrap();
            for i in 0..=128 {
                let th = std::f64::consts::PI * i as f64 / 128.0;
                let pt = ClassPoint::new(&GroupSpec::su2(), vec![th]).unwrap();
                let (v, err) = d.eval(&pt);
                assert!(v >= -err, "density negative beyond tail bound at t={t}");
            }
        }
    }

    #[test]
    fn semigroup_in_coefficients() {
        let g = GroupSpec::su2();
        let (s, t) = (0.3, 0.7);
        let ds = build_density(&HeatKernelParams::new(g.clone(), s).unwrap(), 1e-12).unwrap();
        let dt = build_density(&HeatKernelParams::new(g.clone(), t).unwrap(), 1e-12).unwrap();
        let dst = build_density(&HeatKernelParams::new(g.clone(), s + t).unwrap(), 1e-12).unwrap();
        for (rep, c) in dst.coefficients() {
            let cs = ds.coefficients().iter().find(|(r, _)| r == rep);
            let ct = dt.coefficients().iter().find(|(r, _)| r == rep);
            if let (Some((_, cs)), Some((_, ct))) = (cs, ct) {
                let d = rep.dimension() as f64;
                assert_abs_diff_eq!(cs * ct / d, *c, epsilon = 1e-15 * c.abs().max(1.0));
            }
        }
    }

    #[test]
    fn product_density_factorizes() {
        let g = GroupSpec::su2();
        let d1 = build_density(&HeatKernelParams::new(g.clone(), 0.4).unwrap(), 1e-10).unwrap();
        let d2 = build_density(&HeatKernelParams::new(g.clone(), 0.9).unwrap(), 1e-10).unwrap();
        let p1 = ClassPoint::new(&g, vec![0.7]).unwrap();
        let p2 = ClassPoint::new(&g, vec![2.1]).unwrap();
        let prod = ProductDensity::new(vec![d1.clone(), d2.clone()]).unwrap();
        let (v, _) = prod.eval(&[p1.clone(), p2.clone()]);
        assert_abs_diff_eq!(v, d1.eval(&p1).0 * d2.eval(&p2).0, epsilon = 1e-14);

        let half = ClassFunction::new_real(
            |p| if p.coords()[0] < 1.0 { 1.0 } else { 0.0 },
            SmoothnessHint::Measurable,
        );
        let m = prod.measure_product(&[half.clone(), half.clone()], 512);
        let m1 = d1.measure(&half, 512);
        let m2 = d2.measure(&half, 512);
        assert_abs_diff_eq!(m, m1 * m2, epsilon = 1e-12);
    }

    #[test]
    fn fourier_route_matches_measure() {
        // For f with known coefficients: ∫ f dμ_YM = Σ ⟨χ_ν,f⟩ d_ν e^{−t c_ν}.
        let g = GroupSpec::su2();
        let t = 0.8;
        let p = HeatKernelParams::new(g.clone(), t).unwrap();
        // f = 0.3·χ₀ + 0.5·χ₂ has exact coefficients.
        let f = {
            ClassFunction::new_real(
                |p| {
                    let th = p.coords()[0];
                    0.3 + 0.5 * crate::liegroup::su2_character(2, th)
                },
                SmoothnessHint::Analytic,
            )
        };
        let direct = measure_of_class_set(&p, &f, 1e-10, 128).unwrap();
        let fourier = 0.3 + 0.5 * 3.0 * (-t * 8.0).exp();
        assert_abs_diff_eq!(direct, fourier, epsilon = 1e-9);
    }
}
