//! The support-splitting construction separating the Yang-Mills measure from
//! the Haar (kinematical) measure: concentration bounds for shrinking flags,
//! the (μ₀, μ_YM) tables over the sets V_Λ = U^Λ, the Haar ball estimate,
//! and the smooth-connection exclusion bound.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::heatkernel::{
    build_density_capped, casimir_power_tail, sup_bound_value, HeatKernelParams, TruncatedDensity,
};
use crate::liegroup::{
    haar_integrate, ClassFunction, ClassPoint, FactorKind, GroupSpec, SmoothnessHint,
};

/// Internal cutoff cap for the very small flag times of the support-split
/// schedule (the public default cap stays at the heat-kernel module's value).
const SPLIT_TABLE_CUTOFF_CAP: f64 = 1e5;

/// An open Ad-invariant box neighborhood of the identity:
/// U = {all class coordinates below per-factor thresholds}.
#[derive(Debug, Clone, PartialEq)]
pub struct AdNeighborhood {
    group: GroupSpec,
    radii: Vec<f64>,
    haar_mass: f64,
}

/// Haar class mass of {θ < r} for one SU(2) factor:
/// (2/π)∫₀^r sin²θ dθ = (r − sin(2r)/2)/π.
fn su2_class_mass(r: f64) -> f64 {
    (r - (2.0 * r).sin() / 2.0) / PI
}

/// Haar class mass of {|φ| < r} for one U(1) factor.
fn torus_class_mass(r: f64) -> f64 {
    r / PI
}

impl AdNeighborhood {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    /// Per-factor thresholds (θ_max for SU(2) factors, φ_max for torus ones).
    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn haar_mass(&self) -> f64 {
        self.haar_mass
    }

    pub fn contains(&self, point: &ClassPoint) -> bool {
        self.radii
            .iter()
            .zip(point.coords())
            .zip(self.group.factors())
            .all(|((&r, &c), f)| match f.kind {
                FactorKind::Su2 => c < r,
                FactorKind::Torus => c.abs() < r,
            })
    }

    /// The {0,1}-valued indicator as a class function.
    pub fn indicator(&self) -> ClassFunction {
        let this = self.clone();
        ClassFunction::new_real(
            move |p| if this.contains(p) { 1.0 } else { 0.0 },
            SmoothnessHint::Measurable,
        )
    }

    /// μ_YM,β(U) for a truncated density: per-factor interval integrals of
    /// the character series in closed form, multiplied across factors (the
    /// heat kernel and the box both factorize).
    pub fn measure_under(&self, density: &TruncatedDensity) -> f64 {
        let group = &self.group;
        debug_assert_eq!(group, density.params().group());
        let mut per_factor = vec![0.0; group.n_factors()];
        for (pos, (factor, &r)) in group.factors().iter().zip(&self.radii).enumerate() {
            // Marginal coefficients: labels supported on this factor alone.
            let total: f64 = density
                .coefficients()
                .iter()
                .filter(|(rep, _)| {
                    rep.label()
                        .iter()
                        .enumerate()
                        .all(|(i, &e)| i == pos || e == 0)
                })
                .map(|(rep, c)| {
                    let e = rep.label()[pos];
                    c * match factor.kind {
                        FactorKind::Su2 => su2_char_interval_integral(e, r),
                        FactorKind::Torus => {
                            if e == 0 {
                                torus_class_mass(r)
                            } else {
                                (e as f64 * r).sin() / (PI * e as f64)
                            }
                        }
                    }
                })
                .sum();
            per_factor[pos] = total;
        }
        per_factor.iter().product()
    }
}

/// ∫₀^Θ χ_n(θ)(2/π)sin²θ dθ = (1/π)[sin(nΘ)/n − sin((n+2)Θ)/(n+2)] for n ≥ 1.
fn su2_char_interval_integral(n: i64, theta_max: f64) -> f64 {
    if n == 0 {
        su2_class_mass(theta_max)
    } else {
        let nf = n as f64;
        ((nf * theta_max).sin() / nf - ((nf + 2.0) * theta_max).sin() / (nf + 2.0)) / PI
    }
}

/// Choose per-factor thresholds by bisection so the product of the exact
/// per-factor class masses is (essentially) `target_mass`; the mass is split
/// equally across factors (each gets target_mass^{1/#factors}).
pub fn make_neighborhood(group: &GroupSpec, target_mass: f64) -> AdNeighborhood {
    assert!(
        target_mass > 0.0 && target_mass < 1.0,
        "target mass must lie in (0,1)"
    );
    let per_factor = target_mass.powf(1.0 / group.n_factors() as f64);
    let radii: Vec<f64> = group
        .factors()
        .iter()
        .map(|f| match f.kind {
            FactorKind::Su2 => bisect_mass(su2_class_mass, per_factor, PI),
            FactorKind::Torus => per_factor * PI,
        })
        .collect();
    let haar_mass = group
        .factors()
        .iter()
        .zip(&radii)
        .map(|(f, &r)| match f.kind {
            FactorKind::Su2 => su2_class_mass(r),
            FactorKind::Torus => torus_class_mass(r),
        })
        .product();
    AdNeighborhood {
        group: group.clone(),
        radii,
        haar_mass,
    }
}

/// Root of mass(r) = target on (0, hi) to f64 resolution, returning the
/// lower bracket end so the achieved mass never exceeds the target.
fn bisect_mass(mass: impl Fn(f64) -> f64, target: f64, hi: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if mass(mid) <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Ad-invariant C^∞ bump: 1 on the inner half of the neighborhood, an
/// iterated-cosine taper to 0 at the boundary, per factor.
///
/// Each iteration of u ↦ ½(1 − cos πu) squares the order of tangency at the
/// seam, so `smoothness` iterations give a C^{2^smoothness − 1} taper; the
/// default picks the smallest order covering C^{2s} for the requested
/// Sobolev order s.
#[derive(Debug, Clone)]
pub struct BumpFunction {
    support: AdNeighborhood,
    smoothness: u32,
    inner_fraction: f64,
}

impl BumpFunction {
    pub fn new(support: AdNeighborhood, smoothness: u32) -> Self {
        assert!(smoothness >= 1);
        BumpFunction {
            support,
            smoothness,
            inner_fraction: 0.5,
        }
    }

    /// Bump matching the Sobolev order: C^{2^k−1} ⊇ C^{2s} with the smallest
    /// number of taper iterations k.
    pub fn for_sobolev_order(support: AdNeighborhood, s: u32) -> Self {
        let mut k = 1;
        while (1u32 << k) - 1 < 2 * s {
            k += 1;
        }
        BumpFunction::new(support, k)
    }

    pub fn support(&self) -> &AdNeighborhood {
        &self.support
    }

    pub fn smoothness(&self) -> u32 {
        self.smoothness
    }

    fn taper(&self, u: f64) -> f64 {
        let mut h = u.clamp(0.0, 1.0);
        for _ in 0..self.smoothness {
            h = 0.5 * (1.0 - (PI * h).cos());
        }
        h
    }

    pub fn eval(&self, point: &ClassPoint) -> f64 {
        let mut value = 1.0;
        for ((factor, &r), &c) in self
            .support
            .group
            .factors()
            .iter()
            .zip(&self.support.radii)
            .zip(point.coords())
        {
            let x = match factor.kind {
                FactorKind::Su2 => c,
                FactorKind::Torus => c.abs(),
            };
            let a = self.inner_fraction * r;
            if x <= a {
                continue;
            }
            if x >= r {
                return 0.0;
            }
            value *= 1.0 - self.taper((x - a) / (r - a));
        }
        value
    }

    pub fn as_class_function(&self) -> ClassFunction {
        let this = self.clone();
        ClassFunction::new_real(move |p| this.eval(p), SmoothnessHint::Smooth)
    }
}

/// Certified constant c of the concentration bound μ_YM,β(U) ≥ 1 − c|β|:
/// c = ½κ² Σ_{ν≠0} |⟨χ_ν, f⟩| d_ν c_ν, the head computed by quadrature up to
/// an internal cutoff and the tail bounded via the coefficient asymptotics
/// |⟨χ_ν,f⟩| ≤ const_{s,f}/c_ν^s with const_{s,f} = ‖Δ^s f‖₂ estimated from
/// the Casimir-weighted coefficient sum.
///
/// `tol` is relative: the enumeration cutoff doubles until the certified
/// tail contribution falls below tol × the head, so doubling it further
/// changes c by less than that fraction. The returned value includes the
/// tail bound and is an upper bound at any cutoff.
pub fn concentration_constant(
    group: &GroupSpec,
    coupling: f64,
    bump: &BumpFunction,
    s: u32,
    tol: f64,
) -> Result<f64> {
    let m = group.n_su2() as u32;
    let kl = group.n_factors() as u32;
    if 2 * s < m + kl + 3 {
        return Err(Error::Parameter(format!(
            "Sobolev order 2s = {} too small: the series Σ c_ν^(1−s) d_ν needs \
             ½(dim G_ss − l)·1 + 2(1−s) ≤ −(k+l+1), i.e. 2s ≥ {}",
            2 * s,
            m + kl + 3
        )));
    }
    let f = bump.as_class_function();
    let mut cutoff = 32.0f64.max((kl as f64).sqrt() + 1.0);
    loop {
        let reps = crate::liegroup::irreps_up_to(group, cutoff);
        let quad_order = 2 * (cutoff as usize + 2) + 16;
        let coeffs = crate::liegroup::fourier_coefficients(group, &f, &reps, quad_order);
        let mut head = 0.0;
        let mut weighted_sq = 0.0;
        for (rep, coeff) in reps.iter().zip(&coeffs) {
            if rep.is_trivial() {
                continue;
            }
            let coeff = coeff.norm();
            head += coeff * rep.dimension() as f64 * rep.casimir();
            weighted_sq += rep.casimir().powi(2 * s as i32) * coeff * coeff;
        }
        let const_sf = weighted_sq.sqrt();
        let tail = const_sf * casimir_power_tail(group, s, cutoff);
        if tail <= tol * head {
            let half_k2 = 0.5 * coupling * coupling;
            return Ok(half_k2 * (head + tail));
        }
        cutoff *= 2.0;
        if cutoff > 1e5 {
            return Err(Error::ResourceExceeded {
                needed: cutoff,
                cap: 1e5,
            });
        }
    }
}

/// The (ε, F, Λ, U) data of the support-splitting construction.
#[derive(Debug, Clone)]
pub struct SingularityConfig {
    group: GroupSpec,
    coupling: f64,
    neighborhood: AdNeighborhood,
    /// Achieved Haar mass of U (the ε of the construction).
    pub epsilon: f64,
    pub f_target: f64,
    pub lambda_max: u32,
    /// Certified concentration constant of the chosen bump.
    pub concentration: f64,
    /// Flag areas |β_i| = F/(2^i c), i = 1..Λ.
    pub areas: Vec<f64>,
}

impl SingularityConfig {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn neighborhood(&self) -> &AdNeighborhood {
        &self.neighborhood
    }
}

/// Assemble the construction: choose U of mass ≈ ε, certify the
/// concentration constant, and set the geometric area schedule
/// |β_i| = F/(2^i c).
pub fn build_config(
    group: &GroupSpec,
    coupling: f64,
    epsilon: f64,
    f_target: f64,
    lambda_max: u32,
) -> Result<SingularityConfig> {
    if !(0.0 < epsilon && epsilon < 1.0) || !(0.0 < f_target && f_target < 1.0) {
        return Err(Error::InvalidArgument(
            "epsilon and F must lie in (0,1)".into(),
        ));
    }
    if lambda_max == 0 {
        return Err(Error::InvalidArgument("Lambda_max must be positive".into()));
    }
    let neighborhood = make_neighborhood(group, epsilon);
    let m = group.n_su2() as u32;
    let kl = group.n_factors() as u32;
    // Default Sobolev order 2s = dim G + k + l + 4, rounded up to even.
    let s = ((group.dim() as u32 + kl + 4) + 1) / 2;
    debug_assert!(2 * s >= m + kl + 3);
    let bump = BumpFunction::for_sobolev_order(neighborhood.clone(), s);
    let c = concentration_constant(group, coupling, &bump, s, 1e-6)?;
    let areas = (1..=lambda_max)
        .map(|i| f_target / (2f64.powi(i as i32) * c))
        .collect();
    Ok(SingularityConfig {
        group: group.clone(),
        coupling,
        epsilon: neighborhood.haar_mass(),
        f_target,
        lambda_max,
        concentration: c,
        neighborhood,
        areas,
    })
}

/// One row of the support-split table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportSplitRow {
    pub lambda: u32,
    /// μ₀(V_Λ) = ε^Λ exactly.
    pub mu0: f64,
    /// The footnote product bound Π_{i≤Λ}(1 − F/2^i) ≥ 1 − F.
    pub mu_ym_lower: f64,
    /// Π_{i≤Λ} μ_YM,β_i(U), computed from the truncated densities.
    pub mu_ym_computed: f64,
}

/// The finite-Λ support-split table: μ₀(V_Λ) collapses like ε^Λ while
/// μ_YM(V_Λ) stays above 1 − F. A computed value below the lower bound by
/// more than Λ·tol is a hard failure.
pub fn support_split_table(config: &SingularityConfig, tol: f64) -> Result<Vec<SupportSplitRow>> {
    let mut rows = Vec::with_capacity(config.lambda_max as usize + 1);
    rows.push(SupportSplitRow {
        lambda: 0,
        mu0: 1.0,
        mu_ym_lower: 1.0,
        mu_ym_computed: 1.0,
    });
    let mut mu0 = 1.0;
    let mut lower = 1.0;
    let mut computed = 1.0;
    for (i, &area) in config.areas.iter().enumerate() {
        let lambda = i as u32 + 1;
        let params = HeatKernelParams::for_flag(config.group.clone(), config.coupling, area)?;
        let density = build_density_capped(&params, tol, SPLIT_TABLE_CUTOFF_CAP)?;
        let mu_i = config.neighborhood.measure_under(&density);
        mu0 *= config.epsilon;
        lower *= 1.0 - config.f_target / 2f64.powi(lambda as i32);
        computed *= mu_i;
        if computed < lower - lambda as f64 * tol {
            return Err(Error::Precision(format!(
                "support-split row Λ={lambda}: computed μ_YM {computed} fell below \
                 the certified lower bound {lower}"
            )));
        }
        rows.push(SupportSplitRow {
            lambda,
            mu0,
            mu_ym_lower: lower,
            mu_ym_computed: computed,
        });
    }
    Ok(rows)
}

/// Haar mass of the Frobenius-norm ball {‖g − 1‖_F < eps} in the
/// block-diagonal defining representation, via the exact class-coordinate
/// formulas; multi-factor masses multiply per-factor balls of the same
/// radius (an upper bound for the joint ball, exact for single factors).
pub fn haar_ball_mass(group: &GroupSpec, eps: f64) -> f64 {
    assert!(eps > 0.0);
    group
        .factors()
        .iter()
        .map(|f| match f.kind {
            FactorKind::Su2 => {
                // ‖g−1‖_F = 2√2 |sin(θ/2)| on the class of angle θ.
                let x = eps / (2.0 * 2f64.sqrt());
                if x >= 1.0 {
                    1.0
                } else {
                    su2_class_mass((2.0 * x.asin()).min(PI))
                }
            }
            FactorKind::Torus => {
                // |e^{iφ} − 1| = 2|sin(φ/2)|.
                let x = eps / 2.0;
                if x >= 1.0 {
                    1.0
                } else {
                    torus_class_mass((2.0 * x.asin()).min(PI))
                }
            }
        })
        .product::<f64>()
        .min(1.0)
}

/// One row of the smooth-connection exclusion table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExclusionRow {
    pub area: f64,
    /// Closed-form sup bound for the density at t = ½κ²·area.
    pub sup_density: f64,
    /// Haar mass of the ball of radius r·area.
    pub ball_mass: f64,
    /// Their product: the bound on μ_YM of the holonomy tube, → 0 as area → 0.
    pub product_bound: f64,
}

/// μ_YM,α(B_{r|α|}(e)) ≤ sup‖f_t‖ · μ_Haar(B_{r|α|}): tabulate both factors
/// per area; the product vanishes with the area (lowest order dim G in
/// √area), which excludes smooth connections from the support.
pub fn smooth_exclusion_bound(
    group: &GroupSpec,
    coupling: f64,
    r: f64,
    areas: &[f64],
) -> Vec<ExclusionRow> {
    assert!(r > 0.0);
    areas
        .iter()
        .map(|&area| {
            let t = 0.5 * coupling * coupling * area;
            let sup_density = sup_bound_value(group, t);
            let ball_mass = haar_ball_mass(group, r * area);
            ExclusionRow {
                area,
                sup_density,
                ball_mass,
                product_bound: sup_density * ball_mass,
            }
        })
        .collect()
}

/// Least-squares slope of log y against log x.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heatkernel::{build_density, measure_of_class_set};
    use approx::assert_abs_diff_eq;

    /// Bisection oracle for the SU(2) threshold at mass 0.1:
    /// root of (θ − sin 2θ/2)/π = 0.1.
    fn theta_root_oracle(target: f64) -> f64 {
        let (mut lo, mut hi) = (0.0f64, PI);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if su2_class_mass(mid) <= target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    #[test]
    fn neighborhood_su2_mass_point_one() {
        let u = make_neighborhood(&GroupSpec::su2(), 0.1);
        let oracle = theta_root_oracle(0.1);
        assert_abs_diff_eq!(u.radii()[0], oracle, epsilon = 1e-12);
        // Oracle value of the threshold (≈ 0.8134, frozen from bisection).
        assert_abs_diff_eq!(oracle, 0.813376672616, epsilon = 1e-9);
        assert!(u.haar_mass() <= 0.1 && u.haar_mass() >= 0.09);
        assert_abs_diff_eq!(u.haar_mass(), 0.1, epsilon = 1e-12);
    }

    #[test]
    fn neighborhood_u1_is_linear() {
        let u = make_neighborhood(&GroupSpec::u1(), 0.1);
        assert_abs_diff_eq!(u.radii()[0], 0.1 * PI, epsilon = 1e-12);
        assert_abs_diff_eq!(u.haar_mass(), 0.1, epsilon = 1e-15);
    }

    #[test]
    fn neighborhood_mass_near_one_fills_range() {
        let u = make_neighborhood(&GroupSpec::su2(), 0.999999);
        assert!(u.radii()[0] > 3.13);
    }

    #[test]
    fn neighborhood_splits_mass_across_factors() {
        let g = GroupSpec::parse("su2*u1").unwrap();
        let u = make_neighborhood(&g, 0.04);
        assert_abs_diff_eq!(u.haar_mass(), 0.04, epsilon = 1e-10);
        // Equal split: each factor carries mass 0.2.
        assert_abs_diff_eq!(torus_class_mass(u.radii()[1]), 0.2, epsilon = 1e-10);
    }

    #[test]
    fn bump_is_one_at_identity_and_vanishes_outside() {
        let u = make_neighborhood(&GroupSpec::su2(), 0.1);
        let bump = BumpFunction::for_sobolev_order(u.clone(), 4);
        assert_eq!(bump.smoothness(), 4); // C^15 ⊇ C^8
        let e = ClassPoint::identity(&GroupSpec::su2());
        assert_eq!(bump.eval(&e), 1.0);
        let outside = ClassPoint::new(&GroupSpec::su2(), vec![u.radii()[0] + 0.01]).unwrap();
        assert_eq!(bump.eval(&outside), 0.0);
        for i in 0..=32 {
            let p = ClassPoint::new(&GroupSpec::su2(), vec![PI * i as f64 / 32.0]).unwrap();
            let v = bump.eval(&p);
            assert!((0.0..=1.0).contains(&v));
            assert!(v <= u.indicator().eval(&p).re + 1e-15, "supp f ⊆ U fails");
        }
    }

    #[test]
    fn bump_taper_is_monotone() {
        let u = make_neighborhood(&GroupSpec::su2(), 0.1);
        let bump = BumpFunction::new(u, 3);
        let mut prev = 1.0;
        for i in 0..=64 {
            let th = PI * i as f64 / 64.0;
            let v = bump.eval(&ClassPoint::new(&GroupSpec::su2(), vec![th]).unwrap());
            assert!(v <= prev + 1e-15);
            prev = v;
        }
    }

    #[test]
    fn concentration_constant_scales_with_coupling_squared() {
        let g = GroupSpec::su2();
        let u = make_neighborhood(&g, 0.1);
        let bump = BumpFunction::for_sobolev_order(u, 4);
        let c1 = concentration_constant(&g, 1.0, &bump, 4, 1e-4).unwrap();
        let c05 = concentration_constant(&g, 0.5, &bump, 4, 1e-4).unwrap();
        assert!(c1 > 0.0 && c1.is_finite());
        assert_abs_diff_eq!(c05 / c1, 0.25, epsilon = 1e-6);
    }

    #[test]
    fn concentration_rejects_small_sobolev_order() {
        let g = GroupSpec::su2();
        let u = make_neighborhood(&g, 0.1);
        let bump = BumpFunction::new(u, 2);
        match concentration_constant(&g, 1.0, &bump, 1, 1e-4) {
            Err(Error::Parameter(msg)) => assert!(msg.contains("2s")),
            other => panic!("expected parameter error, got {other:?}"),
        }
    }

    #[test]
    fn deficit_bounded_by_c_beta() {
        // 1 − μ_YM,β(U) ≤ c|β| across |β| ∈ {0.01..0.2} with the certified c.
        let g = GroupSpec::su2();
        let u = make_neighborhood(&g, 0.1);
        let bump = BumpFunction::for_sobolev_order(u.clone(), 4);
        let c = concentration_constant(&g, 1.0, &bump, 4, 1e-4).unwrap();
        for &beta in &[0.01, 0.05, 0.1, 0.2] {
            let params = HeatKernelParams::for_flag(g.clone(), 1.0, beta).unwrap();
            let density = build_density(&params, 1e-10).unwrap();
            let mu = u.measure_under(&density);
            assert!(
                1.0 - mu <= c * beta + 1e-9,
                "deficit {} above c·|β| = {} at |β| = {beta}",
                1.0 - mu,
                c * beta
            );
        }
    }

    #[test]
    fn closed_form_measure_matches_quadrature() {
        let g = GroupSpec::su2();
        let u = make_neighborhood(&g, 0.3);
        for &t in &[0.1, 0.9] {
            let params = HeatKernelParams::new(g.clone(), t).unwrap();
            let density = build_density(&params, 1e-10).unwrap();
            let closed = u.measure_under(&density);
            let quad = measure_of_class_set(&params, &u.indicator(), 1e-10, 4096).unwrap();
            assert_abs_diff_eq!(closed, quad, epsilon = 2e-4);
        }
    }

    #[test]
    fn footnote_product_bound() {
        // Π_{i=1}^Λ (1 − F/2^i) ≥ 1 − F, checked exactly.
        for &f in &[0.1, 0.5, 0.9] {
            let mut prod = 1.0;
            for i in 1..=32 {
                prod *= 1.0 - f / 2f64.powi(i);
                assert!(prod >= 1.0 - f, "footnote bound fails at F={f}, Λ={i}");
            }
        }
        // Frozen instance: F = 0.5, Λ = 3.
        let p = (1.0 - 0.25) * (1.0 - 0.125) * (1.0 - 0.0625);
        assert_eq!(p, 0.615234375);
    }

    #[test]
    fn build_config_schedule() {
        let g = GroupSpec::su2();
        let config = build_config(&g, 1.0, 0.1, 0.5, 6).unwrap();
        assert_eq!(config.areas.len(), 6);
        for w in config.areas.windows(2) {
            assert_abs_diff_eq!(w[0] / w[1], 2.0, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(
            config.areas[0],
            0.5 / (2.0 * config.concentration),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(config.epsilon, 0.1, epsilon = 1e-12);
    }

    #[test]
    fn support_split_monotone_and_bounded() {
        let g = GroupSpec::su2();
        let config = build_config(&g, 1.0, 0.1, 0.5, 6).unwrap();
        let rows = support_split_table(&config, 1e-10).unwrap();
        assert_eq!(rows[0].lambda, 0);
        assert_eq!(rows[0].mu0, 1.0);
        assert_eq!(rows[0].mu_ym_computed, 1.0);
        for w in rows.windows(2) {
            assert!(w[1].mu0 < w[0].mu0);
            assert!(w[1].mu_ym_computed <= w[0].mu_ym_computed + 1e-15);
        }
        for row in &rows[1..] {
            assert!(row.mu_ym_computed >= 1.0 - config.f_target - 1e-9);
            assert_abs_diff_eq!(
                row.mu0,
                config.epsilon.powi(row.lambda as i32),
                epsilon = 1e-300
            );
        }
    }

    #[test]
    fn ball_mass_su2_cubic() {
        let g = GroupSpec::su2();
        // Fit constant mass/ε³ bounded over ε ∈ [1e−4, 1e−1].
        let mut ratios = Vec::new();
        let mut eps = 1e-4;
        while eps <= 0.1 + 1e-12 {
            ratios.push(haar_ball_mass(&g, eps) / eps.powi(3));
            eps *= 10.0;
        }
        let max = ratios.iter().cloned().fold(0.0, f64::max);
        let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(max / min < 3.0, "constant drifts: {ratios:?}");
        // Exact small-ε limit: ε³/(3π√2)·… = (2/(3π))(ε/(2√2))³·8 = ε³/(3√2 π).
        assert_abs_diff_eq!(
            ratios[0],
            1.0 / (3.0 * 2f64.sqrt() * PI),
            epsilon = 1e-4
        );
    }

    #[test]
    fn ball_mass_u1_linear() {
        let g = GroupSpec::u1();
        let eps = 1e-3;
        assert_abs_diff_eq!(haar_ball_mass(&g, eps), eps / PI, epsilon = 1e-9);
        // Whole group once the radius exceeds the diameter.
        assert_eq!(haar_ball_mass(&g, 2.1), 1.0);
    }

    #[test]
    fn exclusion_bound_decreases_and_fits_slope() {
        let g = GroupSpec::su2();
        let areas: Vec<f64> = (0..14).map(|i| 0.1 / 2f64.powi(i)).collect();
        let rows = smooth_exclusion_bound(&g, 1.0, 1.0, &areas);
        for w in rows.windows(2) {
            assert!(w[1].product_bound < w[0].product_bound);
        }
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .skip(rows.len() / 2)
            .map(|r| (r.area, r.product_bound))
            .collect();
        let slope = log_log_slope(&pts);
        assert!((slope - 1.5).abs() < 0.1, "slope {slope}");
    }

    #[test]
    fn exclusion_bound_vanishes_with_radius() {
        let g = GroupSpec::su2();
        let rows_small = smooth_exclusion_bound(&g, 1.0, 1e-3, &[0.1]);
        let rows_large = smooth_exclusion_bound(&g, 1.0, 1.0, &[0.1]);
        assert!(rows_small[0].product_bound < rows_large[0].product_bound);
    }

    #[test]
    fn monte_carlo_cross_route() {
        // Empirical U-frequency vs the closed-form measure, 3σ at N = 10⁵.
        use rand::SeedableRng;
        let g = GroupSpec::su2();
        let u = make_neighborhood(&g, 0.3);
        for &(t, seed) in &[(0.3, 5u64), (1.0, 6), (3.0, 7)] {
            let params = HeatKernelParams::new(g.clone(), t).unwrap();
            let density = build_density(&params, 1e-10).unwrap();
            let p = u.measure_under(&density);
            let sampler = crate::heatkernel::ClassSampler::new(&density).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = 100_000;
            let hits = (0..n).filter(|_| u.contains(&sampler.sample(&mut rng))).count();
            let freq = hits as f64 / n as f64;
            let sigma = (p * (1.0 - p) / n as f64).sqrt();
            assert!(
                (freq - p).abs() < 3.0 * sigma + 1e-3,
                "t={t}: freq {freq} vs measure {p} (3σ = {})",
                3.0 * sigma
            );
        }
    }
}
