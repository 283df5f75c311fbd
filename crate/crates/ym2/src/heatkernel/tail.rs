//! Certified bounds for the heat-kernel coefficient series over N^l × Z^k.
//!
//! All sums Σ_ν h(ν) with h(ν) ≤ g(‖x‖) on the unit cube at ν are bounded by
//! 2^k Σ_{ι=1}^{k+l} C(k+l,ι) · π^{ι/2}/(2^{ι−1}Γ(ι/2)) · ∫_ρ^∞ g(r) r^{ι−1} dr,
//! the lattice-point/integral comparison over the positive orthants.

use statrs::function::gamma::{gamma, gamma_ur};

use crate::liegroup::GroupSpec;

/// Upper incomplete gamma Γ(s, x).
fn upper_gamma(s: f64, x: f64) -> f64 {
    if x <= 0.0 {
        gamma(s)
    } else {
        gamma(s) * gamma_ur(s, x)
    }
}

/// ∫_ρ^∞ r^p e^{−b r²} dr = ½ b^{−(p+1)/2} Γ((p+1)/2, bρ²).
fn gaussian_power_tail(p: u32, b: f64, rho: f64) -> f64 {
    let s = (p as f64 + 1.0) / 2.0;
    0.5 * b.powf(-s) * upper_gamma(s, b * rho * rho)
}

fn binomial(n: u32, k: u32) -> f64 {
    let mut v = 1.0;
    for i in 0..k {
        v = v * (n - i) as f64 / (i + 1) as f64;
    }
    v
}

/// Surface coefficient π^{ι/2} / (2^{ι−1} Γ(ι/2)) of the ι-dimensional
/// orthant comparison.
fn orthant_coefficient(iota: u32) -> f64 {
    std::f64::consts::PI.powf(iota as f64 / 2.0) / (2f64.powi(iota as i32 - 1) * gamma(iota as f64 / 2.0))
}

/// Bound for Σ over ν with ‖ν‖ ≥ ρ + √(k+l) of d_ν² e^{−t c_ν}, using
/// d_ν ≤ const_G ‖ν‖^m (m = #SU(2) factors, const_G = 2^m) and
/// c_ν ≥ c₋‖ν‖²; the integrand majorant is
/// g(r) = const_G² (r+√(k+l))^{2m} e^{−c₋ t r²}.
fn coefficient_series_bound(group: &GroupSpec, t: f64, rho: f64) -> f64 {
    let kl = group.n_factors() as u32;
    let m = group.n_su2() as u32;
    let a = (kl as f64).sqrt();
    let const2 = group.dim_bound_const().powi(2);
    let b = group.c_minus() * t;
    let torus_orthants = 2f64.powi(group.n_torus() as i32);

    let mut total = 0.0;
    for iota in 1..=kl {
        let mut integral = 0.0;
        for j in 0..=2 * m {
            integral += binomial(2 * m, j)
                * a.powi((2 * m - j) as i32)
                * gaussian_power_tail(iota - 1 + j, b, rho);
        }
        total += binomial(kl, iota) * orthant_coefficient(iota) * integral;
    }
    torus_orthants * const2 * total
}

/// Certified upper bound for the omitted tail Σ_{‖ν‖ > cutoff} d_ν² e^{−t c_ν}.
///
/// Monotone decreasing in `cutoff` and in `t`. For cutoff < √(k+l)+1 the
/// lower integration limit is clamped to 0 (the bound then covers the whole
/// sum over ν ≠ 0, which dominates any tail).
pub fn tail_bound_series(group: &GroupSpec, t: f64, cutoff: f64) -> f64 {
    assert!(t > 0.0, "heat-kernel time must be positive");
    assert!(cutoff >= 1.0, "cutoff must be at least 1");
    let rho = (cutoff - (group.n_factors() as f64).sqrt()).max(0.0);
    coefficient_series_bound(group, t, rho)
}

/// Closed-form sup-norm bound for the heat-kernel density:
/// f_t(e) ≤ 1 + Σ_{ν≠0} d_ν² e^{−t c_ν} ≤ 1 + (integral bound at ρ = 0),
/// a polynomial in t^{−1/2} of degree dim G.
pub fn sup_bound_value(group: &GroupSpec, t: f64) -> f64 {
    assert!(t > 0.0, "heat-kernel time must be positive");
    1.0 + coefficient_series_bound(group, t, 0.0)
}

/// Certified upper bound for Σ_{‖ν‖ > cutoff} c_ν^{1−s} d_ν (s ≥ 2), the
/// tail of the concentration-constant series. Requires the convergence
/// condition 2s ≥ m + k + l + 3 and cutoff ≥ √(k+l) + 1.
pub fn casimir_power_tail(group: &GroupSpec, s: u32, cutoff: f64) -> f64 {
    let kl = group.n_factors() as u32;
    let m = group.n_su2() as u32;
    let a = (kl as f64).sqrt();
    assert!(
        2 * s >= m + kl + 3,
        "Sobolev order too small for convergence"
    );
    let rho = cutoff - a;
    assert!(rho >= 1.0, "cutoff must be at least sqrt(k+l) + 1");
    let const_g = group.dim_bound_const();
    let c_minus_pow = group.c_minus().powi(1 - s as i32);
    let torus_orthants = 2f64.powi(group.n_torus() as i32);

    let mut total = 0.0;
    for iota in 1..=kl {
        let mut integral = 0.0;
        for j in 0..=m {
            // ∫_ρ^∞ r^{ι−1+j+2(1−s)} dr, exponent < −1 by the condition above.
            let p = (iota as i32 - 1) + j as i32 + 2 * (1 - s as i32);
            debug_assert!(p < -1);
            integral +=
                binomial(m, j) * a.powi((m - j) as i32) * rho.powi(p + 1) / (-(p + 1) as f64);
        }
        total += binomial(kl, iota) * orthant_coefficient(iota) * integral;
    }
    torus_orthants * const_g * c_minus_pow * total
}
