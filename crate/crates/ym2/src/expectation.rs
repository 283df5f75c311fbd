//! Closed-form Yang-Mills expectation values, Wilson-action plaquette
//! integrals, refinement-limit convergence experiments, and the
//! generalized-theory (universal-coupling) expectation generator.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Issue, IssueCode, Result};
use crate::heatkernel::{build_density, HeatKernelParams, TruncatedDensity};
use crate::lattice::{Domain, FlagWorldSpec, LoopNetworkSpec};
use crate::liegroup::{ClassQuadrature, FactorKind, GroupSpec, Irrep};

/// ⟨χ_ρ⟩ for a single flag: d_ρ · e^{−½κ²c_ρ·area}; the exact delta-measure
/// limit d_ρ at area = 0 (the closed form extends continuously).
pub fn wilson_expectation(area: f64, irrep: &Irrep, coupling: f64) -> f64 {
    assert!(area >= 0.0, "area must be nonnegative");
    assert!(coupling > 0.0, "coupling must be positive");
    irrep.dimension() as f64 * (-0.5 * coupling * coupling * irrep.casimir() * area).exp()
}

/// Loop-network expectation √d_ρ · Π_I (√d_{ρ_I} e^{−½κ²c_{ρ_I}|G_I|});
/// depends only on the parent areas, hence invariant under refinement.
pub fn loop_network_expectation(
    group: &GroupSpec,
    world: &FlagWorldSpec,
    network: &LoopNetworkSpec,
    coupling: f64,
) -> Result<f64> {
    let (reps, target) = network.resolve(group, world)?;
    if crate::liegroup::tensor_multiplicity(group, &reps, &target)? == 0 {
        return Err(Error::Lattice(vec![Issue {
            code: IssueCode::Mult,
            path: String::new(),
            message: "loop-network target has multiplicity zero".into(),
        }]));
    }
    let mut value = (target.dimension() as f64).sqrt();
    for (rep, domain) in reps.iter().zip(world.domains()) {
        value *= (rep.dimension() as f64).sqrt()
            * (-0.5 * coupling * coupling * rep.casimir() * domain.area).exp();
    }
    Ok(value)
}

/// Result of one plaquette-ratio quadrature with an order-doubling accuracy
/// estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaquetteRatio {
    pub value: f64,
    /// |value at order 2q − value at order q|; a warning channel, not a bound.
    pub quad_estimate: f64,
}

/// Normalized single-plaquette integral of the Wilson action:
/// ∫ (1/d_ρ)χ_ρ · w dHaar / ∫ w dHaar with the lattice weight
/// w = exp(−(N/(2κ²·area))(1 − (1/N)Re tr g)).
///
/// Re tr g is the block-diagonal defining trace summed over factors
/// (2cos θ per SU(2), cos φ per U(1)); N is its value at the identity.
/// The factor 2 in the denominator calibrates the weight to the Casimir
/// normalization used throughout (c = n(n+2), z²), so that refinement
/// products converge to the heat-kernel value e^{−½κ²c_ρ·area}.
pub fn plaquette_ratio(
    group: &GroupSpec,
    area: f64,
    irrep: &Irrep,
    coupling: f64,
    quad_order: usize,
) -> PlaquetteRatio {
    assert!(area > 0.0 && coupling > 0.0);
    if irrep.is_trivial() {
        return PlaquetteRatio {
            value: 1.0,
            quad_estimate: 0.0,
        };
    }
    let v1 = plaquette_ratio_at_order(group, area, irrep, coupling, quad_order);
    let v2 = plaquette_ratio_at_order(group, area, irrep, coupling, 2 * quad_order);
    PlaquetteRatio {
        value: v2,
        quad_estimate: (v2 - v1).abs(),
    }
}

fn plaquette_ratio_at_order(
    group: &GroupSpec,
    area: f64,
    irrep: &Irrep,
    coupling: f64,
    quad_order: usize,
) -> f64 {
    let n = group.defining_dim() as f64;
    let beta = n / (2.0 * coupling * coupling * area);
    let quad = ClassQuadrature::new(group, quad_order);
    let d = irrep.dimension() as f64;
    let weight = |p: &crate::liegroup::ClassPoint| {
        let retr: f64 = group
            .factors()
            .iter()
            .zip(p.coords())
            .map(|(f, &c)| match f.kind {
                FactorKind::Su2 => 2.0 * c.cos(),
                FactorKind::Torus => c.cos(),
            })
            .sum();
        (-beta * (1.0 - retr / n)).exp()
    };
    let numer = quad.integrate_fn(|p| {
        Complex64::new(
            crate::liegroup::character(group, irrep, p).re / d * weight(p),
            0.0,
        )
    });
    let denom = quad.integrate_fn(|p| Complex64::new(weight(p), 0.0));
    numer.re / denom.re
}

/// One row of the refinement-limit experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinementRow {
    pub k: u32,
    pub mesh: f64,
    pub product: f64,
    pub target: f64,
    pub abs_error: f64,
    pub quad_estimate: f64,
}

/// Product of plaquette ratios over a list of sub-areas, with the summed
/// order-doubling estimate. Parts are evaluated independently (in parallel)
/// and multiplied in input order, so the result does not depend on the
/// evaluation schedule.
pub fn plaquette_product(
    group: &GroupSpec,
    areas: &[f64],
    irrep: &Irrep,
    coupling: f64,
    quad_order: usize,
) -> PlaquetteRatio {
    let ratios: Vec<PlaquetteRatio> = areas
        .par_iter()
        .map(|&a| plaquette_ratio(group, a, irrep, coupling, quad_order))
        .collect();
    let value = ratios.iter().fold(1.0, |acc, r| acc * r.value);
    let quad_estimate = ratios.iter().map(|r| r.quad_estimate).sum();
    PlaquetteRatio {
        value,
        quad_estimate,
    }
}

/// Uniform refinement limit on a single-domain world: for each k, the domain
/// is split into k equal parts, the plaquette ratios are multiplied and
/// compared against the heat-kernel value e^{−½κ²c_ρ·area}
/// (= (1/d_ρ)·wilson_expectation).
pub fn refinement_limit_experiment(
    group: &GroupSpec,
    world: &FlagWorldSpec,
    irrep: &Irrep,
    coupling: f64,
    meshes: &[u32],
    quad_order: usize,
) -> Result<Vec<RefinementRow>> {
    if world.domains().len() != 1 {
        return Err(Error::InvalidArgument(
            "refinement limit experiment needs a single-domain world".into(),
        ));
    }
    if meshes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "mesh counts must be strictly ascending".into(),
        ));
    }
    let area = world.domains()[0].area;
    let target = wilson_expectation(area, irrep, coupling) / irrep.dimension() as f64;
    let rows = meshes
        .iter()
        .map(|&k| {
            let plan = crate::lattice::uniform_refinement(world, k);
            let parts = plan.parts_of(&world.domains()[0]).into_owned();
            let prod = plaquette_product(group, &parts, irrep, coupling, quad_order);
            RefinementRow {
                k,
                mesh: area / k as f64,
                product: prod.value,
                target,
                abs_error: (prod.value - target).abs(),
                quad_estimate: prod.quad_estimate,
            }
        })
        .collect();
    Ok(rows)
}

/// Σ ⟨χ_ν, f⟩ · d_ν · e^{−t c_ν} for a finite coefficient list
/// (the caller truncates with its own certificate).
pub fn fourier_integrate_ym(
    params: &HeatKernelParams,
    coefficients: &[(Irrep, Complex64)],
) -> Complex64 {
    let t = params.time();
    coefficients
        .iter()
        .map(|(rep, c)| c * rep.dimension() as f64 * (-t * rep.casimir()).exp())
        .sum()
}

/// How ⟨χ₁⟩ decays with the geometric size σ(β) of a domain.
#[derive(Debug, Clone, PartialEq)]
pub enum SigmaLaw {
    /// σ(β) = enclosed area (the Yang-Mills case).
    Area,
    /// σ(β) = 2√(π·area), the perimeter of the circle of that area.
    LengthProxy,
    /// Arbitrary user-supplied table domain id → σ.
    Table(BTreeMap<String, f64>),
}

/// A theory with a universal coupling constant: all expectation values are
/// generated from the normalized base-character expectation via
/// ⟨χ_ρ⟩/d_ρ = (⟨χ₁⟩/d₁)^{c_ρ/c₁}.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedTheory {
    group: GroupSpec,
    base_irrep: Irrep,
    /// w = ⟨χ₁⟩ at σ = 1; the per-domain value is d₁·(w/d₁)^{σ(β)}.
    base_value: f64,
    sigma: SigmaLaw,
}

impl GeneralizedTheory {
    pub fn new(
        group: GroupSpec,
        base_irrep: Irrep,
        base_value: f64,
        sigma: SigmaLaw,
    ) -> Result<Self> {
        if base_irrep.is_trivial() {
            return Err(Error::InvalidArgument(
                "base irrep of a generalized theory must be nontrivial".into(),
            ));
        }
        let d1 = base_irrep.dimension() as f64;
        if !(0.0..=d1).contains(&base_value) {
            return Err(Error::InvalidArgument(format!(
                "base value {base_value} outside [0, d1 = {d1}]"
            )));
        }
        Ok(GeneralizedTheory {
            group,
            base_irrep,
            base_value,
            sigma,
        })
    }

    /// The Yang-Mills instance: base value d₁e^{−½κ²c₁} per unit area,
    /// σ = area. Its generated expectations reproduce `wilson_expectation`.
    pub fn yang_mills(group: GroupSpec, base_irrep: Irrep, coupling: f64) -> Result<Self> {
        let d1 = base_irrep.dimension() as f64;
        let w = d1 * (-0.5 * coupling * coupling * base_irrep.casimir()).exp();
        GeneralizedTheory::new(group, base_irrep, w, SigmaLaw::Area)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn base_irrep(&self) -> &Irrep {
        &self.base_irrep
    }

    pub fn sigma_of(&self, domain: &Domain) -> Result<f64> {
        let sigma = match &self.sigma {
            SigmaLaw::Area => domain.area,
            SigmaLaw::LengthProxy => 2.0 * (std::f64::consts::PI * domain.area).sqrt(),
            SigmaLaw::Table(t) => *t.get(&domain.id).ok_or_else(|| {
                Error::InvalidArgument(format!("no sigma entry for domain '{}'", domain.id))
            })?,
        };
        if sigma < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "sigma('{}') = {sigma} is negative",
                domain.id
            )));
        }
        Ok(sigma)
    }

    /// ⟨χ₁⟩ for this domain: d₁·(w/d₁)^{σ(domain)}.
    pub fn base_expectation(&self, domain: &Domain) -> Result<f64> {
        let d1 = self.base_irrep.dimension() as f64;
        let sigma = self.sigma_of(domain)?;
        if self.base_value == d1 {
            return Ok(d1);
        }
        if self.base_value == 0.0 {
            return Ok(if sigma == 0.0 { d1 } else { 0.0 });
        }
        Ok(d1 * (self.base_value / d1).powf(sigma))
    }
}

/// ⟨χ_ρ⟩ = d_ρ · (⟨χ₁⟩_β/d₁)^{c_ρ/c₁}: d_ρ in the delta case (w = d₁),
/// 0 for nontrivial ρ in the Haar case (w = 0).
pub fn generalized_expectation(
    theory: &GeneralizedTheory,
    irrep: &Irrep,
    domain: &Domain,
) -> Result<f64> {
    let d = irrep.dimension() as f64;
    if irrep.is_trivial() {
        return Ok(1.0);
    }
    let d1 = theory.base_irrep.dimension() as f64;
    let w = theory.base_expectation(domain)?;
    if w == d1 {
        return Ok(d);
    }
    if w == 0.0 {
        return Ok(0.0);
    }
    let exponent = irrep.casimir() / theory.base_irrep.casimir();
    Ok(d * (w / d1).powf(exponent))
}

/// Classification of the per-domain measure of a generalized theory.
#[derive(Debug, Clone)]
pub enum Trichotomy {
    /// w = 0: the Haar measure.
    Haar,
    /// 0 < w < d₁: absolutely continuous with the heat-kernel density at
    /// effective time b = −ln(w/d₁)/c₁.
    AbsContinuous(TruncatedDensity),
    /// w = d₁: the delta measure at the identity.
    Delta,
}

/// Classify the measure generated by the universal-coupling relation for one
/// domain, building the density in the absolutely continuous case.
pub fn generalized_density_trichotomy(
    theory: &GeneralizedTheory,
    domain: &Domain,
    tol: f64,
) -> Result<Trichotomy> {
    let d1 = theory.base_irrep.dimension() as f64;
    let w = theory.base_expectation(domain)?;
    if w == 0.0 {
        return Ok(Trichotomy::Haar);
    }
    if w == d1 {
        return Ok(Trichotomy::Delta);
    }
    let b = -(w / d1).ln() / theory.base_irrep.casimir();
    let params = HeatKernelParams::new(theory.group.clone(), b)?;
    Ok(Trichotomy::AbsContinuous(build_density(&params, tol)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn su2_rep(n: i64) -> Irrep {
        Irrep::new(&GroupSpec::su2(), vec![n]).unwrap()
    }

    #[test]
    fn wilson_closed_form() {
        // Trivial irrep: normalization.
        assert_eq!(wilson_expectation(3.0, &su2_rep(0), 2.0), 1.0);
        // ½κ²·area = 1 with n = 1: 2e^{−3}.
        let v = wilson_expectation(1.0, &su2_rep(1), 2f64.sqrt());
        assert_abs_diff_eq!(v, 2.0 * (-3.0f64).exp(), epsilon = 1e-15);
        assert_abs_diff_eq!(v, 0.09957413673572789, epsilon = 1e-15);
        // Delta limit at area 0.
        assert_eq!(wilson_expectation(0.0, &su2_rep(4), 1.0), 5.0);
    }

    #[test]
    fn wilson_monotonicity() {
        let r = su2_rep(2);
        assert!(wilson_expectation(1.0, &r, 1.0) > wilson_expectation(2.0, &r, 1.0));
        assert!(wilson_expectation(1.0, &r, 1.0) > wilson_expectation(1.0, &r, 1.5));
        assert!(
            wilson_expectation(1.0, &su2_rep(1), 1.0) > wilson_expectation(1.0, &su2_rep(2), 1.0)
        );
    }

    fn network(pairs: &[(&str, Vec<i64>)], target: Vec<i64>) -> LoopNetworkSpec {
        LoopNetworkSpec {
            assignments: pairs
                .iter()
                .map(|(id, l)| (id.to_string(), l.clone()))
                .collect(),
            target,
        }
    }

    #[test]
    fn loop_network_two_domain_value() {
        // √1·(√2e^{−3})(√2e^{−6}) = 2e^{−9} for areas (1,2), ρ⃗ = (1,1),
        // target 0, κ² = 2.
        let group = GroupSpec::su2();
        let world = FlagWorldSpec::new(vec![
            Domain {
                id: "a".into(),
                area: 1.0,
            },
            Domain {
                id: "b".into(),
                area: 2.0,
            },
        ])
        .unwrap();
        let net = network(&[("a", vec![1]), ("b", vec![1])], vec![0]);
        let v = loop_network_expectation(&group, &world, &net, 2f64.sqrt()).unwrap();
        assert_abs_diff_eq!(v, 2.0 * (-9.0f64).exp(), epsilon = 1e-18);
    }

    #[test]
    fn loop_network_single_domain_reduces_to_wilson() {
        let group = GroupSpec::su2();
        let world = FlagWorldSpec::single("d", 0.7).unwrap();
        let net = network(&[("d", vec![2])], vec![2]);
        let v = loop_network_expectation(&group, &world, &net, 1.3).unwrap();
        assert_abs_diff_eq!(v, wilson_expectation(0.7, &su2_rep(2), 1.3), epsilon = 1e-16);
    }

    #[test]
    fn loop_network_all_trivial_is_one() {
        let group = GroupSpec::su2();
        let world = FlagWorldSpec::new(vec![
            Domain {
                id: "a".into(),
                area: 1.0,
            },
            Domain {
                id: "b".into(),
                area: 2.0,
            },
            Domain {
                id: "c".into(),
                area: 0.5,
            },
        ])
        .unwrap();
        let net = network(&[("a", vec![0]), ("b", vec![0]), ("c", vec![0])], vec![0]);
        assert_eq!(
            loop_network_expectation(&group, &world, &net, 1.0).unwrap(),
            1.0
        );
    }

    #[test]
    fn loop_network_zero_multiplicity_rejected() {
        let group = GroupSpec::su2();
        let world = FlagWorldSpec::new(vec![
            Domain {
                id: "a".into(),
                area: 1.0,
            },
            Domain {
                id: "b".into(),
                area: 2.0,
            },
        ])
        .unwrap();
        let net = network(&[("a", vec![1]), ("b", vec![1])], vec![1]);
        match loop_network_expectation(&group, &world, &net, 1.0) {
            Err(Error::Lattice(issues)) => assert_eq!(issues[0].code, IssueCode::Mult),
            other => panic!("expected E_MULT, got {other:?}"),
        }
    }

    #[test]
    fn factorization_over_domains() {
        // The network value equals √d_target × the per-domain single-flag
        // factors (measure-theoretic independence of non-overlapping flags).
        let group = GroupSpec::su2();
        let world = FlagWorldSpec::new(vec![
            Domain {
                id: "a".into(),
                area: 0.8,
            },
            Domain {
                id: "b".into(),
                area: 1.9,
            },
            Domain {
                id: "c".into(),
                area: 0.4,
            },
        ])
        .unwrap();
        let net = network(&[("a", vec![1]), ("b", vec![1]), ("c", vec![2])], vec![2]);
        let kappa = 1.1;
        let v = loop_network_expectation(&group, &world, &net, kappa).unwrap();
        let per_domain: f64 = world
            .domains()
            .iter()
            .map(|d| {
                let rep = Irrep::new(&group, net.assignments[&d.id].clone()).unwrap();
                (rep.dimension() as f64).sqrt()
                    * (-0.5 * kappa * kappa * rep.casimir() * d.area).exp()
            })
            .product();
        assert_abs_diff_eq!(v, 3f64.sqrt() * per_domain, epsilon = 1e-15);
    }

    #[test]
    fn normalized_expectations_multiply_under_refinement() {
        // e^{−½κ²c·a} = Π_j e^{−½κ²c·a_j} when Σa_j = a (coefficient
        // semigroup: refinement invariance of the closed form).
        let r = su2_rep(3);
        let (kappa, area) = (0.9, 1.7);
        let d = r.dimension() as f64;
        let whole = wilson_expectation(area, &r, kappa) / d;
        let parts = [0.2, 0.5, 1.0];
        let product: f64 = parts
            .iter()
            .map(|&a| wilson_expectation(a, &r, kappa) / d)
            .product();
        assert_abs_diff_eq!(whole, product, epsilon = 1e-15);
    }

    #[test]
    fn plaquette_trivial_and_large_area() {
        let g = GroupSpec::su2();
        let triv = su2_rep(0);
        assert_eq!(plaquette_ratio(&g, 1.0, &triv, 1.0, 64).value, 1.0);
        // area → ∞: weight → 1, ratio → ∫(1/d)χ dHaar = 0.
        let r = plaquette_ratio(&g, 1e8, &su2_rep(1), 1.0, 128);
        assert!(r.value.abs() < 1e-6, "{}", r.value);
    }

    #[test]
    fn plaquette_small_area_rate() {
        // −log(ratio)/area → ½κ²c₁ as area → 0 (the continuum-limit rate).
        let g = GroupSpec::su2();
        let r1 = su2_rep(1);
        let kappa = 1.0;
        let mut prev_gap = f64::INFINITY;
        for &area in &[0.02, 0.01, 0.005] {
            let r = plaquette_ratio(&g, area, &r1, kappa, 512);
            let rate = -r.value.ln() / area;
            let gap = (rate - 1.5).abs();
            assert!(gap < prev_gap, "rate {rate} not approaching 1.5");
            prev_gap = gap;
        }
        assert!(prev_gap < 0.01, "final rate gap {prev_gap}");
    }

    #[test]
    fn plaquette_quad_estimate_flags_low_order() {
        let g = GroupSpec::su2();
        let low = plaquette_ratio(&g, 0.002, &su2_rep(1), 1.0, 8);
        let high = plaquette_ratio(&g, 0.002, &su2_rep(1), 1.0, 512);
        assert!(low.quad_estimate > high.quad_estimate);
        assert!(high.quad_estimate < 1e-10);
    }

    #[test]
    fn refinement_experiment_trivial_is_exact() {
        let g = GroupSpec::su2();
        let world = FlagWorldSpec::single("d", 1.0).unwrap();
        let rows =
            refinement_limit_experiment(&g, &world, &su2_rep(0), 1.0, &[1, 2, 4], 64).unwrap();
        for row in rows {
            assert_eq!(row.product, 1.0);
            assert_eq!(row.target, 1.0);
        }
    }

    #[test]
    fn refinement_experiment_endpoint_error_shrinks() {
        // The spec-level invariant: error at the finest mesh is below the
        // error at k = 1 (the paper asserts convergence, not a rate).
        let g = GroupSpec::su2();
        let world = FlagWorldSpec::single("d", 1.0).unwrap();
        for n in [1i64, 2, 3] {
            let rows =
                refinement_limit_experiment(&g, &world, &su2_rep(n), 1.0, &[1, 16, 64], 256)
                    .unwrap();
            assert!(
                rows.last().unwrap().abs_error < rows[0].abs_error,
                "n={n}: {:?}",
                rows
            );
            assert!(rows.last().unwrap().quad_estimate < 1e-8);
        }
    }

    #[test]
    fn fourier_integrate_single_mode_is_wilson() {
        let g = GroupSpec::su2();
        let params = HeatKernelParams::new(g.clone(), 0.35).unwrap();
        let mu = su2_rep(2);
        let v = fourier_integrate_ym(&params, &[(mu.clone(), Complex64::new(1.0, 0.0))]);
        // t = ½κ²·area: pick κ = 1, area = 0.7.
        assert_abs_diff_eq!(v.re, wilson_expectation(0.7, &mu, 1.0), epsilon = 1e-15);
        assert_eq!(v.im, 0.0);

        let one = fourier_integrate_ym(&params, &[(Irrep::trivial(&g), Complex64::new(1.0, 0.0))]);
        assert_eq!(one.re, 1.0);
    }

    #[test]
    fn generalized_endpoints() {
        let g = GroupSpec::su2();
        let base = su2_rep(1);
        let dom = Domain {
            id: "d".into(),
            area: 1.0,
        };
        let delta = GeneralizedTheory::new(g.clone(), base.clone(), 2.0, SigmaLaw::Area).unwrap();
        let haar = GeneralizedTheory::new(g.clone(), base.clone(), 0.0, SigmaLaw::Area).unwrap();
        for n in 1..=4 {
            let rep = su2_rep(n);
            assert_eq!(
                generalized_expectation(&delta, &rep, &dom).unwrap(),
                rep.dimension() as f64
            );
            assert_eq!(generalized_expectation(&haar, &rep, &dom).unwrap(), 0.0);
        }
    }

    #[test]
    fn generalized_reproduces_wilson() {
        let g = GroupSpec::su2();
        let kappa = 1.2;
        let theory = GeneralizedTheory::yang_mills(g.clone(), su2_rep(1), kappa).unwrap();
        for n in 1..=6 {
            let rep = su2_rep(n);
            for &area in &[0.25, 1.0, 3.0] {
                let dom = Domain {
                    id: "d".into(),
                    area,
                };
                let v = generalized_expectation(&theory, &rep, &dom).unwrap();
                assert_abs_diff_eq!(
                    v,
                    wilson_expectation(area, &rep, kappa),
                    epsilon = 1e-13 * v.abs().max(1e-300)
                );
            }
        }
    }

    #[test]
    fn trichotomy_cases() {
        let g = GroupSpec::su2();
        let base = su2_rep(1);
        let dom = Domain {
            id: "d".into(),
            area: 1.0,
        };

        let delta = GeneralizedTheory::new(g.clone(), base.clone(), 2.0, SigmaLaw::Area).unwrap();
        assert!(matches!(
            generalized_density_trichotomy(&delta, &dom, 1e-10).unwrap(),
            Trichotomy::Delta
        ));

        let haar = GeneralizedTheory::new(g.clone(), base.clone(), 0.0, SigmaLaw::Area).unwrap();
        assert!(matches!(
            generalized_density_trichotomy(&haar, &dom, 1e-10).unwrap(),
            Trichotomy::Haar
        ));

        // w = d₁e^{−3} with c₁ = 3 gives effective time b = 1: coefficients
        // equal the heat-kernel t = 1 coefficients.
        let w = 2.0 * (-3.0f64).exp();
        let mid = GeneralizedTheory::new(g.clone(), base, w, SigmaLaw::Area).unwrap();
        match generalized_density_trichotomy(&mid, &dom, 1e-10).unwrap() {
            Trichotomy::AbsContinuous(density) => {
                let reference =
                    build_density(&HeatKernelParams::new(g, 1.0).unwrap(), 1e-10).unwrap();
                for ((ra, ca), (rb, cb)) in
                    density.coefficients().iter().zip(reference.coefficients())
                {
                    assert_eq!(ra.label(), rb.label());
                    assert_abs_diff_eq!(ca, cb, epsilon = 1e-14 * cb.abs().max(1e-300));
                }
            }
            other => panic!("expected AbsContinuous, got {other:?}"),
        }
    }

    #[test]
    fn geometric_regularity_witness_bounded() {
        // (d₁ − ⟨χ₁⟩_β)/σ(β) stays bounded as σ → 0 for the YM instance:
        // the limit is d₁·½κ²c₁.
        let g = GroupSpec::su2();
        let kappa = 1.0;
        let theory = GeneralizedTheory::yang_mills(g, su2_rep(1), kappa).unwrap();
        let bound = 2.0 * 0.5 * kappa * kappa * 3.0;
        let mut area = 1.0;
        while area > 1e-8 {
            let dom = Domain {
                id: "d".into(),
                area,
            };
            let w = theory.base_expectation(&dom).unwrap();
            let witness = (2.0 - w) / area;
            assert!(witness <= bound + 1e-9, "witness {witness} above {bound}");
            area /= 10.0;
        }
    }

    #[test]
    fn length_proxy_sigma() {
        let g = GroupSpec::su2();
        let theory = GeneralizedTheory::new(g, su2_rep(1), 1.0, SigmaLaw::LengthProxy).unwrap();
        let dom = Domain {
            id: "d".into(),
            area: 1.0,
        };
        let sigma = theory.sigma_of(&dom).unwrap();
        assert_abs_diff_eq!(sigma, 2.0 * std::f64::consts::PI.sqrt(), epsilon = 1e-15);
    }
}
