//! Class-coordinate sampling of the heat-kernel measure by tabulated
//! inverse CDFs, one independent table per group factor (the heat kernel
//! factorizes over the factors of a product group).

use std::f64::consts::PI;

use rand::Rng;

use crate::error::{Error, Result};
use crate::heatkernel::{HeatKernelParams, TruncatedDensity};
use crate::liegroup::{ClassPoint, FactorKind};

/// Grid resolution of each tabulated CDF.
const GRID_SIZE: usize = 1 << 14;

#[derive(Debug, Clone)]
struct FactorCdf {
    coords: Vec<f64>,
    cdf: Vec<f64>,
}

impl FactorCdf {
    fn invert(&self, u: f64) -> f64 {
        let idx = self.cdf.partition_point(|&c| c < u);
        if idx == 0 {
            return self.coords[0];
        }
        if idx >= self.cdf.len() {
            return *self.coords.last().unwrap();
        }
        let (c0, c1) = (self.cdf[idx - 1], self.cdf[idx]);
        let (x0, x1) = (self.coords[idx - 1], self.coords[idx]);
        if c1 > c0 {
            x0 + (x1 - x0) * (u - c0) / (c1 - c0)
        } else {
            x0
        }
    }
}

/// Inverse-CDF sampler for the class distribution of a truncated density.
///
/// Construction costs one pass over a dense grid per factor; sampling is a
/// binary search plus linear interpolation and is deterministic given the
/// random-stream state.
#[derive(Debug, Clone)]
pub struct ClassSampler {
    sources: Vec<FactorCdf>,
    group: crate::liegroup::GroupSpec,
}

impl ClassSampler {
    /// Tabulates per-factor inverse CDFs against weight f_t(·)·(class density).
    ///
    /// The per-factor marginal coefficients are read off the product density
    /// (labels supported on a single factor), which is exact for the heat
    /// kernel. Fails if the truncated density is more negative than its own
    /// tail bound anywhere on the grid (tolerance too loose).
    pub fn new(density: &TruncatedDensity) -> Result<Self> {
        let group = density.params().group().clone();
        let tail = density.tail_bound();
        let mut sources = Vec::with_capacity(group.n_factors());
        for (pos, factor) in group.factors().iter().enumerate() {
            // Marginal coefficients of this factor: labels zero elsewhere.
            let marginal: Vec<(i64, f64)> = density
                .coefficients()
                .iter()
                .filter(|(rep, _)| {
                    rep.label()
                        .iter()
                        .enumerate()
                        .all(|(i, &e)| i == pos || e == 0)
                })
                .map(|(rep, c)| (rep.label()[pos], *c))
                .collect();

            let (coords, weights): (Vec<f64>, Vec<f64>) = match factor.kind {
                FactorKind::Su2 => {
                    let coords: Vec<f64> = (0..=GRID_SIZE)
                        .map(|i| PI * i as f64 / GRID_SIZE as f64)
                        .collect();
                    let weights = coords
                        .iter()
                        .map(|&th| {
                            let f: f64 = marginal
                                .iter()
                                .map(|&(n, c)| c * crate::liegroup::su2_character(n, th))
                                .sum();
                            (f, (2.0 / PI) * th.sin().powi(2))
                        })
                        .map(|(f, w)| check_nonnegative(f, tail).map(|f| f * w))
                        .collect::<Result<Vec<f64>>>()?;
                    (coords, weights)
                }
                FactorKind::Torus => {
                    let coords: Vec<f64> = (0..=GRID_SIZE)
                        .map(|i| -PI + 2.0 * PI * i as f64 / GRID_SIZE as f64)
                        .collect();
                    let weights = coords
                        .iter()
                        .map(|&phi| {
                            let f: f64 = marginal
                                .iter()
                                .map(|&(z, c)| c * (z as f64 * phi).cos())
                                .sum();
                            (f, 1.0 / (2.0 * PI))
                        })
                        .map(|(f, w)| check_nonnegative(f, tail).map(|f| f * w))
                        .collect::<Result<Vec<f64>>>()?;
                    (coords, weights)
                }
            };

            // Trapezoid cumulative, normalized to 1.
            let mut cdf = Vec::with_capacity(coords.len());
            cdf.push(0.0);
            for i in 1..coords.len() {
                let step = (coords[i] - coords[i - 1]) * 0.5 * (weights[i] + weights[i - 1]);
                cdf.push(cdf[i - 1] + step);
            }
            let total = *cdf.last().unwrap();
            if !(total > 0.0) {
                return Err(Error::ToleranceTooLoose(
                    "truncated density has no positive mass on the grid".into(),
                ));
            }
            for c in &mut cdf {
                *c /= total;
            }
            sources.push(FactorCdf { coords, cdf });
        }
        Ok(ClassSampler { sources, group })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> ClassPoint {
        let coords = self
            .sources
            .iter()
            .map(|s| s.invert(rng.random::<f64>()))
            .collect();
        ClassPoint::new(&self.group, coords).expect("sampled coordinates are in range")
    }

    /// The tabulated (coordinate, cdf) pairs of one factor, for audit dumps.
    pub fn cdf_table(&self, factor: usize) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.sources[factor]
            .coords
            .iter()
            .copied()
            .zip(self.sources[factor].cdf.iter().copied())
    }
}

fn check_nonnegative(f: f64, tail: f64) -> Result<f64> {
    if f < -tail {
        Err(Error::ToleranceTooLoose(format!(
            "truncated density value {f:.3e} below -tail_bound {tail:.3e} on sampling grid"
        )))
    } else {
        Ok(f.max(0.0))
    }
}

/// One class point distributed (up to tail-bound bias) with density f_t
/// against the class measure. Builds the inverse-CDF tables on each call;
/// use [`ClassSampler`] directly for batch sampling.
pub fn sample_class<R: Rng + ?Sized>(
    params: &HeatKernelParams,
    density: &TruncatedDensity,
    rng: &mut R,
) -> Result<ClassPoint> {
    debug_assert_eq!(params.group(), density.params().group());
    Ok(ClassSampler::new(density)?.sample(rng))
}
