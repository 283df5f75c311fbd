use std::fmt;

use crate::error::{Error, Result};

/// Kind of one factor of the structure group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorKind {
    /// A U(1) factor; irrep labels are signed charges z, dimension 1, c = scale·z².
    Torus,
    /// An SU(2) factor; irrep labels are highest weights n ≥ 0, dimension n+1,
    /// c = scale·n(n+2).
    Su2,
}

/// One factor together with its Casimir normalization constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factor {
    pub kind: FactorKind,
    pub casimir_scale: f64,
}

impl Factor {
    pub fn su2() -> Self {
        Factor {
            kind: FactorKind::Su2,
            casimir_scale: 1.0,
        }
    }

    pub fn torus() -> Self {
        Factor {
            kind: FactorKind::Torus,
            casimir_scale: 1.0,
        }
    }
}

/// A compact structure group given as an ordered product of U(1) and SU(2)
/// factors.
///
/// With the default `casimir_scale = 1` the Casimir eigenvalues are
/// `n(n+2)` per SU(2) factor and `z²` per U(1) factor; all closed-form
/// expectation values in this crate are stated in that normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSpec {
    factors: Vec<Factor>,
}

impl GroupSpec {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument(
                "group needs at least one factor".into(),
            ));
        }
        if let Some(f) = factors
            .iter()
            .find(|f| !(f.casimir_scale > 0.0) || !f.casimir_scale.is_finite())
        {
            return Err(Error::InvalidArgument(format!(
                "casimir_scale must be positive and finite, got {}",
                f.casimir_scale
            )));
        }
        Ok(GroupSpec { factors })
    }

    /// Parse the textual form used by the CLI and lattice files:
    /// factor tags "su2" / "u1" joined by '*', case-insensitive.
    pub fn parse(text: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for part in text.split('*') {
            match part.trim().to_ascii_lowercase().as_str() {
                "su2" => factors.push(Factor::su2()),
                "u1" => factors.push(Factor::torus()),
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown group factor '{other}' (expected \"su2\" or \"u1\")"
                    )))
                }
            }
        }
        GroupSpec::new(factors)
    }

    pub fn su2() -> Self {
        GroupSpec {
            factors: vec![Factor::su2()],
        }
    }

    pub fn u1() -> Self {
        GroupSpec {
            factors: vec![Factor::torus()],
        }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn n_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn n_su2(&self) -> usize {
        self.factors
            .iter()
            .filter(|f| f.kind == FactorKind::Su2)
            .count()
    }

    pub fn n_torus(&self) -> usize {
        self.factors
            .iter()
            .filter(|f| f.kind == FactorKind::Torus)
            .count()
    }

    /// dim G = Σ (3 per SU(2) factor, 1 per U(1) factor).
    pub fn dim(&self) -> usize {
        self.factors
            .iter()
            .map(|f| match f.kind {
                FactorKind::Su2 => 3,
                FactorKind::Torus => 1,
            })
            .sum()
    }

    /// Dimension of the semisimple part (3 per SU(2) factor).
    pub fn dim_semisimple(&self) -> usize {
        3 * self.n_su2()
    }

    /// Rank = number of factors (each contributes one torus direction).
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// N of the block-diagonal defining embedding G ⊆ U(N):
    /// 2 per SU(2) factor, 1 per U(1) factor.
    pub fn defining_dim(&self) -> usize {
        self.factors
            .iter()
            .map(|f| match f.kind {
                FactorKind::Su2 => 2,
                FactorKind::Torus => 1,
            })
            .sum()
    }

    /// Lower Casimir constant: c₋‖ν‖² ≤ c_ν.
    pub fn c_minus(&self) -> f64 {
        self.factors
            .iter()
            .map(|f| f.casimir_scale)
            .fold(f64::INFINITY, f64::min)
    }

    /// Upper Casimir constant: c_ν ≤ c₊‖ν‖²  (n(n+2) ≤ 3n² for n ≥ 1).
    pub fn c_plus(&self) -> f64 {
        3.0 * self
            .factors
            .iter()
            .map(|f| f.casimir_scale)
            .fold(0.0f64, f64::max)
    }

    /// Certified constant of the dimension bound d_ν ≤ const·‖ν‖^{#SU2}
    /// for ν ≠ 0: each factor obeys n+1 ≤ 2·max(n,1) ≤ 2‖ν‖.
    pub fn dim_bound_const(&self) -> f64 {
        2f64.powi(self.n_su2() as i32)
    }

    pub fn canonical_name(&self) -> String {
        self.factors
            .iter()
            .map(|f| match f.kind {
                FactorKind::Su2 => "su2",
                FactorKind::Torus => "u1",
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub(crate) fn check_label(&self, label: &[i64]) -> Result<()> {
        if label.len() != self.factors.len() {
            return Err(Error::BadLabel {
                group: self.canonical_name(),
                label: label.to_vec(),
                reason: format!(
                    "label arity {} does not match {} factors",
                    label.len(),
                    self.factors.len()
                ),
            });
        }
        for (i, (f, &entry)) in self.factors.iter().zip(label).enumerate() {
            if f.kind == FactorKind::Su2 && entry < 0 {
                return Err(Error::BadLabel {
                    group: self.canonical_name(),
                    label: label.to_vec(),
                    reason: format!("SU(2) entry {entry} at position {i} must be nonnegative"),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_name())
    }
}

/// An irreducible representation label ν = (n⃗, z⃗) with derived dimension
/// and Casimir eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct Irrep {
    label: Vec<i64>,
    dimension: u64,
    casimir: f64,
}

impl Irrep {
    pub fn new(group: &GroupSpec, label: Vec<i64>) -> Result<Self> {
        group.check_label(&label)?;
        let mut dimension = 1u64;
        let mut casimir = 0.0;
        for (f, &entry) in group.factors().iter().zip(&label) {
            match f.kind {
                FactorKind::Su2 => {
                    dimension *= (entry + 1) as u64;
                    casimir += f.casimir_scale * (entry * (entry + 2)) as f64;
                }
                FactorKind::Torus => {
                    casimir += f.casimir_scale * (entry * entry) as f64;
                }
            }
        }
        Ok(Irrep {
            label,
            dimension,
            casimir,
        })
    }

    pub fn trivial(group: &GroupSpec) -> Self {
        Irrep {
            label: vec![0; group.n_factors()],
            dimension: 1,
            casimir: 0.0,
        }
    }

    pub fn label(&self) -> &[i64] {
        &self.label
    }

    pub fn dimension(&self) -> u64 {
        self.dimension
    }

    pub fn casimir(&self) -> f64 {
        self.casimir
    }

    pub fn is_trivial(&self) -> bool {
        self.label.iter().all(|&x| x == 0)
    }

    /// Euclidean norm of the label tuple.
    pub fn norm(&self) -> f64 {
        self.label
            .iter()
            .map(|&x| (x * x) as f64)
            .sum::<f64>()
            .sqrt()
    }

    /// The dual representation: torus charges negated, SU(2) entries kept
    /// (SU(2) irreps are self-dual).
    pub fn dual(&self, group: &GroupSpec) -> Irrep {
        let label = group
            .factors()
            .iter()
            .zip(&self.label)
            .map(|(f, &e)| match f.kind {
                FactorKind::Su2 => e,
                FactorKind::Torus => -e,
            })
            .collect();
        Irrep {
            label,
            dimension: self.dimension,
            casimir: self.casimir,
        }
    }
}

impl fmt::Display for Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, entry) in self.label.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{entry}")?;
        }
        write!(f, ")")
    }
}

/// Dimension of the irrep with the given label: Π (n_i + 1) over SU(2)
/// factors (Weyl formula specialized to rank one).
pub fn dimension(group: &GroupSpec, label: &[i64]) -> Result<u64> {
    Ok(Irrep::new(group, label.to_vec())?.dimension())
}

/// All irreps with ‖label‖ ≤ `norm_cutoff`, sorted by Casimir ascending,
/// ties broken lexicographically by label.
pub fn irreps_up_to(group: &GroupSpec, norm_cutoff: f64) -> Vec<Irrep> {
    assert!(norm_cutoff >= 0.0, "norm_cutoff must be nonnegative");
    let mut out = Vec::new();
    let r2 = norm_cutoff * norm_cutoff;
    let max = norm_cutoff.floor() as i64;
    let mut label = vec![0i64; group.n_factors()];
    enumerate_labels(group, 0, r2, max, &mut label, &mut out);
    out.sort_by(|a, b| {
        a.casimir
            .partial_cmp(&b.casimir)
            .unwrap()
            .then_with(|| a.label.cmp(&b.label))
    });
    out
}

fn enumerate_labels(
    group: &GroupSpec,
    pos: usize,
    budget: f64,
    max: i64,
    label: &mut Vec<i64>,
    out: &mut Vec<Irrep>,
) {
    if pos == group.n_factors() {
        out.push(Irrep::new(group, label.clone()).expect("enumerated label is valid"));
        return;
    }
    let lo = match group.factors()[pos].kind {
        FactorKind::Su2 => 0,
        FactorKind::Torus => -max,
    };
    for entry in lo..=max {
        let sq = (entry * entry) as f64;
        if sq > budget {
            continue;
        }
        label[pos] = entry;
        enumerate_labels(group, pos + 1, budget - sq, max, label, out);
    }
    label[pos] = 0;
}
