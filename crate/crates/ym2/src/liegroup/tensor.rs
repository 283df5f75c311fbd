use std::collections::HashMap;

use crate::error::Result;
use crate::liegroup::group::{FactorKind, GroupSpec, Irrep};

/// Multiplicity of `target` in the tensor product of `factors`.
///
/// Irreps of a product group are outer products, so the multiplicity
/// factorizes over the group factors: the Clebsch-Gordan interval rule for
/// each SU(2) factor (n appears in n₁⊗n₂ iff |n₁−n₂| ≤ n ≤ n₁+n₂ with
/// n₁+n₂−n even, multiplicity one) convolved over the list, and charge
/// addition for each U(1) factor.
pub fn tensor_multiplicity(group: &GroupSpec, factors: &[Irrep], target: &Irrep) -> Result<u64> {
    for rep in factors.iter().chain(std::iter::once(target)) {
        group.check_label(rep.label())?;
    }
    if factors.is_empty() {
        return Ok(if target.is_trivial() { 1 } else { 0 });
    }
    let mut total = 1u64;
    for (pos, f) in group.factors().iter().enumerate() {
        let entries: Vec<i64> = factors.iter().map(|r| r.label()[pos]).collect();
        let t = target.label()[pos];
        let m = match f.kind {
            FactorKind::Torus => u64::from(entries.iter().sum::<i64>() == t),
            FactorKind::Su2 => su2_multiplicity(&entries, t),
        };
        if m == 0 {
            return Ok(0);
        }
        total = total.saturating_mul(m);
    }
    Ok(total)
}

/// Multiplicity of spin label `target` in n₁ ⊗ n₂ ⊗ ··· by iterated
/// convolution of the interval rule.
fn su2_multiplicity(labels: &[i64], target: i64) -> u64 {
    let mut mult: HashMap<i64, u64> = HashMap::new();
    mult.insert(labels[0], 1);
    for &n in &labels[1..] {
        let mut next: HashMap<i64, u64> = HashMap::new();
        for (&j, &count) in &mult {
            let mut m = (j - n).abs();
            while m <= j + n {
                *next.entry(m).or_insert(0) += count;
                m += 2;
            }
        }
        mult = next;
    }
    mult.get(&target).copied().unwrap_or(0)
}
