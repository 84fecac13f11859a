//! Phase-free skeletons of index profiles and their exhaustive enumeration.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::bott::Gamma;
use crate::error::{Error, Result};
use crate::profile::{IndexProfile, Violation};
use crate::scalar::{count, Int};

/// Arc values and nullities of a profile, without phases.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    pub n: u64,
    pub arc_values: Vec<u64>,
    pub nullities: Vec<u64>,
}

/// Dimensions for which [`enumerate_signatures`] is tractable.
pub const ENUMERABLE_DIMENSIONS: std::ops::RangeInclusive<u64> = 3..=8;

impl Signature {
    pub fn new(n: u64, arc_values: Vec<u64>, nullities: Vec<u64>) -> Result<Self> {
        let s = Signature {
            n,
            arc_values,
            nullities,
        };
        match s.violations().into_iter().next() {
            Some(v) => Err(Error::InvalidProfile(v)),
            None => Ok(s),
        }
    }

    pub fn of_profile<T: Int>(p: &IndexProfile<T>) -> Self {
        Signature {
            n: p.n(),
            arc_values: p.arc_values().to_vec(),
            nullities: p.nullities().to_vec(),
        }
    }

    pub fn phase_count(&self) -> usize {
        self.nullities.len()
    }

    /// Structural violations other than those concerning phases.
    pub fn violations(&self) -> Vec<Violation> {
        self.with_placeholder_phases::<i64>().validate()
    }

    /// Largest arc value admitted by the enumeration: `2(n - 1)`.
    pub fn arc_bound(&self) -> u64 {
        2 * (self.n - 1)
    }

    pub fn within_arc_bound(&self) -> bool {
        self.arc_values.iter().all(|&v| v <= self.arc_bound())
    }

    /// `ind(c) = I_1`.
    pub fn index_of_prime(&self) -> u64 {
        self.arc_values[0]
    }

    /// `ind(c²) = I_1 + I_c(-1)`; no other square root of unity exists.
    pub fn second_iterate_index(&self) -> u64 {
        self.arc_values[0] + self.arc_values[self.arc_values.len() - 1]
    }

    pub fn gamma(&self) -> Gamma {
        Gamma::from_indices(self.index_of_prime(), self.second_iterate_index())
    }

    /// Slopes `d_j = I_j - I_{j+1}` of the average index as a function of
    /// the phases: `α = I_{l+1} + 2 Σ d_j t_j`.
    pub fn slopes(&self) -> Vec<i64> {
        self.arc_values
            .windows(2)
            .map(|w| w[0] as i64 - w[1] as i64)
            .collect()
    }

    pub fn with_phases<T: Int>(&self, phases: Vec<Ratio<T>>) -> Result<IndexProfile<T>> {
        IndexProfile::new(self.n, self.arc_values.clone(), phases, self.nullities.clone())
    }

    fn with_placeholder_phases<T: Int>(&self) -> IndexProfile<T> {
        let l = self.nullities.len() as u64;
        let phases = (1..=l)
            .map(|j| Ratio::new(count(j), count(2 * (l + 1))))
            .collect();
        IndexProfile::from_parts_unchecked(
            self.n,
            self.arc_values.clone(),
            phases,
            self.nullities.clone(),
        )
    }
}

fn check_enumerable(n: u64) -> Result<()> {
    if ENUMERABLE_DIMENSIONS.contains(&n) {
        Ok(())
    } else {
        Err(Error::PrecondViolation(format!(
            "signature enumeration supports 3 <= n <= 8, got {n}"
        )))
    }
}

/// Calls `visit` on every admissible signature for dimension `n`, ordered by
/// phase count, then arc values, then nullities (both lexicographic).
pub fn for_each_signature(n: u64, mut visit: impl FnMut(Signature)) -> Result<()> {
    check_enumerable(n)?;
    let budget = n - 1;
    let top = 2 * (n - 1);
    let mut arcs = Vec::new();
    for l in 0..=budget as usize {
        for first in 0..=top {
            arcs.clear();
            arcs.push(first);
            extend_arcs(n, l, top, budget, &mut arcs, &mut visit);
        }
    }
    Ok(())
}

// `budget` is what remains of n - 1 after charging each placed phase
// max(1, |jump|), the least nullity it can carry.
fn extend_arcs(
    n: u64,
    l: usize,
    top: u64,
    budget: u64,
    arcs: &mut Vec<u64>,
    visit: &mut impl FnMut(Signature),
) {
    let placed = arcs.len() - 1;
    if placed == l {
        let mins: Vec<u64> = arcs.windows(2).map(|w| w[0].abs_diff(w[1]).max(1)).collect();
        let spare = budget;
        let mut nullities = mins.clone();
        extend_nullities(n, arcs, &mins, 0, spare, &mut nullities, visit);
        return;
    }
    // every later phase costs at least one
    let later = (l - placed - 1) as u64;
    let prev = *arcs.last().unwrap();
    for next in 0..=top {
        let cost = prev.abs_diff(next).max(1);
        if cost + later > budget {
            continue;
        }
        arcs.push(next);
        extend_arcs(n, l, top, budget - cost, arcs, visit);
        arcs.pop();
    }
}

fn extend_nullities(
    n: u64,
    arcs: &[u64],
    mins: &[u64],
    pos: usize,
    spare: u64,
    nullities: &mut Vec<u64>,
    visit: &mut impl FnMut(Signature),
) {
    if pos == mins.len() {
        visit(Signature {
            n,
            arc_values: arcs.to_vec(),
            nullities: nullities.clone(),
        });
        return;
    }
    for extra in 0..=spare {
        nullities[pos] = mins[pos] + extra;
        extend_nullities(n, arcs, mins, pos + 1, spare - extra, nullities, visit);
    }
    nullities[pos] = mins[pos];
}

/// Every admissible signature for dimension `n`, `3 ≤ n ≤ 8`.
pub fn enumerate_signatures(n: u64) -> Result<Vec<Signature>> {
    let mut out = Vec::new();
    for_each_signature(n, |s| out.push(s))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dimension_contents() {
        let all = enumerate_signatures(3).unwrap();
        let has = |arcs: &[u64], nul: &[u64]| {
            all.iter()
                .any(|s| s.arc_values == arcs && s.nullities == nul)
        };
        assert!(has(&[2, 1, 2], &[1, 1]));
        assert!(has(&[2], &[]));
        assert!(!has(&[2, 0, 2], &[1, 1]));
        assert!(all.iter().all(|s| s.violations().is_empty() && s.within_arc_bound()));
    }

    #[test]
    fn deterministic_and_duplicate_free() {
        let a = enumerate_signatures(4).unwrap();
        let b = enumerate_signatures(4).unwrap();
        assert_eq!(a, b);
        let mut sorted = a.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), a.len());
    }

    #[test]
    fn rejects_out_of_range_dimension() {
        assert!(enumerate_signatures(2).is_err());
        assert!(enumerate_signatures(9).is_err());
    }

    #[test]
    fn signature_indices() {
        let s = Signature::new(4, vec![3, 2, 1, 2], vec![1, 1, 1]).unwrap();
        assert_eq!(s.index_of_prime(), 3);
        assert_eq!(s.second_iterate_index(), 5);
        assert_eq!(s.gamma(), Gamma::MinusOne);
        assert_eq!(s.slopes(), vec![1, 1, -1]);
        assert!(Signature::new(3, vec![2, 0, 2], vec![1, 1]).is_err());
    }
}
