//! Placing phases on a signature so that its average index hits a prescribed
//! value exactly.
//!
//! With slopes `d_j = I_j - I_{j+1}` the average index is the affine function
//! `α(t) = I_{l+1} + 2 Σ d_j t_j` on the open simplex
//! `0 < t_1 < … < t_l < 1/2`. Its image is the open interval spanned by the
//! values at the simplex vertices `v_k = (0,…,0,1/2,…,1/2)` (`k` zeros), so
//! feasibility over the reals is an interval test. A feasible point is then
//! nudged inside the level set until every phase has a reduced denominator
//! divisible by the prime `Q`, which keeps `j/m` off every phase for all
//! `m < Q`.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::profile::IndexProfile;
use crate::scalar::{count, format_ratio, int, is_prime, ratio, Int};

use super::signature::Signature;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhaseOutcome<T: Int> {
    Realized(IndexProfile<T>),
    Infeasible(PhaseCertificate<T>),
}

impl<T: Int> PhaseOutcome<T> {
    pub fn profile(&self) -> Option<&IndexProfile<T>> {
        match self {
            PhaseOutcome::Realized(p) => Some(p),
            PhaseOutcome::Infeasible(_) => None,
        }
    }
}

/// Why no admissible phase vector reaches the target average index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhaseCertificate<T: Int> {
    /// Arc values are non-negative, so the average index is too.
    NegativeTarget { target: Ratio<T> },
    /// All slopes vanish: the average index is `forced` for every phase vector.
    ConstantAverage { forced: Ratio<T> },
    /// The target lies outside the open interval of reachable averages.
    OutsideRange {
        lower: Ratio<T>,
        upper: Ratio<T>,
    },
    /// Exactly one slope is nonzero, which pins phase `position` to a
    /// rational `value` whose denominator is not divisible by `modulus`.
    ForcedPhase {
        position: usize,
        value: Ratio<T>,
        modulus: u64,
    },
}

impl<T: Int> PhaseCertificate<T> {
    /// Whether some real phase vector would reach the target.
    pub fn reachable_over_reals(&self) -> bool {
        matches!(self, PhaseCertificate::ForcedPhase { .. })
    }

    pub fn describe(&self) -> String {
        match self {
            PhaseCertificate::NegativeTarget { target } => {
                format!("target average {} is negative", format_ratio(target))
            }
            PhaseCertificate::ConstantAverage { forced } => {
                format!("average index is constant {}", format_ratio(forced))
            }
            PhaseCertificate::OutsideRange { lower, upper } => format!(
                "reachable averages form the open interval ({}, {})",
                format_ratio(lower),
                format_ratio(upper)
            ),
            PhaseCertificate::ForcedPhase {
                position,
                value,
                modulus,
            } => format!(
                "phase t_{position} is forced to {} whose denominator is prime to {modulus}",
                format_ratio(value)
            ),
        }
    }
}

/// Open interval of average indices reachable by admissible phases, or the
/// constant value when every slope vanishes.
pub fn reachable_averages<T: Int>(sig: &Signature) -> (Ratio<T>, Ratio<T>) {
    let last = Ratio::from_integer(count::<T>(*sig.arc_values.last().unwrap()));
    let values = vertex_averages::<T>(sig);
    let lower = values.iter().min().cloned().unwrap_or_else(|| last.clone());
    let upper = values.iter().max().cloned().unwrap_or(last);
    (lower, upper)
}

// α at v_k for k = 0..=l: I_{l+1} + Σ_{j>k} d_j.
fn vertex_averages<T: Int>(sig: &Signature) -> Vec<Ratio<T>> {
    let slopes = sig.slopes();
    let last = *sig.arc_values.last().unwrap() as i64;
    (0..=slopes.len())
        .map(|k| ratio(last + slopes[k..].iter().sum::<i64>(), 1))
        .collect()
}

/// Finds phases for `sig` with average index exactly `target` and every
/// reduced phase denominator divisible by the prime `modulus`.
pub fn phase_instantiate<T: Int>(
    sig: &Signature,
    target: &Ratio<T>,
    modulus: u64,
) -> Result<PhaseOutcome<T>> {
    if !is_prime(modulus) {
        return Err(Error::PrecondViolation(format!("Q = {modulus} is not prime")));
    }
    if let Some(v) = sig.violations().into_iter().next() {
        return Err(Error::InvalidProfile(v));
    }
    if target.is_negative() {
        return Ok(PhaseOutcome::Infeasible(PhaseCertificate::NegativeTarget {
            target: target.clone(),
        }));
    }
    let l = sig.phase_count();
    let slopes = sig.slopes();
    let last = Ratio::from_integer(count::<T>(*sig.arc_values.last().unwrap()));

    let centre: Vec<Ratio<T>>;
    let mut nudges = vec![1i64; l];
    let active: Vec<usize> = (0..l).filter(|&j| slopes[j] != 0).collect();

    if active.is_empty() {
        if *target != last {
            return Ok(PhaseOutcome::Infeasible(PhaseCertificate::ConstantAverage {
                forced: last,
            }));
        }
        centre = (1..=l as i64).map(|j| ratio(j, 2 * (l as i64 + 1))).collect();
    } else {
        let values = vertex_averages::<T>(sig);
        let lower = values.iter().min().unwrap().clone();
        let upper = values.iter().max().unwrap().clone();
        if !(lower < *target && *target < upper) {
            return Ok(PhaseOutcome::Infeasible(PhaseCertificate::OutsideRange {
                lower,
                upper,
            }));
        }
        centre = interior_point(&values, target);

        if active.len() == 1 {
            let a = active[0];
            let value = centre[a].clone();
            if !denominator_divisible(&value, modulus) {
                return Ok(PhaseOutcome::Infeasible(PhaseCertificate::ForcedPhase {
                    position: a + 1,
                    value,
                    modulus,
                }));
            }
            nudges[a] = 0;
        } else {
            // e_j = d_a·y_j off the anchor a, e_a = -Σ d_j y_j keeps Σ d_j e_j = 0.
            let a = active[0];
            let mut y: Vec<i64> = vec![1; l];
            let mut s: i64 = active[1..].iter().map(|&j| slopes[j] * y[j]).sum();
            if s == 0 {
                let b = active[1];
                y[b] = 2;
                s += slopes[b];
            }
            for &j in &active[1..] {
                nudges[j] = slopes[a] * y[j];
            }
            nudges[a] = -s;
        }
    }

    let phases = nudge(&centre, &nudges, modulus)?;
    let profile = sig.with_phases(phases)?;
    let ok = profile.average_index() == *target
        && profile
            .phases()
            .iter()
            .all(|t| denominator_divisible(t, modulus));
    if !ok {
        return Err(Error::PrecondViolation(format!(
            "could not place phases over denominator multiple of {modulus}"
        )));
    }
    Ok(PhaseOutcome::Realized(profile))
}

/// A point of the open simplex on the level set `α = target`, written as a
/// strictly positive convex combination of the vertices.
fn interior_point<T: Int>(values: &[Ratio<T>], target: &Ratio<T>) -> Vec<Ratio<T>> {
    let k = values.len();
    let weight = Ratio::new(T::one(), count::<T>(k as u64));
    let mean = values.iter().fold(Ratio::zero(), |acc, v| acc + v) * weight.clone();
    let mut lambda = vec![weight; k];
    if *target != mean {
        let pick = if *target > mean {
            values.iter().enumerate().max_by(|a, b| a.1.cmp(b.1)).unwrap().0
        } else {
            values.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).unwrap().0
        };
        let s = (target - &mean) / (&values[pick] - &mean);
        for (i, w) in lambda.iter_mut().enumerate() {
            *w = w.clone() * (Ratio::one() - &s);
            if i == pick {
                *w = w.clone() + &s;
            }
        }
    }
    // t_j = (1/2) Σ_{k<j} λ_k
    let half = ratio::<T>(1, 2);
    let mut acc = Ratio::zero();
    let mut out = Vec::with_capacity(k - 1);
    for w in &lambda[..k - 1] {
        acc = acc + w;
        out.push(acc.clone() * half.clone());
    }
    out
}

/// `t_j + e_j / (Q·M)` with `M` a multiple of every nudged denominator,
/// prime to `Q`, and large enough that the shifts stay below half the
/// smallest gap.
fn nudge<T: Int>(centre: &[Ratio<T>], nudges: &[i64], modulus: u64) -> Result<Vec<Ratio<T>>> {
    if nudges.iter().all(|&e| e == 0) {
        return Ok(centre.to_vec());
    }
    let q: T = count(modulus);
    let lcm = centre
        .iter()
        .zip(nudges)
        .filter(|(_, &e)| e != 0)
        .fold(T::one(), |acc, (t, _)| acc.lcm(t.denom()));
    if lcm.is_multiple_of(&q) {
        return Err(Error::PrecondViolation(format!(
            "interior point already has denominator divisible by {modulus}"
        )));
    }
    let half = ratio::<T>(1, 2);
    let mut min_gap = centre[0].clone();
    for w in centre.windows(2) {
        min_gap = min_gap.min(&w[1] - &w[0]);
    }
    min_gap = min_gap.min(&half - centre.last().unwrap());
    let largest = nudges.iter().map(|e| e.abs()).max().unwrap_or(0).max(1);
    // need largest / (Q·lcm·k) < min_gap / 2
    let need = Ratio::from_integer(int::<T>(2 * largest)) / (min_gap * Ratio::from_integer(q.clone() * lcm.clone()));
    let mut k = need.floor().to_integer() + T::one();
    if k < T::one() {
        k = T::one();
    }
    if k.is_multiple_of(&q) {
        k = k + T::one();
    }
    let scale = q * lcm * k;
    Ok(centre
        .iter()
        .zip(nudges)
        .map(|(t, e)| t + Ratio::new(int(*e), scale.clone()))
        .collect())
}

fn denominator_divisible<T: Int>(t: &Ratio<T>, modulus: u64) -> bool {
    t.denom().is_multiple_of(&count(modulus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn sig(n: u64, arcs: &[u64], nul: &[u64]) -> Signature {
        Signature::new(n, arcs.to_vec(), nul.to_vec()).unwrap()
    }

    #[test]
    fn extremal_four_hits_target_exactly() {
        let s = sig(4, &[3, 2, 1, 2], &[1, 1, 1]);
        let target = ratio::<i64>(178, 97);
        let p = match phase_instantiate(&s, &target, 9973).unwrap() {
            PhaseOutcome::Realized(p) => p,
            other => panic!("{other:?}"),
        };
        assert_eq!(p.average_index(), target);
        assert!(p.validate().is_empty());
        assert!(p.phases().iter().all(|t| t.denom() % 9973 == 0));
        assert!((1..9973).all(|m| p.is_collision_free(m)));
    }

    #[test]
    fn constant_signature_forces_average() {
        let s = sig(3, &[2], &[]);
        assert!(matches!(
            phase_instantiate::<i64>(&s, &ratio(1, 1), 499).unwrap(),
            PhaseOutcome::Infeasible(PhaseCertificate::ConstantAverage { .. })
        ));
        let p = phase_instantiate::<i64>(&s, &ratio(2, 1), 499).unwrap();
        assert_eq!(p.profile().unwrap().arc_values(), &[2]);
    }

    #[test]
    fn negative_target() {
        let s = sig(4, &[3, 2, 1, 2], &[1, 1, 1]);
        assert!(matches!(
            phase_instantiate::<i64>(&s, &ratio(-1, 3), 499).unwrap(),
            PhaseOutcome::Infeasible(PhaseCertificate::NegativeTarget { .. })
        ));
    }

    #[test]
    fn outside_reachable_interval() {
        // α = 2(t1 - t2 + 1) ranges over (1, 2)
        let s = sig(3, &[2, 1, 2], &[1, 1]);
        assert_eq!(reachable_averages::<i64>(&s), (ratio(1, 1), ratio(2, 1)));
        match phase_instantiate::<i64>(&s, &ratio(1, 1), 499).unwrap() {
            PhaseOutcome::Infeasible(PhaseCertificate::OutsideRange { lower, upper }) => {
                assert_eq!((lower, upper), (ratio(1, 1), ratio(2, 1)));
            }
            other => panic!("{other:?}"),
        }
        let p = phase_instantiate::<i64>(&s, &ratio(3, 2), 499).unwrap();
        assert_eq!(p.profile().unwrap().average_index(), ratio(3, 2));
    }

    #[test]
    fn single_slope_pins_a_phase() {
        // α = 2 + 2 t1, so t1 = (α - 2)/2
        let s = sig(3, &[3, 2], &[1]);
        match phase_instantiate::<i64>(&s, &ratio(5, 2), 499).unwrap() {
            PhaseOutcome::Infeasible(PhaseCertificate::ForcedPhase { position, value, .. }) => {
                assert_eq!((position, value), (1, ratio(1, 4)));
            }
            other => panic!("{other:?}"),
        }
        let ok = phase_instantiate::<i64>(&s, &ratio(2 * 499 + 2, 499), 499).unwrap();
        assert_eq!(ok.profile().unwrap().phases(), &[ratio(1, 499)]);
    }

    #[test]
    fn flat_signature_with_matching_target() {
        let s = sig(3, &[2, 2, 2], &[1, 1]);
        let p = phase_instantiate::<i64>(&s, &ratio(2, 1), 499).unwrap();
        let p = p.profile().unwrap();
        assert!(p.phases().iter().all(|t| t.denom() % 499 == 0));
    }

    #[test]
    fn rejects_composite_modulus() {
        let s = sig(3, &[2], &[]);
        assert!(phase_instantiate::<i64>(&s, &ratio(2, 1), 500).is_err());
    }
}
