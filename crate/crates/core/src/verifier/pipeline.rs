//! The single-geodesic contradiction pipeline.
//!
//! A candidate for the only prime closed geodesic on a bumpy non-reversible
//! Finsler `Sⁿ` is pushed through a fixed sequence of checks, each derived
//! from Morse theory on the loop space. The first failing check, with exact
//! witness values, is the verdict.

use std::fmt;

use num_rational::Ratio;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::bott::Gamma;
use crate::error::{Error, Result};
use crate::homology::{betti_number, poincare_coefficients};
use crate::morse::{aggregate_w, morse_q_recursion};
use crate::profile::IndexProfile;
use crate::scalar::{count, format_ratio, int, Int};

use super::instantiate::PhaseCertificate;
use super::prop33::check_prop33;
use super::signature::Signature;

/// Pipeline checks in execution order.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(rename_all = "kebab-case")]
pub enum Step {
    IndexOfPrime,
    SecondIterate,
    AverageRelation,
    Prop33Hypotheses,
    MorseFeasibility,
    GapBound,
    JumpClash,
    PhaseInfeasible,
}

impl Step {
    pub const ALL: [Step; 8] = [
        Step::IndexOfPrime,
        Step::SecondIterate,
        Step::AverageRelation,
        Step::Prop33Hypotheses,
        Step::MorseFeasibility,
        Step::GapBound,
        Step::JumpClash,
        Step::PhaseInfeasible,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Step::IndexOfPrime => "index-of-prime",
            Step::SecondIterate => "second-iterate",
            Step::AverageRelation => "average-relation",
            Step::Prop33Hypotheses => "prop33-hypotheses",
            Step::MorseFeasibility => "morse-feasibility",
            Step::GapBound => "gap-bound",
            Step::JumpClash => "jump-clash",
            Step::PhaseInfeasible => "phase-infeasible",
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Candidate<T: Int> {
    Profile(IndexProfile<T>),
    Signature(Signature),
}

impl<T: Int> Candidate<T> {
    pub fn signature(&self) -> Signature {
        match self {
            Candidate::Profile(p) => Signature::of_profile(p),
            Candidate::Signature(s) => s.clone(),
        }
    }
}

/// Exact values proving a failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness<T: Int> {
    IndexOfPrime {
        index: u64,
        required: u64,
    },
    /// `ind(c²) ≤ n` puts at least `critical` iterates in degree `degree`
    /// where the Betti number is only `betti`.
    SecondIterate {
        second: u64,
        degree: u64,
        critical: u64,
        betti: u64,
    },
    AverageRelation {
        gamma: Gamma,
        required: Ratio<T>,
        /// The candidate's average index, when it has phases.
        actual: Option<Ratio<T>>,
        certificate: Option<PhaseCertificate<T>>,
    },
    Prop33 {
        failure: String,
    },
    /// `q_degree` is negative, or nonzero where it must vanish.
    MorseFeasibility {
        degree: u64,
        w: u64,
        b: u64,
        q: i64,
    },
    GapBound {
        m: u64,
        lower: u64,
        upper: u64,
    },
    JumpClash {
        k: u64,
        lower: u64,
        upper: u64,
    },
    PhaseInfeasible {
        certificate: PhaseCertificate<T>,
    },
}

impl<T: Int> fmt::Display for Witness<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::IndexOfPrime { index, required } => {
                write!(f, "ind(c) = {index}, required {required}")
            }
            Witness::SecondIterate {
                second,
                degree,
                critical,
                betti,
            } => write!(
                f,
                "ind(c^2) = {second}: w_{degree} >= {critical} > b_{degree} = {betti}"
            ),
            Witness::AverageRelation {
                gamma,
                required,
                actual,
                certificate,
            } => {
                write!(f, "gamma = {gamma}, required alpha = {}", format_ratio(required))?;
                if let Some(a) = actual {
                    write!(f, ", alpha = {}", format_ratio(a))?;
                }
                if let Some(c) = certificate {
                    write!(f, "; {}", c.describe())?;
                }
                Ok(())
            }
            Witness::Prop33 { failure } => f.write_str(failure),
            Witness::MorseFeasibility { degree, w, b, q } => {
                write!(f, "w_{degree} = {w}, b_{degree} = {b}, q_{degree} = {q}")
            }
            Witness::GapBound { m, lower, upper } => write!(
                f,
                "ind(c^{}) - ind(c^{m}) = {} - {lower} > 4",
                m + 2,
                upper
            ),
            Witness::JumpClash { k, lower, upper } => write!(
                f,
                "k = {k}: ind(c^{}) - ind(c^{}) = {} - {lower} = 2 ind(c) > 4",
                2 * k + 1,
                2 * k - 1,
                upper
            ),
            Witness::PhaseInfeasible { certificate } => f.write_str(&certificate.describe()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContradictionReport<T: Int> {
    pub candidate: Candidate<T>,
    pub failed_step: Step,
    pub witness: Witness<T>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<T: Int> {
    Contradicted(ContradictionReport<T>),
    /// No check failed within the scanned horizon. Never a proof of
    /// consistency.
    ConsistentUpToHorizon,
}

impl<T: Int> Verdict<T> {
    pub fn step(&self) -> Option<Step> {
        match self {
            Verdict::Contradicted(r) => Some(r.failed_step),
            Verdict::ConsistentUpToHorizon => None,
        }
    }

    pub fn report(&self) -> Option<&ContradictionReport<T>> {
        match self {
            Verdict::Contradicted(r) => Some(r),
            Verdict::ConsistentUpToHorizon => None,
        }
    }
}

/// `(-1)^{n-1} α/γ` for a single prime geodesic: `2 - 2/n` for even `n`,
/// `2 - 4/(n+1)` for odd `n`.
pub fn average_ratio<T: Int>(n: u64) -> Ratio<T> {
    let n = n as i64;
    if n % 2 == 0 {
        Ratio::new(int(2 * n - 2), int(n))
    } else {
        Ratio::new(int(2 * n - 2), int(n + 1))
    }
}

/// The average index forced on a single prime geodesic with invariant `gamma`.
pub fn required_average<T: Int>(n: u64, gamma: Gamma) -> Ratio<T> {
    let sign = if n % 2 == 1 { 1 } else { -1 };
    gamma.value::<T>() * average_ratio::<T>(n) * Ratio::from_integer(int::<T>(sign))
}

/// Largest degree `K` whose critical-group count is settled by iterates
/// `m ≤ horizon`: `K = ⌊α·horizon⌋ - (n - 1)`.
pub fn morse_window<T: Int>(n: u64, alpha: &Ratio<T>, horizon: u64) -> Option<u64> {
    let top = (alpha * count::<T>(horizon)).floor().to_integer();
    top.to_i64()
        .map(|t| t - (n as i64 - 1))
        .filter(|&k| k >= 0)
        .map(|k| k as u64)
}

fn contradicted<T: Int>(candidate: Candidate<T>, step: Step, witness: Witness<T>) -> Verdict<T> {
    Verdict::Contradicted(ContradictionReport {
        candidate,
        failed_step: step,
        witness,
    })
}

/// Phase-free checks shared by profiles and signatures: `ind(c) = n - 1`
/// and `ind(c²) ≥ n + 1`.
pub(crate) fn index_checks<T: Int>(
    n: u64,
    first: u64,
    second: u64,
    candidate: impl FnOnce() -> Candidate<T>,
) -> Option<Verdict<T>> {
    if first != n - 1 {
        return Some(contradicted(
            candidate(),
            Step::IndexOfPrime,
            Witness::IndexOfPrime {
                index: first,
                required: n - 1,
            },
        ));
    }
    if second < n + 1 {
        // second == n-1: c and c² both land in degree n-1 (|γ| = 1).
        // second == n: c² lands in degree n, where b_n = 0.
        let (degree, critical) = if second == n - 1 { (n - 1, 2) } else { (n, 1) };
        return Some(contradicted(
            candidate(),
            Step::SecondIterate,
            Witness::SecondIterate {
                second,
                degree,
                critical,
                betti: betti_number(n, degree),
            },
        ));
    }
    None
}

/// Runs every check on a candidate profile, scanning iterates up to
/// `horizon` (and `2·horizon + 1` for the jump search).
pub fn single_geodesic_pipeline<T: Int>(
    p: &IndexProfile<T>,
    horizon: u64,
) -> Result<Verdict<T>> {
    let n = p.n();
    if n < 3 {
        return Err(Error::PrecondViolation(format!("need n >= 3, got {n}")));
    }
    if horizon < 3 {
        return Err(Error::PrecondViolation("horizon must be at least 3".into()));
    }
    let bound = 2 * horizon + 1;
    if let Some(d) = p.min_phase_denominator() {
        if d.to_u64().is_some_and(|d| d <= bound) {
            return Err(Error::PrecondViolation(format!(
                "phase denominator {d} must exceed 2·horizon + 1 = {bound}"
            )));
        }
    }
    let candidate = || Candidate::Profile(p.clone());

    let first = p.index_of_iterate(1)?;
    let second = p.index_of_iterate(2)?;
    if let Some(v) = index_checks(n, first, second, candidate) {
        return Ok(v);
    }

    let gamma = Gamma::from_indices(first, second);
    let alpha = p.average_index();
    let required = required_average::<T>(n, gamma);
    if alpha != required {
        return Ok(contradicted(
            candidate(),
            Step::AverageRelation,
            Witness::AverageRelation {
                gamma,
                required,
                actual: Some(alpha),
                certificate: None,
            },
        ));
    }

    let failure = match check_prop33(p, horizon) {
        Ok(r) => r.first_failure().map(str::to_owned),
        Err(Error::HypothesesNotMet(why)) => Some(format!("hypotheses not met: {why}")),
        Err(e) => return Err(e),
    };
    if let Some(failure) = failure {
        return Ok(contradicted(candidate(), Step::Prop33Hypotheses, Witness::Prop33 { failure }));
    }

    if alpha.is_positive() {
        if let Some(window) = morse_window(n, &alpha, horizon) {
            let w = aggregate_w(p, window)?;
            let b = poincare_coefficients(n, window).ranks().to_vec();
            let report = morse_q_recursion(&w, &b)?;
            if let Some(k) = report.first_violation.or_else(|| report.first_nonzero_q()) {
                let k = k as usize;
                return Ok(contradicted(
                    candidate(),
                    Step::MorseFeasibility,
                    Witness::MorseFeasibility {
                        degree: k as u64,
                        w: report.w[k],
                        b: report.b[k],
                        q: report.q[k],
                    },
                ));
            }
        }
    }

    let seq = p.index_sequence(horizon)?;
    for m in 1..=horizon - 2 {
        let (lower, upper) = (seq[m as usize - 1], seq[m as usize + 1]);
        if upper > lower + 4 {
            return Ok(contradicted(
                candidate(),
                Step::GapBound,
                Witness::GapBound { m, lower, upper },
            ));
        }
    }

    if 2 * first > 4 {
        if let Some(&k) = p.jump_search(horizon)?.first() {
            return Ok(contradicted(
                candidate(),
                Step::JumpClash,
                Witness::JumpClash {
                    k,
                    lower: p.index_of_iterate(2 * k - 1)?,
                    upper: p.index_of_iterate(2 * k + 1)?,
                },
            ));
        }
    }

    Ok(Verdict::ConsistentUpToHorizon)
}

impl<T: Int> ContradictionReport<T> {
    /// Re-derives the witness from the candidate with the bott, morse and
    /// homology operations alone. `horizon` and `modulus` must be those of
    /// the run that produced the report.
    pub fn recheck(&self, horizon: u64, modulus: u64) -> bool {
        let sig = self.candidate.signature();
        let n = sig.n;
        match (&self.witness, &self.candidate) {
            (Witness::IndexOfPrime { index, required }, _) => {
                *index == sig.index_of_prime() && *required == n - 1 && index != required
            }
            (
                Witness::SecondIterate {
                    second,
                    degree,
                    critical,
                    betti,
                },
                _,
            ) => {
                let gamma = sig.gamma();
                // iterates 1 and 2 landing in `degree`
                let mut hits = 0;
                if sig.index_of_prime() == *degree && gamma.is_unit() {
                    hits += 1;
                }
                if sig.second_iterate_index() == *degree {
                    hits += 1;
                }
                *second == sig.second_iterate_index()
                    && hits >= *critical
                    && *betti == poincare_coefficients(n, *degree).ranks()[*degree as usize]
                    && critical > betti
            }
            (
                Witness::AverageRelation {
                    gamma,
                    required,
                    actual,
                    certificate,
                },
                candidate,
            ) => {
                let base = *gamma == sig.gamma() && *required == required_average::<T>(n, *gamma);
                match (candidate, actual, certificate) {
                    (Candidate::Profile(p), Some(a), None) => {
                        base && *a == p.average_index() && a != required
                    }
                    (Candidate::Signature(_), None, Some(c)) => {
                        base && certificate_holds(&sig, required, c)
                    }
                    _ => false,
                }
            }
            (Witness::Prop33 { .. }, Candidate::Profile(p)) => {
                !matches!(check_prop33(p, horizon), Ok(r) if r.all_pass())
            }
            (Witness::MorseFeasibility { degree, w, b, q }, Candidate::Profile(p)) => {
                let Ok(ws) = aggregate_w(p, *degree) else {
                    return false;
                };
                let bs = poincare_coefficients(n, *degree).ranks().to_vec();
                let Ok(r) = morse_q_recursion(&ws, &bs) else {
                    return false;
                };
                let k = *degree as usize;
                ws[k] == *w && bs[k] == *b && r.q[k] == *q && *q != 0
            }
            (Witness::GapBound { m, lower, upper }, Candidate::Profile(p)) => {
                p.index_of_iterate(*m) == Ok(*lower)
                    && p.index_of_iterate(m + 2) == Ok(*upper)
                    && *upper > lower + 4
            }
            (Witness::JumpClash { k, lower, upper }, Candidate::Profile(p)) => {
                let first = p.index_of_iterate(1);
                p.index_of_iterate(2 * k - 1) == Ok(*lower)
                    && p.index_of_iterate(2 * k + 1) == Ok(*upper)
                    && first.is_ok_and(|f| upper - lower == 2 * f && 2 * f > 4)
            }
            (Witness::PhaseInfeasible { certificate }, Candidate::Signature(_)) => {
                let required = required_average::<T>(n, sig.gamma());
                certificate.reachable_over_reals()
                    && certificate_holds(&sig, &required, certificate)
                    && matches!(certificate, PhaseCertificate::ForcedPhase { modulus: q, .. } if *q == modulus)
            }
            _ => false,
        }
    }
}

// Independent of the instantiation code path: the average index is affine
// in the phases, so it is evaluated directly at the simplex vertices.
fn certificate_holds<T: Int>(
    sig: &Signature,
    required: &Ratio<T>,
    certificate: &PhaseCertificate<T>,
) -> bool {
    let l = sig.phase_count();
    let half = crate::scalar::ratio::<T>(1, 2);
    let vertex = |k: usize| -> Ratio<T> {
        let phases: Vec<Ratio<T>> = (0..l)
            .map(|j| if j < k { Ratio::from_integer(int(0)) } else { half.clone() })
            .collect();
        IndexProfile::from_parts_unchecked(sig.n, sig.arc_values.clone(), phases, sig.nullities.clone())
            .average_index()
    };
    let values: Vec<Ratio<T>> = (0..=l).map(vertex).collect();
    let lo = values.iter().min().unwrap();
    let hi = values.iter().max().unwrap();
    match certificate {
        PhaseCertificate::NegativeTarget { target } => target == required && required.is_negative(),
        PhaseCertificate::ConstantAverage { forced } => lo == hi && forced == lo && forced != required,
        PhaseCertificate::OutsideRange { lower, upper } => {
            lower == lo && upper == hi && !(lo < required && required < hi)
        }
        PhaseCertificate::ForcedPhase {
            position,
            value,
            modulus,
        } => {
            let slopes = sig.slopes();
            let active: Vec<usize> = (0..l).filter(|&j| slopes[j] != 0).collect();
            let last = Ratio::from_integer(count::<T>(*sig.arc_values.last().unwrap()));
            active == [position - 1]
                && (last + value * Ratio::from_integer(int::<T>(2 * slopes[position - 1]))) == *required
                && !value.denom().is_multiple_of(&count(*modulus))
        }
    }
}
