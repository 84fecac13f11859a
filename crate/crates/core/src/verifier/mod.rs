//! Finite contradiction search over single-geodesic candidates.
//!
//! Every signature of a dimension is given the average index forced by its
//! `γ` invariant, phases are placed over a prime denominator, and the
//! resulting profile is run through [`single_geodesic_pipeline`].

mod instantiate;
mod pipeline;
mod prop33;
mod signature;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::document::ProfileDocument;
use crate::error::{Error, Result};
use crate::scalar::{is_prime, Int};

pub use instantiate::{phase_instantiate, reachable_averages, PhaseCertificate, PhaseOutcome};
pub use pipeline::{
    average_ratio, morse_window, required_average, single_geodesic_pipeline, Candidate,
    ContradictionReport, Step, Verdict, Witness,
};
pub use prop33::{check_prop33, extremal_profile, is_staircase, parity_gamma, Prop33Report};
pub use signature::{enumerate_signatures, for_each_signature, Signature, ENUMERABLE_DIMENSIONS};

/// Defaults for quick runs.
pub const DEFAULT_HORIZON: u64 = 200;
pub const DEFAULT_MODULUS: u64 = 499;

fn check_run(n: u64, horizon: u64, modulus: u64) -> Result<()> {
    if !ENUMERABLE_DIMENSIONS.contains(&n) {
        return Err(Error::PrecondViolation(format!("need 3 <= n <= 8, got {n}")));
    }
    if horizon < 3 {
        return Err(Error::PrecondViolation("horizon must be at least 3".into()));
    }
    if !is_prime(modulus) {
        return Err(Error::PrecondViolation(format!("Q = {modulus} is not prime")));
    }
    if modulus <= 2 * horizon + 1 {
        return Err(Error::PrecondViolation(format!(
            "Q = {modulus} must exceed 2·horizon + 1 = {}",
            2 * horizon + 1
        )));
    }
    Ok(())
}

/// Verdict for one signature: phase-free index checks, then phase placement
/// at the forced average index, then the full pipeline.
pub fn assess_signature<T: Int>(sig: &Signature, horizon: u64, modulus: u64) -> Result<Verdict<T>> {
    let n = sig.n;
    let candidate = || Candidate::Signature(sig.clone());
    if let Some(v) = pipeline::index_checks(
        n,
        sig.index_of_prime(),
        sig.second_iterate_index(),
        candidate,
    ) {
        return Ok(v);
    }
    let gamma = sig.gamma();
    let required = required_average::<T>(n, gamma);
    match phase_instantiate(sig, &required, modulus)? {
        PhaseOutcome::Realized(p) => single_geodesic_pipeline(&p, horizon),
        PhaseOutcome::Infeasible(certificate) => {
            let (step, witness) = if certificate.reachable_over_reals() {
                (Step::PhaseInfeasible, Witness::PhaseInfeasible { certificate })
            } else {
                (
                    Step::AverageRelation,
                    Witness::AverageRelation {
                        gamma,
                        required,
                        actual: None,
                        certificate: Some(certificate),
                    },
                )
            };
            Ok(Verdict::Contradicted(ContradictionReport {
                candidate: candidate(),
                failed_step: step,
                witness,
            }))
        }
    }
}

/// Outcome of a full run for one dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub n: u64,
    pub horizon: u64,
    #[serde(rename = "Q")]
    pub modulus: u64,
    pub candidates: u64,
    pub contradicted: u64,
    pub by_step: BTreeMap<Step, u64>,
    /// Instantiated profiles no check refuted. Must be empty.
    pub survivors: Vec<ProfileDocument>,
    /// Per-candidate failures, as `signature: message`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<String>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.survivors.is_empty() && self.errors.is_empty() && self.contradicted == self.candidates
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summaries always serialize")
    }
}

/// Every signature of dimension `n` with its verdict, in enumeration order.
pub fn verify_candidates<T: Int>(
    n: u64,
    horizon: u64,
    modulus: u64,
) -> Result<Vec<(Signature, Result<Verdict<T>>)>> {
    check_run(n, horizon, modulus)?;
    let signatures = enumerate_signatures(n)?;
    Ok(signatures
        .into_par_iter()
        .map(|s| {
            let v = assess_signature::<T>(&s, horizon, modulus);
            (s, v)
        })
        .collect())
}

/// Runs every candidate of dimension `n` and tallies the verdicts.
/// Big-integer phases keep the placement arithmetic overflow-free.
pub fn verify_theorem(n: u64, horizon: u64, modulus: u64) -> Result<Summary> {
    let results = verify_candidates::<BigInt>(n, horizon, modulus)?;
    let mut summary = Summary {
        n,
        horizon,
        modulus,
        candidates: results.len() as u64,
        contradicted: 0,
        by_step: BTreeMap::new(),
        survivors: Vec::new(),
        errors: Vec::new(),
    };
    for (sig, verdict) in results {
        match verdict {
            Ok(Verdict::Contradicted(r)) => {
                summary.contradicted += 1;
                *summary.by_step.entry(r.failed_step).or_insert(0) += 1;
            }
            Ok(Verdict::ConsistentUpToHorizon) => {
                let required = required_average::<BigInt>(n, sig.gamma());
                let doc = match phase_instantiate(&sig, &required, modulus) {
                    Ok(PhaseOutcome::Realized(p)) => ProfileDocument::from_profile(&p),
                    _ => unreachable!("survivors are always instantiated"),
                };
                summary.survivors.push(doc);
            }
            Err(e) => summary.errors.push(format!(
                "I={:?} N={:?}: {e}",
                sig.arc_values, sig.nullities
            )),
        }
    }
    Ok(summary)
}

/// Outcome of checking the structure proposition over a search space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop33Sweep {
    pub n: u64,
    pub horizon: u64,
    /// Instantiated profiles examined.
    pub profiles: u64,
    /// Profiles on which the hypotheses held.
    pub in_scope: u64,
    /// Documents of in-scope profiles failing a conclusion, with the failure.
    pub exceptions: Vec<(ProfileDocument, String)>,
}

/// Average-index targets tried for one signature: the forced value, plus
/// interior points of the reachable interval at quarters.
pub fn sweep_targets<T: Int>(sig: &Signature) -> Vec<Ratio<T>> {
    let mut out = vec![required_average::<T>(sig.n, sig.gamma())];
    let (lo, hi) = reachable_averages::<T>(sig);
    if lo < hi {
        for i in 1..=3 {
            let w = crate::scalar::ratio::<T>(i, 4);
            out.push(lo.clone() + (hi.clone() - lo.clone()) * w);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Instantiates every signature of dimension `n` at each of
/// [`sweep_targets`] and checks the proposition's conclusions on those
/// satisfying its hypotheses, scanning iterates up to `horizon`.
pub fn prop33_sweep(n: u64, horizon: u64, modulus: u64) -> Result<Prop33Sweep> {
    check_run(n, horizon, modulus)?;
    let signatures = enumerate_signatures(n)?;
    type Tally = (u64, u64, Vec<(ProfileDocument, String)>);
    let per: Vec<Result<Tally>> = signatures
        .par_iter()
        .map(|sig| {
            let (mut profiles, mut in_scope, mut bad) = (0, 0, Vec::new());
            for target in sweep_targets::<BigInt>(sig) {
                let PhaseOutcome::Realized(p) = phase_instantiate(sig, &target, modulus)? else {
                    continue;
                };
                profiles += 1;
                match check_prop33(&p, horizon) {
                    Ok(r) => {
                        in_scope += 1;
                        if let Some(f) = r.first_failure() {
                            bad.push((ProfileDocument::from_profile(&p), f.to_owned()));
                        }
                    }
                    Err(Error::HypothesesNotMet(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            Ok((profiles, in_scope, bad))
        })
        .collect();
    let mut sweep = Prop33Sweep {
        n,
        horizon,
        profiles: 0,
        in_scope: 0,
        exceptions: Vec::new(),
    };
    for r in per {
        let (p, s, bad) = r?;
        sweep.profiles += p;
        sweep.in_scope += s;
        sweep.exceptions.extend(bad);
    }
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_sphere_has_no_survivors() {
        let s = verify_theorem(3, 40, 83).unwrap();
        assert!(s.passed(), "{}", s.to_json());
        assert_eq!(s.by_step.values().sum::<u64>(), s.candidates);
    }

    #[test]
    fn run_parameters_checked() {
        assert!(verify_theorem(3, 200, 401).is_err());
        assert!(verify_theorem(3, 200, 403).is_err());
        assert!(verify_theorem(9, 10, 499).is_err());
    }

    #[test]
    fn summary_keys() {
        let s = verify_theorem(3, 10, 23).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s.to_json()).unwrap();
        for key in ["n", "horizon", "Q", "candidates", "contradicted", "by_step", "survivors"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}
