//! Structure of a geodesic with `ind(c) = n-1`, `ind(c²) ≥ n` and
//! `α_c < 2|γ_c|`: such a geodesic has `γ_c = (-1)^{n-1}`, `α_c > 1`,
//! `ind(c²) = n+1`, a strictly decreasing staircase
//! `n-1 = I_1 > I_2 > … > I_l = 1` followed by `I_{l+1} = 2`, and a
//! non-decreasing index sequence.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::bott::Gamma;
use crate::error::{Error, Result};
use crate::profile::IndexProfile;
use crate::scalar::{format_ratio, Int};

/// Pass/fail for each conclusion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop33Report {
    pub gamma_matches_parity: bool,
    pub average_above_one: bool,
    pub second_iterate_is_n_plus_one: bool,
    pub staircase: bool,
    /// Iterates `1..=horizon` were compared pairwise.
    pub horizon: u64,
    /// First `m` with `ind(c^{m+1}) < ind(cᵐ)`, if any.
    pub first_decrease: Option<u64>,
}

impl Prop33Report {
    pub fn part_a(&self) -> bool {
        self.gamma_matches_parity && self.average_above_one && self.second_iterate_is_n_plus_one
    }

    pub fn part_b(&self) -> bool {
        self.staircase
    }

    pub fn part_c(&self) -> bool {
        self.first_decrease.is_none()
    }

    pub fn all_pass(&self) -> bool {
        self.part_a() && self.part_b() && self.part_c()
    }

    /// First failing conclusion, for diagnostics.
    pub fn first_failure(&self) -> Option<&'static str> {
        if !self.gamma_matches_parity {
            Some("(a) gamma != (-1)^(n-1)")
        } else if !self.average_above_one {
            Some("(a) average index <= 1")
        } else if !self.second_iterate_is_n_plus_one {
            Some("(a) ind(c^2) != n+1")
        } else if !self.staircase {
            Some("(b) arc values are not the staircase n-1 > ... > 1, 2")
        } else if self.first_decrease.is_some() {
            Some("(c) index sequence decreases")
        } else {
            None
        }
    }
}

/// Parity-matched sign: `+1` for odd `n`, `-1` for even `n`.
pub fn parity_gamma(n: u64) -> Gamma {
    if n % 2 == 1 {
        Gamma::PlusOne
    } else {
        Gamma::MinusOne
    }
}

/// Arc values `n-1 > I_2 > … > I_l = 1`, `I_{l+1} = 2`.
pub fn is_staircase(n: u64, arcs: &[u64]) -> bool {
    let l = arcs.len() - 1;
    l >= 1
        && arcs[0] == n - 1
        && arcs[l - 1] == 1
        && arcs[l] == 2
        && arcs[..l].windows(2).all(|w| w[0] > w[1])
}

/// Checks the hypotheses exactly and, when they hold, every conclusion with
/// part (c) scanned over iterates `1..=horizon`.
pub fn check_prop33<T: Int>(p: &IndexProfile<T>, horizon: u64) -> Result<Prop33Report> {
    let n = p.n();
    let first = p.index_of_iterate(1)?;
    let second = p.index_of_iterate(2)?;
    let gamma = Gamma::from_indices(first, second);
    let alpha = p.average_index();
    if first != n - 1 {
        return Err(Error::HypothesesNotMet(format!("ind(c) = {first} != n-1 = {}", n - 1)));
    }
    if second < n {
        return Err(Error::HypothesesNotMet(format!("ind(c^2) = {second} < n = {n}")));
    }
    let bound = gamma.magnitude::<T>() * Ratio::from_integer(crate::scalar::int(2));
    if alpha >= bound {
        return Err(Error::HypothesesNotMet(format!(
            "average index {} >= 2|gamma| = {}",
            format_ratio(&alpha),
            format_ratio(&bound)
        )));
    }

    let seq = p.index_sequence(horizon.max(2))?;
    let first_decrease = seq
        .windows(2)
        .position(|w| w[1] < w[0])
        .map(|i| i as u64 + 1);
    Ok(Prop33Report {
        gamma_matches_parity: gamma == parity_gamma(n),
        average_above_one: alpha > Ratio::from_integer(crate::scalar::int(1)),
        second_iterate_is_n_plus_one: second == n + 1,
        staircase: is_staircase(n, p.arc_values()),
        horizon,
        first_decrease,
    })
}

/// The unit-step staircase profile `I = (n-1, n-2, …, 1, 2)`, `N = (1, …, 1)`.
pub fn extremal_profile<T: Int>(n: u64, phases: Vec<Ratio<T>>) -> Result<IndexProfile<T>> {
    if n < 3 {
        return Err(Error::PrecondViolation(format!("need n >= 3, got {n}")));
    }
    if phases.len() as u64 != n - 1 {
        return Err(Error::PrecondViolation(format!(
            "need n-1 = {} phases, got {}",
            n - 1,
            phases.len()
        )));
    }
    let mut arcs: Vec<u64> = (1..n).rev().collect();
    arcs.push(2);
    IndexProfile::new(n, arcs, phases, vec![1; (n - 1) as usize])
        .map_err(|e| Error::PrecondViolation(format!("malformed phases: {e}")))
}
