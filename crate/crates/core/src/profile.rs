//! Index profiles: the spectral data of a closed geodesic from which every
//! iterate index is computed.
//!
//! A profile stores the values `I_1, …, I_{l+1}` of Bott's index function on
//! the arcs of the upper half circle cut out by the rotation phases
//! `0 < t_1 < … < t_l < 1/2`, together with the nullity `N_j` at each phase.
//! `I_1` is the index of the geodesic itself and `I_{l+1}` the value at `-1`.

use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_ratio, ratio, Int};

/// One-sided jumps `(S⁺, S⁻)` of the index function at a phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplittingPair {
    pub plus: u64,
    pub minus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexProfile<T: Int> {
    n: u64,
    arc_values: Vec<u64>,
    phases: Vec<Ratio<T>>,
    nullities: Vec<u64>,
    splitting: Option<Vec<SplittingPair>>,
}

/// A structural invariant a profile fails. Positions are 1-based, matching
/// the `I_j`, `t_j`, `N_j` numbering.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    DimensionTooSmall { n: u64 },
    ArcPhaseLengthMismatch { arcs: usize, phases: usize },
    NullityLengthMismatch { phases: usize, nullities: usize },
    SplittingLengthMismatch { phases: usize, pairs: usize },
    TooManyPhases { phases: usize, max: u64 },
    PhaseOutOfRange { position: usize, phase: String },
    PhasesNotIncreasing { position: usize },
    ZeroNullity { position: usize },
    NullitySumExceeded { sum: u64, max: u64 },
    JumpExceedsNullity { position: usize, jump: u64, nullity: u64 },
    SplittingOutOfRange { position: usize },
    SplittingMismatch { position: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            DimensionTooSmall { n } => write!(f, "dimension n = {n} is below 2"),
            ArcPhaseLengthMismatch { arcs, phases } => write!(
                f,
                "arc/phase length mismatch: {arcs} arc values for {phases} phases (need phases + 1)"
            ),
            NullityLengthMismatch { phases, nullities } => write!(
                f,
                "phase/nullity length mismatch: {phases} phases, {nullities} nullities"
            ),
            SplittingLengthMismatch { phases, pairs } => write!(
                f,
                "phase/splitting length mismatch: {phases} phases, {pairs} splitting pairs"
            ),
            TooManyPhases { phases, max } => {
                write!(f, "too many phases: {phases} > n - 1 = {max}")
            }
            PhaseOutOfRange { position, phase } => {
                write!(f, "phase t_{position} = {phase} outside the open interval (0, 1/2)")
            }
            PhasesNotIncreasing { position } => write!(
                f,
                "phases not strictly increasing: t_{} >= t_{position}",
                position - 1
            ),
            ZeroNullity { position } => write!(f, "nullity N_{position} must be positive"),
            NullitySumExceeded { sum, max } => {
                write!(f, "nullity sum {sum} exceeds n - 1 = {max}")
            }
            JumpExceedsNullity { position, jump, nullity } => write!(
                f,
                "|I_{position} - I_{}| = {jump} exceeds nullity N_{position} = {nullity}",
                position + 1
            ),
            SplittingOutOfRange { position } => write!(
                f,
                "splitting numbers at t_{position} outside [0, N_{position}]"
            ),
            SplittingMismatch { position } => write!(
                f,
                "splitting numbers at t_{position} disagree with I_{position} - I_{}",
                position + 1
            ),
        }
    }
}

impl<T: Int> IndexProfile<T> {
    /// Builds a profile, rejecting it with the first violated invariant.
    pub fn new(
        n: u64,
        arc_values: Vec<u64>,
        phases: Vec<Ratio<T>>,
        nullities: Vec<u64>,
    ) -> Result<Self> {
        Self::from_parts_unchecked(n, arc_values, phases, nullities).checked()
    }

    /// A profile with no unit-circle spectrum: the index function is the
    /// constant `value`.
    pub fn constant(n: u64, value: u64) -> Result<Self> {
        Self::new(n, vec![value], Vec::new(), Vec::new())
    }

    /// Assembles a profile without validation. [`IndexProfile::validate`]
    /// reports what is wrong with it.
    pub fn from_parts_unchecked(
        n: u64,
        arc_values: Vec<u64>,
        phases: Vec<Ratio<T>>,
        nullities: Vec<u64>,
    ) -> Self {
        IndexProfile {
            n,
            arc_values,
            phases,
            nullities,
            splitting: None,
        }
    }

    pub fn with_splitting(mut self, pairs: Vec<SplittingPair>) -> Result<Self> {
        self.splitting = Some(pairs);
        self.checked()
    }

    fn checked(self) -> Result<Self> {
        match self.validate().into_iter().next() {
            Some(v) => Err(Error::InvalidProfile(v)),
            None => Ok(self),
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn arc_values(&self) -> &[u64] {
        &self.arc_values
    }

    pub fn phases(&self) -> &[Ratio<T>] {
        &self.phases
    }

    pub fn nullities(&self) -> &[u64] {
        &self.nullities
    }

    pub fn splitting(&self) -> Option<&[SplittingPair]> {
        self.splitting.as_deref()
    }

    /// Number of phases `l`.
    pub fn phase_count(&self) -> usize {
        self.phases.len()
    }

    /// `I_1`, the index of the prime geodesic.
    pub fn first_arc(&self) -> u64 {
        self.arc_values[0]
    }

    /// `I_{l+1} = I_c(-1)`.
    pub fn last_arc(&self) -> u64 {
        *self.arc_values.last().expect("profile without arcs")
    }

    /// `|I_j - I_{j+1}|` for `j = 1..=l`.
    pub fn jumps(&self) -> impl Iterator<Item = u64> + '_ {
        self.arc_values.windows(2).map(|w| w[0].abs_diff(w[1]))
    }

    /// Every violated structural invariant, in a fixed order. Length
    /// mismatches suppress the element-wise checks that depend on them.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let l = self.phases.len();
        if self.n < 2 {
            out.push(Violation::DimensionTooSmall { n: self.n });
        }
        let arcs_ok = self.arc_values.len() == l + 1;
        if !arcs_ok {
            out.push(Violation::ArcPhaseLengthMismatch {
                arcs: self.arc_values.len(),
                phases: l,
            });
        }
        let nullities_ok = self.nullities.len() == l;
        if !nullities_ok {
            out.push(Violation::NullityLengthMismatch {
                phases: l,
                nullities: self.nullities.len(),
            });
        }
        let max = self.n.saturating_sub(1);
        if l as u64 > max {
            out.push(Violation::TooManyPhases { phases: l, max });
        }

        let half = ratio::<T>(1, 2);
        for (i, t) in self.phases.iter().enumerate() {
            if *t <= Ratio::zero() || *t >= half {
                out.push(Violation::PhaseOutOfRange {
                    position: i + 1,
                    phase: format_ratio(t),
                });
            }
        }
        for (i, w) in self.phases.windows(2).enumerate() {
            if w[0] >= w[1] {
                out.push(Violation::PhasesNotIncreasing { position: i + 2 });
            }
        }

        if nullities_ok {
            for (i, &nu) in self.nullities.iter().enumerate() {
                if nu == 0 {
                    out.push(Violation::ZeroNullity { position: i + 1 });
                }
            }
            let sum: u64 = self.nullities.iter().sum();
            if sum > max {
                out.push(Violation::NullitySumExceeded { sum, max });
            }
            if arcs_ok {
                for (i, (jump, &nullity)) in self.jumps().zip(&self.nullities).enumerate() {
                    if jump > nullity {
                        out.push(Violation::JumpExceedsNullity {
                            position: i + 1,
                            jump,
                            nullity,
                        });
                    }
                }
            }
        }

        if let Some(pairs) = &self.splitting {
            if pairs.len() != l {
                out.push(Violation::SplittingLengthMismatch {
                    phases: l,
                    pairs: pairs.len(),
                });
            } else if arcs_ok && nullities_ok {
                for (i, pair) in pairs.iter().enumerate() {
                    let nu = self.nullities[i];
                    if pair.plus > nu || pair.minus > nu {
                        out.push(Violation::SplittingOutOfRange { position: i + 1 });
                    }
                    let diff = pair.minus as i128 - pair.plus as i128;
                    let arcs = self.arc_values[i] as i128 - self.arc_values[i + 1] as i128;
                    if diff != arcs {
                        out.push(Violation::SplittingMismatch { position: i + 1 });
                    }
                }
            }
        }
        out
    }

    /// Smallest reduced phase denominator, if there are phases. Evaluation at
    /// `j/m` is collision-free whenever `m` is below it.
    pub fn min_phase_denominator(&self) -> Option<&T> {
        self.phases.iter().map(|t| t.denom()).min()
    }
}

/// Free-function form of [`IndexProfile::validate`].
pub fn validate_profile<T: Int>(p: &IndexProfile<T>) -> Vec<Violation> {
    p.validate()
}
