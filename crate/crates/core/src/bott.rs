//! Index iteration: Bott's formula `ind(cᵐ) = Σ_{zᵐ=1} I_c(z)` and the
//! quantities derived from it.
//!
//! The index function is conjugation invariant, so only the upper half circle
//! is stored and a root `e(j/m)` with `j > m/2` is folded onto `e((m-j)/m)`.

use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::IndexProfile;
use crate::scalar::{count, floor_u64, format_ratio, from_count, ratio, Int};

/// The invariant `γ_c ∈ {±1/2, ±1}`: positive iff `ind(c)` is even, of
/// magnitude one iff `ind(c²) - ind(c)` is even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gamma {
    PlusOne,
    PlusHalf,
    MinusHalf,
    MinusOne,
}

impl Gamma {
    pub fn from_indices(first: u64, second: u64) -> Gamma {
        let positive = first % 2 == 0;
        let whole = second.abs_diff(first) % 2 == 0;
        match (positive, whole) {
            (true, true) => Gamma::PlusOne,
            (true, false) => Gamma::PlusHalf,
            (false, false) => Gamma::MinusHalf,
            (false, true) => Gamma::MinusOne,
        }
    }

    pub fn is_unit(self) -> bool {
        matches!(self, Gamma::PlusOne | Gamma::MinusOne)
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Gamma::PlusOne | Gamma::PlusHalf)
    }

    pub fn value<T: Int>(self) -> Ratio<T> {
        match self {
            Gamma::PlusOne => ratio(1, 1),
            Gamma::PlusHalf => ratio(1, 2),
            Gamma::MinusHalf => ratio(-1, 2),
            Gamma::MinusOne => ratio(-1, 1),
        }
    }

    pub fn magnitude<T: Int>(self) -> Ratio<T> {
        self.value::<T>().abs()
    }
}

impl fmt::Display for Gamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Gamma::PlusOne => "1",
            Gamma::PlusHalf => "1/2",
            Gamma::MinusHalf => "-1/2",
            Gamma::MinusOne => "-1",
        };
        f.write_str(s)
    }
}

/// One conjugate pair of roots `e(±j/m)` and the arc it falls on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcHit<T: Int> {
    pub phase: Ratio<T>,
    /// 0-based arc id: arc `a` is `(t_a, t_{a+1})` with `t_0 = 0`, `t_{l+1} = 1/2`.
    pub arc: usize,
}

/// `ind(cᵐ)` with the evaluation trail that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterateIndexReport<T: Int> {
    pub m: u64,
    pub index: u64,
    /// Roots `e(j/m)` for `1 <= j < m/2`; each stands for itself and its
    /// conjugate.
    pub arc_hits: Vec<ArcHit<T>>,
    /// `I_c(-1)` when `m` is even, else zero.
    pub even_contribution: u64,
}

impl<T: Int> IterateIndexReport<T> {
    /// The Bott sum rebuilt from the hits alone.
    pub fn recompute(&self, p: &IndexProfile<T>) -> u64 {
        let pairs: u64 = self.arc_hits.iter().map(|h| p.arc_values()[h.arc]).sum();
        p.first_arc() + self.even_contribution + 2 * pairs
    }
}

/// `ind(c^{m+1}) - ind(cᵐ) = A_m + B_m` for a profile with `I_c(-1) = 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapDecomposition {
    pub m: u64,
    /// Contribution of the root `e(m/(2m+2))`, present only for even `m`.
    pub a: i64,
    /// Paired differences `2 Σ_{1≤j<m/2} I(e(j/(m+1))) - I(e(j/m))`.
    pub b: i64,
    /// `{p : p/(m+1) < t_l < p/m, p < m/2}`; at most one element.
    pub crossing: Vec<u64>,
}

impl GapDecomposition {
    pub fn gap(&self) -> i64 {
        self.a + self.b
    }
}

impl<T: Int> IndexProfile<T> {
    /// Value of the index function at `e(t)`, `t ∈ [0, 1/2]`.
    pub fn evaluate(&self, t: &Ratio<T>) -> Result<u64> {
        Ok(self.arc_values()[self.arc_of(t)?])
    }

    /// 0-based id of the arc containing `t`.
    pub fn arc_of(&self, t: &Ratio<T>) -> Result<usize> {
        if t.is_negative() || *t > ratio(1, 2) {
            return Err(Error::OutOfRange(format_ratio(t)));
        }
        match self.phases().binary_search(t) {
            Ok(i) => Err(Error::PhaseCollision {
                index: i + 1,
                point: format_ratio(t),
            }),
            Err(i) => Ok(i),
        }
    }

    /// `ind(cᵐ)` by counting roots per arc: the number of `j ≥ 1` with
    /// `j/m < t_k` is `⌊m t_k⌋` unless `m t_k` is an integer, which is a
    /// collision.
    pub fn index_of_iterate(&self, m: u64) -> Result<u64> {
        if m == 0 {
            return Err(Error::PrecondViolation("iterate m must be positive".into()));
        }
        let arcs = self.arc_values();
        let pairs_total = (m - 1) / 2;
        let mut below = 0u64;
        let mut sum = 0u64;
        for (k, t) in self.phases().iter().enumerate() {
            let x = t * count::<T>(m);
            if x.is_integer() {
                return Err(Error::PhaseCollision {
                    index: k + 1,
                    point: format!("{}/{}", x.to_integer(), m),
                });
            }
            let upto = floor_u64(&x).expect("floor of m·t exceeds u64");
            sum += arcs[k] * (upto - below);
            below = upto;
        }
        sum += self.last_arc() * (pairs_total - below);
        let even = if m % 2 == 0 { self.last_arc() } else { 0 };
        Ok(self.first_arc() + even + 2 * sum)
    }

    /// `ind(cᵐ)` by explicit evaluation at every root `e(j/m)`, `j < m/2`.
    pub fn iterate_index(&self, m: u64) -> Result<IterateIndexReport<T>> {
        if m == 0 {
            return Err(Error::PrecondViolation("iterate m must be positive".into()));
        }
        let mut arc_hits = Vec::with_capacity(((m - 1) / 2) as usize);
        for j in 1..=(m - 1) / 2 {
            let phase = Ratio::new(count(j), count(m));
            let arc = self.arc_of(&phase)?;
            arc_hits.push(ArcHit { phase, arc });
        }
        let even_contribution = if m % 2 == 0 { self.last_arc() } else { 0 };
        let pairs: u64 = arc_hits.iter().map(|h| self.arc_values()[h.arc]).sum();
        Ok(IterateIndexReport {
            m,
            index: self.first_arc() + even_contribution + 2 * pairs,
            arc_hits,
            even_contribution,
        })
    }

    /// `ind(c¹), …, ind(c^max_m)`.
    pub fn index_sequence(&self, max_m: u64) -> Result<Vec<u64>> {
        (1..=max_m).map(|m| self.index_of_iterate(m)).collect()
    }

    /// `α_c = ∫₀¹ I_c(e(t)) dt = 2 Σ_j I_j (t_j - t_{j-1})` with `t_0 = 0`,
    /// `t_{l+1} = 1/2`.
    pub fn average_index(&self) -> Ratio<T> {
        let half = ratio::<T>(1, 2);
        let mut prev = Ratio::zero();
        let mut acc = Ratio::zero();
        for (value, t) in self
            .arc_values()
            .iter()
            .zip(self.phases().iter().chain(std::iter::once(&half)))
        {
            acc = acc + from_count::<T>(*value) * (t - &prev);
            prev = t.clone();
        }
        acc * count::<T>(2)
    }

    pub fn gamma(&self) -> Result<Gamma> {
        let first = self.index_of_iterate(1)?;
        let second = self.index_of_iterate(2)?;
        Ok(Gamma::from_indices(first, second))
    }

    /// Splits `ind(c^{m+1}) - ind(cᵐ)` into the contribution of the new
    /// middle root and the pairwise differences of the remaining roots.
    pub fn gap_decomposition(&self, m: u64) -> Result<GapDecomposition> {
        if m == 0 {
            return Err(Error::PrecondViolation("iterate m must be positive".into()));
        }
        if self.last_arc() != 2 {
            return Err(Error::PrecondViolation(format!(
                "gap decomposition needs I_c(-1) = 2, profile has {}",
                self.last_arc()
            )));
        }
        let eval = |j: u64, d: u64| -> Result<i64> {
            Ok(self.evaluate(&Ratio::new(count(j), count(d)))? as i64)
        };
        let a = if m % 2 == 1 {
            2
        } else {
            2 * eval(m / 2, m + 1)? - 2
        };
        let mut b = 0i64;
        for j in 1..=(m - 1) / 2 {
            b += 2 * (eval(j, m + 1)? - eval(j, m)?);
        }
        let crossing = match self.phases().last() {
            Some(last) => (1..=(m - 1) / 2)
                .filter(|&p| {
                    Ratio::new(count::<T>(p), count(m + 1)) < *last
                        && *last < Ratio::new(count(p), count(m))
                })
                .collect(),
            None => Vec::new(),
        };
        Ok(GapDecomposition { m, a, b, crossing })
    }

    /// All `k ≤ horizon` with `ind(c^{2k+1}) - ind(c^{2k-1}) = 2 ind(c)`.
    pub fn jump_search(&self, horizon: u64) -> Result<Vec<u64>> {
        if !self.average_index().is_positive() {
            return Err(Error::PrecondViolation(
                "jump search needs a positive average index".into(),
            ));
        }
        let bound = 2 * horizon + 1;
        if let Some(d) = self.min_phase_denominator() {
            if d.to_u64().is_some_and(|d| d <= bound) {
                return Err(Error::PrecondViolation(format!(
                    "phase denominator {d} must exceed 2·horizon + 1 = {bound}"
                )));
            }
        }
        let seq = self.index_sequence(bound)?;
        let target = 2 * seq[0];
        Ok((1..=horizon)
            .filter(|&k| seq[(2 * k) as usize] - seq[(2 * k - 2) as usize] == target)
            .collect())
    }

    /// Whether the total variation `Σ |I_{j+1} - I_j|` reaches its maximum
    /// `n - 1`.
    pub fn is_elliptic_extremal(&self) -> bool {
        self.jumps().sum::<u64>() == self.n() - 1
    }

    /// Whether `m` avoids every phase, i.e. `ind(cᵐ)` is defined.
    pub fn is_collision_free(&self, m: u64) -> bool {
        self.phases()
            .iter()
            .all(|t| !(t * count::<T>(m)).is_integer())
    }
}
