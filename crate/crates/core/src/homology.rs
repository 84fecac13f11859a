//! Rational Betti numbers `b_k` of the pair `(ΛM/S¹, Λ⁰M/S¹)` for a
//! manifold of the rational homotopy type of `Sⁿ`, `n ≥ 3`.
//!
//! Two independent routes are provided: the combinatorial rule
//! ([`betti_number`]) and the coefficients of the Poincaré series
//!
//! ```text
//! n even:  t^{n-1} [ 1/(1-t²) + t^{2n-2}/(1-t^{2n-2}) ]
//! n odd:   t^{n-1} [ 1/(1-t²) + t^{n-1}/(1-t^{n-1}) ]
//! ```
//!
//! expanded by exact long division ([`poincare_coefficients`]).

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::scalar::{int, Int};
use crate::series::{one_minus_power, PowerSeries};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    n: u64,
    ranks: Vec<u64>,
}

fn check_dimension(n: u64) {
    assert!(n >= 3, "loop-space Betti numbers need n >= 3, got {n}");
}

/// `b_k` by rule: nonzero iff `k ≡ n-1 (mod 2)` and `k ≥ n-1`; two at
/// `k = (2j+1)(n-1), j ≥ 1` for even `n`, at `k = j(n-1), j ≥ 2` for odd `n`.
///
/// # Panics
/// If `n < 3`.
pub fn betti_number(n: u64, k: u64) -> u64 {
    check_dimension(n);
    let d = n - 1;
    if k < d || (k - d) % 2 != 0 {
        return 0;
    }
    let double = if n % 2 == 0 {
        k % d == 0 && (k / d) % 2 == 1 && k / d >= 3
    } else {
        k % d == 0 && k / d >= 2
    };
    if double {
        2
    } else {
        1
    }
}

/// Betti numbers up to `max_degree` read off the Poincaré series.
///
/// # Panics
/// If `n < 3`.
pub fn poincare_coefficients(n: u64, max_degree: u64) -> BettiTable {
    check_dimension(n);
    let top = max_degree as usize;
    let d = (n - 1) as usize;
    let one = PowerSeries::monomial(0, top);
    let base = one.div_poly(&one_minus_power(2));
    let period = if n % 2 == 0 { 2 * d } else { d };
    let extra = PowerSeries::monomial(period, top).div_poly(&one_minus_power(period));
    let series = (&base + &extra).shift(d);
    let ranks = series
        .into_coeffs()
        .into_iter()
        .map(|c| u64::try_from(c).expect("Poincaré coefficient negative"))
        .collect();
    BettiTable { n, ranks }
}

impl BettiTable {
    /// The table produced by [`betti_number`] degree by degree.
    pub fn from_rule(n: u64, max_degree: u64) -> Self {
        BettiTable {
            n,
            ranks: (0..=max_degree).map(|k| betti_number(n, k)).collect(),
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn max_degree(&self) -> u64 {
        self.ranks.len() as u64 - 1
    }

    pub fn ranks(&self) -> &[u64] {
        &self.ranks
    }

    pub fn rank(&self, k: u64) -> Option<u64> {
        self.ranks.get(k as usize).copied()
    }

    /// `k,b_k` rows with header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,b_k\n");
        for (k, b) in self.ranks.iter().enumerate() {
            out.push_str(&format!("{k},{b}\n"));
        }
        out
    }
}

/// The pattern of `b_k` repeats with this period from degree
/// [`period_start`] on.
pub fn betti_period(n: u64) -> u64 {
    2 * (n - 1)
}

pub fn period_start(n: u64) -> u64 {
    2 * (n - 1)
}

/// `lim S_N / N` for the alternating partial sums `S_N = Σ_{j≤N} (-1)^j b_j`.
///
/// The sums grow linearly, so the limit is the alternating sum over one
/// period divided by the period length.
///
/// # Panics
/// If `n < 3`.
pub fn average_euler_number<T: Int>(n: u64) -> Ratio<T> {
    check_dimension(n);
    let start = period_start(n);
    let period = betti_period(n);
    let table = poincare_coefficients(n, start + period - 1);
    let mut sum = 0i64;
    for k in start..start + period {
        let b = table.ranks[k as usize] as i64;
        sum += if k % 2 == 0 { b } else { -b };
    }
    Ratio::new(int(sum), int(period as i64))
}
