//! Critical groups of the iterates of a single prime geodesic and the Morse
//! inequalities `w_k = b_k + q_k + q_{k-1}` against the loop-space Betti
//! numbers.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::IndexProfile;
use crate::scalar::{count, Int};

/// `dim C̄_k(cᵐ)`: one exactly in degree `ind(cᵐ)`, and only when `m` is
/// even or `γ_c = ±1`.
pub fn critical_group_dim<T: Int>(p: &IndexProfile<T>, m: u64, k: u64) -> Result<u64> {
    let index = p.index_of_iterate(m)?;
    let counts = m % 2 == 0 || p.gamma()?.is_unit();
    Ok(u64::from(counts && k == index))
}

/// Iterates beyond this bound have index above `max_degree`, since
/// `ind(cᵐ) ≥ m α_c - (n - 1)`.
pub fn iterate_cutoff<T: Int>(p: &IndexProfile<T>, max_degree: u64) -> Result<u64> {
    let alpha = p.average_index();
    if !alpha.is_positive() {
        return Err(Error::PrecondViolation(
            "critical-group aggregation needs a positive average index".into(),
        ));
    }
    let bound = num_rational::Ratio::from_integer(count::<T>(max_degree + p.n() - 1)) / alpha;
    Ok(bound.ceil().to_integer().to_u64().expect("iterate cutoff exceeds u64"))
}

/// `w_k = Σ_m w_k(cᵐ)` for `k = 0..=max_degree`.
pub fn aggregate_w<T: Int>(p: &IndexProfile<T>, max_degree: u64) -> Result<Vec<u64>> {
    let cutoff = iterate_cutoff(p, max_degree)?;
    aggregate_w_upto(p, max_degree, cutoff)
}

/// [`aggregate_w`] with an explicit iterate range `1..=last_iterate`.
/// Any `last_iterate` at or beyond [`iterate_cutoff`] gives the same table.
pub fn aggregate_w_upto<T: Int>(
    p: &IndexProfile<T>,
    max_degree: u64,
    last_iterate: u64,
) -> Result<Vec<u64>> {
    let unit = p.gamma()?.is_unit();
    let mut w = vec![0u64; max_degree as usize + 1];
    for m in 1..=last_iterate {
        let index = p.index_of_iterate(m)?;
        if index <= max_degree && (m % 2 == 0 || unit) {
            w[index as usize] += 1;
        }
    }
    Ok(w)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorseReport {
    pub max_degree: u64,
    pub w: Vec<u64>,
    pub b: Vec<u64>,
    pub q: Vec<i64>,
    pub feasible: bool,
    pub first_violation: Option<u64>,
    /// Feasibility is only established on `0..=max_degree`.
    pub tail_unchecked: bool,
}

impl MorseReport {
    /// Whether the report is feasible with `q ≡ 0`, i.e. `w = b` on the window.
    pub fn is_perfect(&self) -> bool {
        self.feasible && self.q.iter().all(|&q| q == 0)
    }

    /// First degree with `q_k ≠ 0`.
    pub fn first_nonzero_q(&self) -> Option<u64> {
        self.q.iter().position(|&q| q != 0).map(|k| k as u64)
    }

    /// `k,w_k,b_k,q_k` rows with header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,w_k,b_k,q_k\n");
        for k in 0..self.w.len() {
            out.push_str(&format!("{k},{},{},{}\n", self.w[k], self.b[k], self.q[k]));
        }
        out
    }
}

/// Solves `w_k = b_k + q_k + q_{k-1}` for `q` with `q_{-1} = 0`.
pub fn morse_q_recursion(w: &[u64], b: &[u64]) -> Result<MorseReport> {
    if w.len() != b.len() {
        return Err(Error::PrecondViolation(format!(
            "w has {} degrees, b has {}",
            w.len(),
            b.len()
        )));
    }
    if w.is_empty() {
        return Err(Error::PrecondViolation("empty degree window".into()));
    }
    let mut q = Vec::with_capacity(w.len());
    let mut prev = 0i64;
    for (wk, bk) in w.iter().zip(b) {
        let qk = *wk as i64 - *bk as i64 - prev;
        q.push(qk);
        prev = qk;
    }
    let first_violation = q.iter().position(|&x| x < 0).map(|k| k as u64);
    Ok(MorseReport {
        max_degree: w.len() as u64 - 1,
        w: w.to_vec(),
        b: b.to_vec(),
        feasible: first_violation.is_none(),
        first_violation,
        q,
        tail_unchecked: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::poincare_coefficients;
    use crate::scalar::ratio;

    fn running() -> IndexProfile<i64> {
        IndexProfile::new(
            4,
            vec![3, 2, 1, 2],
            vec![ratio(10, 97), ratio(13, 97), ratio(31, 97)],
            vec![1, 1, 1],
        )
        .unwrap()
    }

    #[test]
    fn critical_groups() {
        assert_eq!(critical_group_dim(&running(), 3, 7), Ok(1));
        assert_eq!(critical_group_dim(&running(), 3, 5), Ok(0));
        // ind = 2, ind(c²) = 5: γ = +1/2
        let half = IndexProfile::<i64>::new(4, vec![2, 3], vec![ratio(1, 11)], vec![1]).unwrap();
        assert_eq!(half.index_of_iterate(2), Ok(5));
        assert_eq!(critical_group_dim(&half, 1, 2), Ok(0));
        assert_eq!(critical_group_dim(&half, 2, 5), Ok(1));
    }

    #[test]
    fn aggregate_examples() {
        let w = aggregate_w(&running(), 7).unwrap();
        assert_eq!(w, vec![0, 0, 0, 1, 0, 1, 0, 2]);
        let two = IndexProfile::<i64>::constant(3, 2).unwrap();
        assert_eq!(aggregate_w(&two, 6).unwrap(), vec![0, 0, 1, 0, 1, 0, 1]);
        assert_eq!(aggregate_w(&running(), 2).unwrap(), vec![0, 0, 0]);
        let zero = IndexProfile::<i64>::constant(3, 0).unwrap();
        assert!(aggregate_w(&zero, 4).is_err());
    }

    #[test]
    fn recursion_examples() {
        let b = poincare_coefficients(4, 12).ranks().to_vec();
        let r = morse_q_recursion(&b, &b).unwrap();
        assert!(r.feasible && r.is_perfect());

        let w = aggregate_w(&running(), 8).unwrap();
        let b = poincare_coefficients(4, 8).ranks().to_vec();
        let r = morse_q_recursion(&w, &b).unwrap();
        assert_eq!(r.q[7], 1);
        assert_eq!(r.q[8], -1);
        assert_eq!(r.first_violation, Some(8));
        assert!(!r.feasible);

        let r = morse_q_recursion(&[0, 0, 0], &[0, 0, 1]).unwrap();
        assert_eq!(r.first_violation, Some(2));
        assert!(morse_q_recursion(&[0], &[0, 1]).is_err());
    }

    #[test]
    fn csv_rows() {
        let r = morse_q_recursion(&[1, 0], &[0, 0]).unwrap();
        assert_eq!(r.to_csv(), "k,w_k,b_k,q_k\n0,1,0,1\n1,0,0,-1\n");
    }
}
