#![allow(dead_code)]

use closed_geodesic::{IndexProfile, Profile, Rational};
use num_rational::Ratio;

pub fn running() -> Profile {
    IndexProfile::new(
        4,
        vec![3, 2, 1, 2],
        vec![Ratio::new(10, 97), Ratio::new(13, 97), Ratio::new(31, 97)],
        vec![1, 1, 1],
    )
    .unwrap()
}

/// A valid profile built deterministically from `seeds`, with phases
/// `j/den` for an odd prime `den`.
pub fn build_profile(n: u64, seeds: &[u64], den: i64) -> Profile {
    let mut it = seeds.iter().copied().cycle();
    let mut next = move || it.next().unwrap();
    let l = (next() % n) as usize;
    let half = (den - 1) / 2;
    let l = l.min(half as usize);
    let mut budget = n - 1;
    let mut nullities = Vec::with_capacity(l);
    for j in 0..l {
        let later = (l - j - 1) as u64;
        let max = budget - later;
        let nu = 1 + next() % max;
        budget -= nu;
        nullities.push(nu);
    }
    let mut arcs = vec![next() % (2 * n)];
    for &nu in &nullities {
        let prev = *arcs.last().unwrap() as i64;
        let lo = -(nu.min(prev as u64) as i64);
        let span = (nu as i64 - lo + 1) as u64;
        let delta = lo + (next() % span) as i64;
        arcs.push((prev + delta) as u64);
    }
    let mut nums: Vec<i64> = Vec::new();
    while nums.len() < l {
        let v = 1 + (next() % half as u64) as i64;
        if !nums.contains(&v) {
            nums.push(v);
        } else {
            // deterministic fallback: first free numerator
            let free = (1..=half).find(|x| !nums.contains(x)).unwrap();
            nums.push(free);
        }
    }
    nums.sort();
    let phases: Vec<Rational> = nums.iter().map(|&v| Ratio::new(v, den)).collect();
    IndexProfile::new(n, arcs, phases, nullities).unwrap()
}

/// `I_c(e(t))` for `t ∈ [0, 1)` by a linear scan over the arcs, folding the
/// lower half circle onto the upper by conjugation.
pub fn naive_evaluate(p: &Profile, t: Rational) -> Option<u64> {
    let half = Ratio::new(1, 2);
    let s = if t > half { Ratio::from_integer(1) - t } else { t };
    let phases = p.phases();
    let mut arc = 0;
    for (j, ph) in phases.iter().enumerate() {
        if s == *ph {
            return None;
        }
        if s > *ph {
            arc = j + 1;
        }
    }
    Some(p.arc_values()[arc])
}

/// `ind(cᵐ) = Σ_{j=0}^{m-1} I_c(e(j/m))` summed over every root.
pub fn naive_iterate(p: &Profile, m: u64) -> Option<u64> {
    let mut total = 0;
    for j in 0..m as i64 {
        total += naive_evaluate(p, Ratio::new(j, m as i64))?;
    }
    Some(total)
}
