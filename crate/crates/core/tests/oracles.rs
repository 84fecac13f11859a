mod common;

use closed_geodesic::verifier::{
    enumerate_signatures, verify_candidates, verify_theorem, Signature, Step, Verdict,
};
use closed_geodesic::{BigInt, Error, IndexProfile};
use common::{build_profile, naive_evaluate, naive_iterate, running};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn naive_bott_sum_matches_running_profile() {
    let p = running();
    for m in 1..97 {
        assert_eq!(naive_iterate(&p, m), Some(p.index_of_iterate(m).unwrap()), "m = {m}");
    }
    assert_eq!(naive_iterate(&p, 97), None);
    assert!(matches!(p.index_of_iterate(97), Err(Error::PhaseCollision { .. })));
}

#[test]
fn naive_evaluation_matches_arc_lookup() {
    let p = running();
    for j in 0..=97 * 2 {
        let t = Ratio::new(j, 97 * 4);
        let fast = p.evaluate(&t).ok();
        assert_eq!(fast, naive_evaluate(&p, t), "t = {t}");
    }
}

#[test]
fn explicit_report_matches_naive_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let n = rng.gen_range(3..=8);
        let seeds: Vec<u64> = (0..16).map(|_| rng.gen()).collect();
        let p = build_profile(n, &seeds, 211);
        for m in [1u64, 2, 3, 17, 64, 210] {
            let r = p.iterate_index(m).unwrap();
            assert_eq!(Some(r.index), naive_iterate(&p, m));
            assert_eq!(r.recompute(&p), r.index);
        }
    }
}

// Unfiltered product of every length, arc vector and nullity vector,
// filtered afterwards by the structural invariants.
fn brute_force_signatures(n: u64) -> Vec<Signature> {
    fn product(len: usize, lo: u64, hi: u64) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (lo..=hi).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }
    let mut out = Vec::new();
    for l in 0..n as usize {
        for arcs in product(l + 1, 0, 2 * (n - 1)) {
            for nul in product(l, 1, n - 1) {
                if let Ok(s) = Signature::new(n, arcs.clone(), nul) {
                    out.push(s);
                }
            }
        }
    }
    out
}

#[test]
fn enumeration_matches_brute_force() {
    for n in [3, 4] {
        assert_eq!(enumerate_signatures(n).unwrap(), brute_force_signatures(n), "n = {n}");
    }
}

#[test]
fn signature_counts() {
    let counts: Vec<usize> = (3..=6).map(|n| enumerate_signatures(n).unwrap().len()).collect();
    assert_eq!(counts, vec![72, 456, 2684, 15064]);
}

#[test]
fn running_profile_first_jump() {
    let p = running();
    let ks = p.jump_search(40).unwrap();
    let expected: Vec<u64> = (1..=40)
        .filter(|&k| {
            let hi = naive_iterate(&p, 2 * k + 1).unwrap();
            let lo = naive_iterate(&p, 2 * k - 1).unwrap();
            hi - lo == 6
        })
        .collect();
    assert_eq!(ks, expected);
    assert_eq!(ks[0], 4);
}

#[test]
fn constant_profile_jumps_everywhere() {
    let p = IndexProfile::<i64>::constant(5, 3).unwrap();
    assert_eq!(p.jump_search(25).unwrap(), (1..=25).collect::<Vec<_>>());
}

fn histogram(n: u64) -> Vec<(Step, u64)> {
    verify_theorem(n, 200, 499).unwrap().by_step.into_iter().collect()
}

#[test]
fn verify_regression_histograms() {
    use Step::*;
    assert_eq!(histogram(3), vec![(IndexOfPrime, 54), (SecondIterate, 6), (AverageRelation, 12)]);
    assert_eq!(
        histogram(4),
        vec![(IndexOfPrime, 374), (SecondIterate, 14), (AverageRelation, 66), (MorseFeasibility, 2)]
    );
    assert_eq!(
        histogram(5),
        vec![(IndexOfPrime, 2310), (SecondIterate, 32), (AverageRelation, 338), (MorseFeasibility, 4)]
    );
    assert_eq!(
        histogram(6),
        vec![(IndexOfPrime, 13358), (SecondIterate, 72), (AverageRelation, 1626), (MorseFeasibility, 8)]
    );
}

#[test]
fn every_witness_rechecks() {
    for n in 3..=5 {
        for (sig, v) in verify_candidates::<BigInt>(n, 60, 127).unwrap() {
            match v.unwrap() {
                Verdict::Contradicted(r) => assert!(r.recheck(60, 127), "{sig:?}: {:?}", r.witness),
                Verdict::ConsistentUpToHorizon => panic!("survivor {sig:?}"),
            }
        }
    }
}

#[test]
fn verdicts_are_deterministic() {
    let a = verify_theorem(5, 100, 211).unwrap();
    let b = verify_theorem(5, 100, 211).unwrap();
    assert_eq!(a.to_json(), b.to_json());
}
