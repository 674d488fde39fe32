//! Solver, oracle and refutations checked against a brute-force reading of
//! the definition that shares no code with the library.

use primepart::numtheory::primes_below;
use primepart::partition::{
    contradiction_chain, derive_binary_constraints, enumerate_partitions, enumerate_pp,
    is_prime_partitionable, oracle_decides, replay_chain, solve, verify_partition, Relation,
};
use primepart::{PrimePartition, Side};
use proptest::prelude::*;

fn divides(p: u64, m: u64) -> bool {
    m.is_multiple_of(p)
}

// `one[i]` is true when the i-th prime is on side one.
fn satisfies(n: u64, primes: &[u64], one: &[bool]) -> bool {
    (1..n).all(|n1| {
        primes.iter().zip(one).any(|(&p, &s)| {
            if s {
                divides(p, n1)
            } else {
                divides(p, n - n1)
            }
        })
    })
}

fn brute_force(n: u64) -> Vec<Vec<bool>> {
    let primes = primes_below(n);
    let k = primes.len();
    (0u64..1 << k)
        .map(|mask| (0..k).map(|i| mask >> i & 1 == 0).collect::<Vec<bool>>())
        .filter(|one| one[0] && one.iter().any(|s| !s))
        .filter(|one| satisfies(n, &primes, one))
        .collect()
}

fn as_flags(p: &PrimePartition) -> Vec<bool> {
    p.sides().iter().map(|&s| s == Side::One).collect()
}

fn is_prime(m: u64) -> bool {
    m >= 2
        && (2..m)
            .take_while(|d| d * d <= m)
            .all(|d| !m.is_multiple_of(d))
}

fn omega(m: u64) -> usize {
    (2..=m)
        .filter(|&p| is_prime(p) && m.is_multiple_of(p))
        .count()
}

#[test]
fn oracle_matches_brute_force() {
    for n in 4..=40 {
        let mut want = brute_force(n);
        want.sort_by(|a, b| b.cmp(a));
        let got: Vec<Vec<bool>> = enumerate_partitions(n)
            .unwrap()
            .iter()
            .map(as_flags)
            .collect();
        assert_eq!(got, want, "n = {n}");
    }
}

#[test]
fn solver_matches_oracle_up_to_60() {
    let mismatches: Vec<u64> = (4..=60)
        .filter(|&n| solve(n).unwrap().is_some() != oracle_decides(n).unwrap())
        .collect();
    assert!(mismatches.is_empty(), "{mismatches:?}");
}

#[test]
fn goldbach_pairs_share_a_side() {
    for n in 4..=60 {
        for p in enumerate_partitions(n).unwrap() {
            for q in (2..n).filter(|&q| is_prime(q) && is_prime(n - q)) {
                assert_eq!(p.side_of(q), p.side_of(n - q), "n = {n}, {q} + {}", n - q);
            }
        }
    }
}

#[test]
fn swapping_sides_preserves_satisfaction() {
    for n in 4..=60 {
        let primes = primes_below(n);
        for p in enumerate_partitions(n).unwrap() {
            let flags = as_flags(&p);
            let swapped: Vec<bool> = flags.iter().map(|s| !s).collect();
            assert!(satisfies(n, &primes, &swapped));
            let back = PrimePartition::from_sets(n, &p.p2(), &p.p1()).unwrap();
            assert_eq!(back, p);
        }
    }
}

#[test]
fn derived_constraints_hold_in_every_partition() {
    for n in 4..=60 {
        let derived = derive_binary_constraints(n).unwrap();
        let all = enumerate_partitions(n).unwrap();
        if derived.immediate_unsat.is_some() {
            assert!(all.is_empty(), "n = {n}");
        }
        for p in &all {
            for c in &derived.constraints {
                let same = p.side_of(c.p) == p.side_of(c.q);
                assert_eq!(same, c.relation == Relation::SameSide, "n = {n}: {c:?}");
            }
        }
    }
}

#[test]
fn one_plus_prime_power_is_never_partitionable() {
    let bad: Vec<u64> = (4..=1000)
        .filter(|&n| {
            let m = n - 1;
            omega(m) == 1 && is_prime_partitionable(n)
        })
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn omega_of_predecessor() {
    let found = enumerate_pp(110);
    for &n in found.iter().filter(|&&n| n <= 100) {
        assert_eq!(omega(n - 1), 2, "n = {n}");
    }
    let first_three = found.iter().copied().find(|&n| omega(n - 1) >= 3);
    assert_eq!(first_three, Some(106));
    assert!(is_prime_partitionable(196));
}

#[test]
fn refutations_replay() {
    for n in 4..=300 {
        if is_prime_partitionable(n) {
            assert!(contradiction_chain(n).is_err());
            continue;
        }
        if let Some(chain) = contradiction_chain(n).unwrap() {
            assert!(replay_chain(n, &chain), "n = {n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solver_matches_oracle_beyond_60(n in 61u64..=80) {
        prop_assert_eq!(solve(n).unwrap().is_some(), oracle_decides(n).unwrap());
    }

    #[test]
    fn solver_answers_satisfy_definition(n in 4u64..600) {
        if let Some(p) = solve(n).unwrap() {
            prop_assert!(verify_partition(&p));
            prop_assert!(satisfies(n, p.primes(), &as_flags(&p)));
            prop_assert_eq!(p.side_of(2), Some(Side::One));
        }
    }

    #[test]
    fn random_assignments_agree_with_brute_force(n in 4u64..120, seed in any::<u64>()) {
        let primes = primes_below(n);
        let flags: Vec<bool> = (0..primes.len()).map(|i| i == 0 || seed >> (i % 64) & 1 == 0).collect();
        let p1: Vec<u64> = primes.iter().zip(&flags).filter(|(_, &s)| s).map(|(&p, _)| p).collect();
        let p2: Vec<u64> = primes.iter().zip(&flags).filter(|(_, &s)| !s).map(|(&p, _)| p).collect();
        prop_assume!(!p2.is_empty());
        let p = PrimePartition::from_sets(n, &p1, &p2).unwrap();
        prop_assert_eq!(verify_partition(&p), satisfies(n, &primes, &flags));
    }
}
