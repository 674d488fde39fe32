//! Exhaustive reference search: every assignment with 2 on side one is
//! tested against every clause using bitmasks. Shares nothing with the
//! solver beyond prime listing and factorization.

use super::{check_min, PrimePartition, Side};
use crate::numtheory::{distinct_primes, primes_below};
use crate::{Error, Result};

/// Largest prime count the exhaustive search accepts (2^25 assignments).
pub const EXHAUSTIVE_PRIME_LIMIT: usize = 26;

struct Masks {
    primes: Vec<u64>,
    // (primes dividing n1, primes dividing n2) per decomposition.
    clauses: Vec<(u32, u32)>,
}

fn masks(n: u64) -> Result<Masks> {
    check_min(n)?;
    let primes = primes_below(n);
    if primes.len() > EXHAUSTIVE_PRIME_LIMIT {
        return Err(Error::ExhaustiveBound {
            n,
            primes: primes.len(),
            cutoff: EXHAUSTIVE_PRIME_LIMIT,
        });
    }
    let mask_of = |m: u64| -> u32 {
        distinct_primes(m)
            .into_iter()
            .map(|p| 1u32 << primes.binary_search(&p).unwrap())
            .fold(0, |a, b| a | b)
    };
    let mut clauses: Vec<(u32, u32)> = (1..n).map(|n1| (mask_of(n1), mask_of(n - n1))).collect();
    clauses.sort_unstable();
    clauses.dedup();
    // Clauses with fewer literals fail sooner.
    clauses.sort_by_key(|&(a, b)| (a.count_ones() + b.count_ones(), a, b));
    Ok(Masks { primes, clauses })
}

impl Masks {
    fn full(&self) -> u32 {
        ((1u64 << self.primes.len()) - 1) as u32
    }

    /// Bit `i` of the result is set when prime `i` is on side two. Counter
    /// `t` enumerates side vectors of primes 1.. in lexicographic order.
    fn two_mask(&self, t: u32) -> u32 {
        let k = self.primes.len();
        (1..k)
            .filter(|&i| t >> (k - 1 - i) & 1 == 1)
            .fold(0, |m, i| m | (1 << i))
    }

    fn satisfied(&self, two: u32) -> bool {
        let one = self.full() & !two;
        self.clauses
            .iter()
            .all(|&(m1, m2)| m1 & one != 0 || m2 & two != 0)
    }

    fn assignments(&self) -> impl Iterator<Item = u32> + '_ {
        let k = self.primes.len();
        // t = 0 leaves side two empty.
        (1..(1u32 << (k - 1))).map(move |t| self.two_mask(t))
    }
}

/// Every canonical satisfying partition of the primes below `n`, ordered
/// lexicographically by side vector.
pub fn enumerate_partitions(n: u64) -> Result<Vec<PrimePartition>> {
    let m = masks(n)?;
    let found = m
        .assignments()
        .filter(|&two| m.satisfied(two))
        .map(|two| {
            let sides = (0..m.primes.len())
                .map(|i| {
                    if two >> i & 1 == 1 {
                        Side::Two
                    } else {
                        Side::One
                    }
                })
                .collect();
            PrimePartition::from_parts(n, m.primes.clone(), sides).expect("both parts nonempty")
        })
        .collect();
    Ok(found)
}

/// Whether any assignment satisfies every clause; stops at the first hit.
pub fn oracle_decides(n: u64) -> Result<bool> {
    let m = masks(n)?;
    let found = m.assignments().any(|two| m.satisfied(two));
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixteen_has_two_partitions() {
        let all = enumerate_partitions(16).unwrap();
        let shown: Vec<String> = all.iter().map(|p| p.to_string()).collect();
        assert_eq!(
            shown,
            vec!["{2, 3, 7, 13} | {5, 11}", "{2, 5, 11} | {3, 7, 13}"]
        );
    }

    #[test]
    fn no_partitions() {
        assert!(enumerate_partitions(4).unwrap().is_empty());
        assert!(enumerate_partitions(52).unwrap().is_empty());
        assert!(!oracle_decides(52).unwrap());
        assert!(oracle_decides(22).unwrap());
    }

    #[test]
    fn bound_is_enforced() {
        // 26 primes below 102, 27 below 104.
        assert!(masks(102).is_ok());
        assert_eq!(
            enumerate_partitions(104).unwrap_err(),
            Error::ExhaustiveBound {
                n: 104,
                primes: 27,
                cutoff: 26
            }
        );
    }
}
