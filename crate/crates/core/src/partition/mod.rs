//! Two-colourings of the primes below `n` and the clause system they must
//! satisfy.
//!
//! Every ordered decomposition `n = n1 + n2` with `n1, n2 ≥ 1` yields one
//! [`Clause`]: "some prime dividing `n1` is on side one, or some prime
//! dividing `n2` is on side two". A [`PrimePartition`] satisfying all `n − 1`
//! clauses certifies that `n` is prime partitionable.

pub(crate) mod chain;
mod constraints;
mod oracle;
mod parity;
mod solver;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::numtheory::{distinct_primes, primes_below};
use crate::{Error, Result};

pub use chain::{contradiction_chain, replay_chain, Step, StepKind};
pub use constraints::{derive_binary_constraints, BinaryConstraint, DerivedConstraints, Relation};
pub use oracle::{enumerate_partitions, oracle_decides, EXHAUSTIVE_PRIME_LIMIT};
pub use parity::{ParityConflict, ParityUnionFind};
pub use solver::{enumerate_pp, is_prime_partitionable, solve, solve_with_stats, SolveStats};

/// Smallest integer that can be prime partitionable: below 4 there is at
/// most one prime, so no two-part split exists.
pub const MIN_N: u64 = 4;

pub(crate) fn check_min(n: u64) -> Result<()> {
    if n < MIN_N {
        return Err(Error::TooSmall { n, min: MIN_N });
    }
    Ok(())
}

/// Which part of the partition a prime belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    One,
    Two,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::One => Side::Two,
            Side::Two => Side::One,
        }
    }

    pub fn label(self) -> u8 {
        match self {
            Side::One => 1,
            Side::Two => 2,
        }
    }
}

/// A split `{P1, P2}` of all primes below `n` into two nonempty parts,
/// stored with 2 on side one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimePartition {
    n: u64,
    primes: Vec<u64>,
    sides: Vec<Side>,
}

impl PrimePartition {
    /// Builds a partition from its two parts, in either orientation.
    pub fn from_sets(n: u64, p1: &[u64], p2: &[u64]) -> Result<Self> {
        let primes = primes_below(n);
        let mut sides = Vec::with_capacity(primes.len());
        for &p in &primes {
            let side = match (p1.contains(&p), p2.contains(&p)) {
                (true, false) => Side::One,
                (false, true) => Side::Two,
                (true, true) => {
                    return Err(Error::InvalidPartition(format!("{p} is in both parts")))
                }
                (false, false) => {
                    return Err(Error::InvalidPartition(format!("{p} is in neither part")))
                }
            };
            sides.push(side);
        }
        if let Some(stray) = p1
            .iter()
            .chain(p2)
            .find(|q| primes.binary_search(q).is_err())
        {
            return Err(Error::InvalidPartition(format!(
                "{stray} is not a prime below {n}"
            )));
        }
        Self::from_sides(n, sides)
    }

    /// Builds a partition from one side per prime of `primes_below(n)`.
    pub fn from_sides(n: u64, sides: Vec<Side>) -> Result<Self> {
        check_min(n)?;
        let primes = primes_below(n);
        if sides.len() != primes.len() {
            return Err(Error::InvalidPartition(format!(
                "expected {} sides, got {}",
                primes.len(),
                sides.len()
            )));
        }
        Self::from_parts(n, primes, sides)
    }

    pub(crate) fn from_parts(n: u64, primes: Vec<u64>, mut sides: Vec<Side>) -> Result<Self> {
        if !(sides.contains(&Side::One) && sides.contains(&Side::Two)) {
            return Err(Error::InvalidPartition("one part is empty".into()));
        }
        if sides[0] == Side::Two {
            sides.iter_mut().for_each(|s| *s = s.flip());
        }
        Ok(Self { n, primes, sides })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// The primes below `n`, ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Sides aligned with [`primes`](Self::primes).
    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn side_of(&self, p: u64) -> Option<Side> {
        self.primes.binary_search(&p).ok().map(|i| self.sides[i])
    }

    pub fn part(&self, side: Side) -> Vec<u64> {
        self.primes
            .iter()
            .zip(&self.sides)
            .filter(|&(_, &s)| s == side)
            .map(|(&p, _)| p)
            .collect()
    }

    pub fn p1(&self) -> Vec<u64> {
        self.part(Side::One)
    }

    pub fn p2(&self) -> Vec<u64> {
        self.part(Side::Two)
    }
}

/// Lexicographic on the side vector (side one before side two).
impl Ord for PrimePartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.sides.cmp(&other.sides))
    }
}

impl PartialOrd for PrimePartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn fmt_set(f: &mut fmt::Formatter<'_>, set: &[u64]) -> fmt::Result {
    f.write_str("{")?;
    for (i, p) in set.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{p}")?;
    }
    f.write_str("}")
}

impl fmt::Display for PrimePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_set(f, &self.p1())?;
        f.write_str(" | ")?;
        fmt_set(f, &self.p2())
    }
}

/// An ordered decomposition `n = n1 + n2` with both parts positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decomposition {
    pub n1: u64,
    pub n2: u64,
}

impl Decomposition {
    pub fn new(n1: u64, n2: u64) -> Self {
        assert!(n1 >= 1 && n2 >= 1, "decomposition parts must be positive");
        Self { n1, n2 }
    }

    pub fn n(&self) -> u64 {
        self.n1 + self.n2
    }

    pub fn swapped(&self) -> Self {
        Self {
            n1: self.n2,
            n2: self.n1,
        }
    }

    /// The orientation with `n1 ≤ n2`.
    pub fn unordered(&self) -> Self {
        if self.n1 <= self.n2 {
            *self
        } else {
            self.swapped()
        }
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}", self.n1, self.n2)
    }
}

/// The disjunction required by one decomposition: `(p, One)` for each prime
/// `p | n1` and `(p, Two)` for each prime `p | n2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub decomposition: Decomposition,
    /// Sorted by `(prime, side)`.
    pub literals: Vec<(u64, Side)>,
}

impl Clause {
    pub fn for_decomposition(decomposition: Decomposition) -> Self {
        let mut literals: Vec<(u64, Side)> = distinct_primes(decomposition.n1)
            .into_iter()
            .map(|p| (p, Side::One))
            .chain(
                distinct_primes(decomposition.n2)
                    .into_iter()
                    .map(|p| (p, Side::Two)),
            )
            .collect();
        literals.sort_unstable();
        Self {
            decomposition,
            literals,
        }
    }

    pub fn is_satisfied_by(&self, partition: &PrimePartition) -> bool {
        self.literals
            .iter()
            .any(|&(p, s)| partition.side_of(p) == Some(s))
    }

    /// True when some prime appears with both sides, i.e. divides `n`.
    pub fn is_tautology(&self) -> bool {
        self.literals.windows(2).any(|w| w[0].0 == w[1].0)
    }
}

/// One clause per ordered decomposition, `n1 = 1, …, n − 1`.
pub fn clauses_for(n: u64) -> Result<Vec<Clause>> {
    check_min(n)?;
    Ok((1..n)
        .map(|n1| Clause::for_decomposition(Decomposition::new(n1, n - n1)))
        .collect())
}

/// Checks every decomposition clause of `partition.n()`.
pub fn verify_partition(partition: &PrimePartition) -> bool {
    let n = partition.n;
    if n < MIN_N {
        return false;
    }
    // side[p] for each p < n; None for composites.
    let mut side = vec![None; n as usize];
    for (&p, &s) in partition.primes.iter().zip(&partition.sides) {
        side[p as usize] = Some(s);
    }
    let factors: Vec<Vec<u64>> = (0..n)
        .map(|m| {
            if m == 0 {
                Vec::new()
            } else {
                distinct_primes(m)
            }
        })
        .collect();
    (1..n).all(|n1| {
        let n2 = n - n1;
        factors[n1 as usize]
            .iter()
            .any(|&p| side[p as usize] == Some(Side::One))
            || factors[n2 as usize]
                .iter()
                .any(|&p| side[p as usize] == Some(Side::Two))
    })
}

/// Primes below `n` with a dense index, plus every clause rewritten over
/// prime indices. Shared by the solver, the oracle and the refuter.
#[derive(Debug, Clone)]
pub(crate) struct ClauseSet {
    pub n: u64,
    pub primes: Vec<u64>,
    /// `clauses[j - 1]` belongs to the decomposition `(j, n − j)`.
    pub clauses: Vec<Vec<(usize, Side)>>,
}

impl ClauseSet {
    pub fn new(n: u64) -> Self {
        let primes = primes_below(n);
        let mut index = vec![usize::MAX; n as usize];
        for (i, &p) in primes.iter().enumerate() {
            index[p as usize] = i;
        }
        let factors: Vec<Vec<usize>> = (0..n)
            .map(|m| {
                if m == 0 {
                    Vec::new()
                } else {
                    distinct_primes(m)
                        .into_iter()
                        .map(|p| index[p as usize])
                        .collect()
                }
            })
            .collect();
        let clauses = (1..n)
            .map(|j| {
                let mut lits: Vec<(usize, Side)> = factors[j as usize]
                    .iter()
                    .map(|&i| (i, Side::One))
                    .chain(factors[(n - j) as usize].iter().map(|&i| (i, Side::Two)))
                    .collect();
                lits.sort_unstable();
                lits
            })
            .collect();
        Self { n, primes, clauses }
    }

    pub fn index_of(&self, p: u64) -> Option<usize> {
        self.primes.binary_search(&p).ok()
    }

    pub fn clause(&self, n1: u64) -> &[(usize, Side)] {
        &self.clauses[(n1 - 1) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lits(c: &Clause) -> Vec<(u64, u8)> {
        c.literals.iter().map(|&(p, s)| (p, s.label())).collect()
    }

    #[test]
    fn clause_examples() {
        let c6 = clauses_for(6).unwrap();
        assert_eq!(c6.len(), 5);
        assert_eq!(lits(&c6[0]), vec![(5, 2)]);
        assert_eq!(lits(&c6[4]), vec![(5, 1)]);

        let c52 = clauses_for(52).unwrap();
        let mut a = lits(&c52[24]);
        a.sort_by_key(|&(p, s)| (s, p));
        assert_eq!(c52[24].decomposition, Decomposition::new(25, 27));
        assert_eq!(a, vec![(5, 1), (3, 2)]);
        let mut b = lits(&c52[26]);
        b.sort_by_key(|&(p, s)| (s, p));
        assert_eq!(b, vec![(3, 1), (5, 2)]);

        let c16 = clauses_for(16).unwrap();
        assert_eq!(c16.len(), 15);
        assert_eq!(lits(&c16[1]), vec![(2, 1), (2, 2), (7, 2)]);
        assert!(c16[1].is_tautology());
    }

    #[test]
    fn clauses_reject_small_n() {
        assert_eq!(clauses_for(3), Err(Error::TooSmall { n: 3, min: 4 }));
    }

    #[test]
    fn verify_examples() {
        let a = PrimePartition::from_sets(16, &[2, 5, 11], &[3, 7, 13]).unwrap();
        let b = PrimePartition::from_sets(16, &[2, 3, 7, 13], &[5, 11]).unwrap();
        let c = PrimePartition::from_sets(16, &[2], &[3, 5, 7, 11, 13]).unwrap();
        assert!(verify_partition(&a));
        assert!(verify_partition(&b));
        assert!(!verify_partition(&c));
        // Agrees with clause-by-clause evaluation.
        for p in [&a, &b, &c] {
            let by_clause = clauses_for(16)
                .unwrap()
                .iter()
                .all(|cl| cl.is_satisfied_by(p));
            assert_eq!(by_clause, verify_partition(p));
        }
    }

    #[test]
    fn from_sets_canonicalizes_and_validates() {
        let p = PrimePartition::from_sets(16, &[3, 7, 13], &[2, 5, 11]).unwrap();
        assert_eq!(p.p1(), vec![2, 5, 11]);
        assert_eq!(p.to_string(), "{2, 5, 11} | {3, 7, 13}");
        assert!(PrimePartition::from_sets(16, &[2, 3, 5, 7, 11, 13], &[]).is_err());
        assert!(PrimePartition::from_sets(16, &[2, 3], &[5, 7, 11]).is_err());
        assert!(PrimePartition::from_sets(16, &[2, 3, 4], &[5, 7, 11, 13]).is_err());
        assert!(PrimePartition::from_sets(16, &[2, 3, 5], &[5, 7, 11, 13]).is_err());
        assert!(PrimePartition::from_sides(3, vec![Side::One]).is_err());
    }
}
