//! Erdős–Woods intervals: runs of consecutive integers `[e1, e1 + w]` in
//! which every element shares a prime with one of the two endpoints.
//!
//! For an interior point `k = e1 + j` we have `gcd(k, e1) = gcd(j, e1)` and
//! `gcd(k, e2) = gcd(w − j, e2)`, so verification only ever reduces the
//! endpoints modulo numbers below `w`.
//!
//! ```
//! use num_bigint::BigUint;
//! use primepart::erdoswoods::{min_interval_start, verify_interval, EWInterval};
//!
//! let iv = EWInterval::new(BigUint::from(2184u32), 16).unwrap();
//! assert!(verify_interval(&iv));
//! assert_eq!(min_interval_start(16, 10_000), Some(2184));
//! ```

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::numtheory::{crt_solve, primes_below, CongruenceSystem};
use crate::partition::{verify_partition, PrimePartition, Side, MIN_N};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EWInterval {
    pub e1: BigUint,
    pub w: u64,
}

impl EWInterval {
    /// Requires `e1 ≥ 2` and `w ≥ 1`.
    pub fn new(e1: BigUint, w: u64) -> Result<Self> {
        if e1 < BigUint::from(2u32) {
            return Err(Error::InvalidInterval(format!("e1 = {e1} is below 2")));
        }
        if w == 0 {
            return Err(Error::InvalidInterval("width must be positive".into()));
        }
        Ok(Self { e1, w })
    }

    pub fn e2(&self) -> BigUint {
        &self.e1 + self.w
    }
}

fn shares_factor(n: &BigUint, m: u64) -> bool {
    (n % m).to_u64().expect("remainder below u64").gcd(&m) != 1
}

/// Whether every interior point shares a prime with `e1` or `e2`.
pub fn verify_interval(interval: &EWInterval) -> bool {
    let w = interval.w;
    let e2 = interval.e2();
    (1..w).all(|j| shares_factor(&interval.e1, j) || shares_factor(&e2, w - j))
}

fn covered_u64(e1: u64, w: u64) -> bool {
    let e2 = e1 + w;
    (1..w).all(|j| (e1 % j).gcd(&j) != 1 || (e2 % (w - j)).gcd(&(w - j)) != 1)
}

/// The prime chosen for one interior offset `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Selected {
    pub j: u64,
    pub prime: u64,
    /// `One` when `prime | j`, `Two` when `prime | n − j`.
    pub side: Side,
}

/// One prime per offset `1 ≤ j < n`, taken from the side that satisfies
/// the clause of `(j, n − j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSelection {
    pub n: u64,
    pub choices: Vec<Selected>,
}

impl PrimeSelection {
    /// `e1 ≡ −j (mod p_j)` for every offset, duplicates merged.
    pub fn congruences(&self) -> Result<CongruenceSystem> {
        let mut sys = CongruenceSystem::new();
        for c in &self.choices {
            sys.push((c.prime - c.j % c.prime) % c.prime, c.prime)?;
        }
        Ok(sys)
    }
}

/// For each `j`, the smallest prime of side one dividing `j`, or else the
/// smallest prime of side two dividing `n − j`.
pub fn select_primes(partition: &PrimePartition) -> Result<PrimeSelection> {
    let n = partition.n();
    let p1 = partition.p1();
    let p2 = partition.p2();
    let choices = (1..n)
        .map(|j| {
            p1.iter()
                .find(|&&p| j % p == 0)
                .map(|&prime| Selected {
                    j,
                    prime,
                    side: Side::One,
                })
                .or_else(|| {
                    p2.iter()
                        .find(|&&p| (n - j).is_multiple_of(p))
                        .map(|&prime| Selected {
                            j,
                            prime,
                            side: Side::Two,
                        })
                })
                .ok_or(Error::UnsatisfiedPartition(n))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PrimeSelection { n, choices })
}

/// Solves the covering congruences of [`select_primes`] by CRT. The least
/// solution is lifted by the modulus when it is 0 or 1.
pub fn interval_from_partition(partition: &PrimePartition) -> Result<EWInterval> {
    let selection = select_primes(partition)?;
    let crt = crt_solve(&selection.congruences()?);
    let mut e1 = crt.x;
    if e1 < BigUint::from(2u32) {
        e1 += crt.modulus;
    }
    let interval = EWInterval::new(e1, partition.n())?;
    if !verify_interval(&interval) {
        return Err(Error::UncoveredInterval {
            e1: interval.e1,
            w: interval.w,
        });
    }
    Ok(interval)
}

/// Side one takes the primes below `w` dividing `e1`, side two those
/// dividing `e2` only; primes dividing neither go to side one.
pub fn partition_from_interval(interval: &EWInterval) -> Result<PrimePartition> {
    let w = interval.w;
    if w < MIN_N {
        return Err(Error::TooSmall { n: w, min: MIN_N });
    }
    if !verify_interval(interval) {
        return Err(Error::UncoveredInterval {
            e1: interval.e1.clone(),
            w,
        });
    }
    let e2 = interval.e2();
    let primes = primes_below(w);
    let sides = primes
        .iter()
        .map(|&p| {
            if (&interval.e1 % p).is_zero() {
                Side::One
            } else if (&e2 % p).is_zero() {
                Side::Two
            } else {
                Side::One
            }
        })
        .collect();
    let partition = PrimePartition::from_parts(w, primes, sides)?;
    if !verify_partition(&partition) {
        return Err(Error::UnsatisfiedPartition(w));
    }
    Ok(partition)
}

/// Smallest `e1` in `[2, bound]` starting a covered interval of width `w`.
/// Candidates are scanned in parallel; the answer does not depend on the
/// thread count.
pub fn min_interval_start(w: u64, bound: u64) -> Option<u64> {
    if w == 0 || bound < 2 {
        return None;
    }
    (2..=bound)
        .into_par_iter()
        .find_first(|&e1| covered_u64(e1, w))
}
