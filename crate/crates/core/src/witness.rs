//! Witness pairs for the gcd characterization.
//!
//! A pair `(n1, n2)` with `gcd(n1, n2) = d` *witnesses* `d` when every
//! split `d = d1 + d2` (both positive) has `gcd(n1, d1) ≠ 1` or
//! `gcd(n2, d2) ≠ 1`. Writing `n1 = d·k1`, `n2 = d·k2`, the cofactors are
//! coprime; only their primes below `d` matter.
//!
//! ```
//! use num_bigint::BigUint;
//! use primepart::witness::{verify_witness, WitnessPair};
//!
//! let pair = WitnessPair::new(16, BigUint::from(880u32), BigUint::from(4368u32)).unwrap();
//! assert!(verify_witness(&pair).unwrap());
//! ```

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::numtheory::primes_below;
use crate::partition::{verify_partition, PrimePartition, Side, MIN_N};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WitnessPair {
    pub d: u64,
    pub n1: BigUint,
    pub n2: BigUint,
}

impl WitnessPair {
    /// Checks `d ≥ 2` and `gcd(n1, n2) = d`.
    pub fn new(d: u64, n1: BigUint, n2: BigUint) -> Result<Self> {
        let pair = Self { d, n1, n2 };
        pair.check_shape()?;
        Ok(pair)
    }

    fn check_shape(&self) -> Result<()> {
        let gcd = self.n1.gcd(&self.n2);
        if self.d < 2 || gcd != BigUint::from(self.d) {
            return Err(Error::WitnessShape { d: self.d, gcd });
        }
        Ok(())
    }

    /// `n1 / d`.
    pub fn k1(&self) -> BigUint {
        &self.n1 / self.d
    }

    /// `n2 / d`.
    pub fn k2(&self) -> BigUint {
        &self.n2 / self.d
    }
}

fn shares_factor(n: &BigUint, m: u64) -> bool {
    let r = (n % m).to_u64().expect("remainder below a u64 modulus");
    r.gcd(&m) != 1
}

/// Whether the pair witnesses its `d`. Errors when `gcd(n1, n2) ≠ d`.
pub fn verify_witness(pair: &WitnessPair) -> Result<bool> {
    pair.check_shape()?;
    let d = pair.d;
    Ok((1..d).all(|d1| shares_factor(&pair.n1, d1) || shares_factor(&pair.n2, d - d1)))
}

fn require_witness(pair: &WitnessPair) -> Result<()> {
    if verify_witness(pair)? {
        Ok(())
    } else {
        Err(Error::NotAWitness(pair.d))
    }
}

/// `(d, d·k1, d·k2)` where `k_j` multiplies the primes of part `j` that do
/// not divide `d`.
pub fn witness_from_partition(partition: &PrimePartition) -> Result<WitnessPair> {
    let d = partition.n();
    if !verify_partition(partition) {
        return Err(Error::UnsatisfiedPartition(d));
    }
    let k = |side: Side| -> BigUint {
        partition
            .part(side)
            .into_iter()
            .filter(|p| !d.is_multiple_of(*p))
            .map(BigUint::from)
            .product()
    };
    let pair = WitnessPair::new(d, k(Side::One) * d, k(Side::Two) * d)?;
    debug_assert!(verify_witness(&pair).unwrap());
    Ok(pair)
}

/// Recovers a partition of the primes below `d`.
///
/// The pair is enriched first so every prime below `d` divides `n1` or
/// `n2`. Side one gets every prime of `n1` below `d`, side two the primes
/// of `n2 / d` below `d` that are left.
pub fn partition_from_witness(pair: &WitnessPair) -> Result<PrimePartition> {
    if pair.d < MIN_N {
        return Err(Error::TooSmall {
            n: pair.d,
            min: MIN_N,
        });
    }
    let pair = enrich_witness(pair)?;
    let k2 = pair.k2();
    let primes = primes_below(pair.d);
    let mut sides = Vec::with_capacity(primes.len());
    for &p in &primes {
        if (&pair.n1 % p).is_zero() {
            sides.push(Side::One);
        } else if (&k2 % p).is_zero() {
            sides.push(Side::Two);
        } else {
            unreachable!("enrichment covers every prime below d");
        }
    }
    let partition = PrimePartition::from_parts(pair.d, primes, sides)?;
    if !verify_partition(&partition) {
        return Err(Error::UnsatisfiedPartition(pair.d));
    }
    Ok(partition)
}

/// `d` times the primes below `d` that do not divide `n1`; the result forms
/// a pair with `n1` whose gcd is `d`.
pub fn complete_partner(d: u64, n1: &BigUint) -> Result<BigUint> {
    if d < 2 {
        return Err(Error::TooSmall { n: d, min: 2 });
    }
    if !(n1 % d).is_zero() || n1.is_zero() {
        return Err(Error::NotMultiple { d, n1: n1.clone() });
    }
    let k: BigUint = primes_below(d)
        .into_iter()
        .filter(|&p| !(n1 % p).is_zero())
        .map(BigUint::from)
        .product();
    Ok(k * d)
}

/// Reduces each cofactor to the product of its distinct primes that are
/// below `d` and coprime to `d`. Idempotent.
pub fn normalize_witness(pair: &WitnessPair) -> Result<WitnessPair> {
    require_witness(pair)?;
    let d = pair.d;
    let primes: Vec<u64> = primes_below(d)
        .into_iter()
        .filter(|p| !d.is_multiple_of(*p))
        .collect();
    let reduce = |k: BigUint| -> BigUint {
        primes
            .iter()
            .filter(|&&p| (&k % p).is_zero())
            .map(|&p| BigUint::from(p))
            .product()
    };
    let out = WitnessPair::new(d, reduce(pair.k1()) * d, reduce(pair.k2()) * d)?;
    debug_assert!(verify_witness(&out).unwrap());
    Ok(out)
}

/// Multiplies every prime below `d` that divides neither `n1` nor `n2`
/// into `n1`.
pub fn enrich_witness(pair: &WitnessPair) -> Result<WitnessPair> {
    require_witness(pair)?;
    let missing: BigUint = primes_below(pair.d)
        .into_iter()
        .filter(|&p| !(&pair.n1 % p).is_zero() && !(&pair.n2 % p).is_zero())
        .map(BigUint::from)
        .product();
    if missing.is_one() {
        return Ok(pair.clone());
    }
    WitnessPair::new(pair.d, &pair.n1 * missing, pair.n2.clone())
}
