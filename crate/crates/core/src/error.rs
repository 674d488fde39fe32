use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot factorize zero")]
    FactorizeZero,

    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),

    #[error("conflicting congruences modulo {modulus}: residues {first} and {second}")]
    ConflictingCongruence {
        modulus: u64,
        first: u64,
        second: u64,
    },

    #[error("n = {n} is too small: at least {min} is required")]
    TooSmall { n: u64, min: u64 },

    #[error("n = {n} has {primes} primes below it; exhaustive search is limited to {cutoff}")]
    ExhaustiveBound {
        n: u64,
        primes: usize,
        cutoff: usize,
    },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition of the primes below {0} violates a decomposition clause")]
    UnsatisfiedPartition(u64),

    #[error("{0} is prime partitionable, so no refutation exists")]
    PrimePartitionable(u64),

    #[error("gcd(n1, n2) = {gcd}, expected d = {d}")]
    WitnessShape { d: u64, gcd: BigUint },

    #[error("d = {d} does not divide {n1}")]
    NotMultiple { d: u64, n1: BigUint },

    #[error("pair (n1, n2) is not a witness for d = {0}")]
    NotAWitness(u64),

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("interval [{e1}, {e1} + {w}] is not covered by its endpoints")]
    UncoveredInterval { e1: BigUint, w: u64 },

    #[error("malformed certificate: {0}")]
    Certificate(String),
}
