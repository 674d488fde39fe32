//! Prime partitionable numbers and the two equivalent characterizations:
//! gcd witness pairs and Erdős–Woods intervals.
//!
//! An integer `n` is *prime partitionable* when the primes below `n` can be
//! split into two nonempty parts `P1`, `P2` such that every decomposition
//! `n = n1 + n2` (with `n1, n2 ≥ 1`) has a prime of `P1` dividing `n1` or a
//! prime of `P2` dividing `n2`.
//!
//! ```
//! use primepart::partition::{is_prime_partitionable, solve, verify_partition};
//!
//! assert!(!is_prime_partitionable(52));
//! let p = solve(16).unwrap().expect("16 is prime partitionable");
//! assert!(verify_partition(&p));
//! ```
//!
//! The crate is organised by characterization:
//!
//! * [`numtheory`] – sieving, factorization, radicals and CRT.
//! * [`partition`] – clauses, the propagating solver, the exhaustive oracle
//!   and human-readable refutations.
//! * [`witness`] – gcd witness pairs `(d, n1, n2)` and their normal forms.
//! * [`erdoswoods`] – intervals `[e1, e1 + w]` covered by their endpoints.
//! * [`certify`] – self-contained JSON certificates tying the three together.

pub mod certify;
pub mod erdoswoods;
mod error;
pub mod numtheory;
pub mod partition;
pub mod witness;

pub use error::{Error, Result};
pub use partition::{PrimePartition, Side};
