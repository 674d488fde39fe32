//! Exact integer primitives: sieving, trial-division factorization,
//! prime-power detection, radicals and Chinese remaindering.
//!
//! Values that can grow past a machine word (witness pairs, interval
//! endpoints, CRT moduli) are [`BigUint`]; quantities bounded by the
//! integer under study (primes, decompositions) stay `u64`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// All primes `p < n`, ascending.
pub fn primes_below(n: u64) -> Vec<u64> {
    if n <= 2 {
        return Vec::new();
    }
    let n = usize::try_from(n).expect("sieve bound exceeds address space");
    let mut composite = vec![false; n];
    let mut primes = Vec::new();
    for i in 2..n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j < n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m.is_multiple_of(2) {
        return m == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization of a machine-word integer, `(prime, exponent)` with
/// primes ascending. `small_factors(1)` is empty.
pub fn small_factors(mut m: u64) -> Vec<(u64, u32)> {
    assert!(m >= 1, "cannot factorize zero");
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            let mut e = 0;
            while m.is_multiple_of(d) {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Distinct prime divisors of `m ≥ 1`, ascending.
pub fn distinct_primes(m: u64) -> Vec<u64> {
    small_factors(m).into_iter().map(|(p, _)| p).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: BigUint,
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn value(&self) -> &BigUint {
        &self.value
    }

    /// `(prime, exponent)` pairs, primes strictly increasing.
    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Multiplies the factors back together.
    pub fn reconstruct(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }
}

/// Trial-division factorization of an arbitrary-precision integer.
///
/// Division runs over `BigUint` only until the cofactor fits a `u64`. The
/// cost is proportional to the square root of the second-largest prime
/// factor, which is fine for everything this crate factorizes but not for
/// general-purpose use.
pub fn factorize(m: &BigUint) -> Result<Factorization> {
    if m.is_zero() {
        return Err(Error::FactorizeZero);
    }
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut rem = m.clone();
    let mut d = 2u64;
    while rem.to_u64().is_none() {
        let big_d = BigUint::from(d);
        if &big_d * &big_d > rem {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rem.div_rem(&big_d);
            if !r.is_zero() {
                break;
            }
            rem = q;
            e += 1;
        }
        if e > 0 {
            factors.push((big_d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    match rem.to_u64() {
        Some(small) => {
            // Every divisor below `d` is already stripped.
            for (p, e) in small_factors(small) {
                debug_assert!(p >= d || p == small);
                factors.push((BigUint::from(p), e));
            }
        }
        None => factors.push((rem, 1)),
    }
    Ok(Factorization {
        value: m.clone(),
        factors,
    })
}

/// `Some((q, l))` with `q^l = m` when `m` has exactly one distinct prime
/// factor.
pub fn is_prime_power(m: &BigUint) -> Option<(BigUint, u32)> {
    let f = factorize(m).ok()?;
    match f.factors.as_slice() {
        [(q, l)] => Some((q.clone(), *l)),
        _ => None,
    }
}

/// Machine-word variant of [`is_prime_power`].
pub fn prime_power(m: u64) -> Option<(u64, u32)> {
    if m < 2 {
        return None;
    }
    match small_factors(m).as_slice() {
        [(q, l)] => Some((*q, *l)),
        _ => None,
    }
}

/// Product of the distinct prime factors of `m`; `radical(1) = 1`.
pub fn radical(m: &BigUint) -> Result<BigUint> {
    Ok(factorize(m)?.primes().product())
}

/// A set of congruences `x ≡ r (mod p)` over distinct prime moduli.
///
/// Duplicated equations collapse on construction; two different residues
/// for one modulus are rejected.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CongruenceSystem {
    // Sorted by modulus.
    congruences: Vec<(u64, u64)>,
}

impl CongruenceSystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `x ≡ residue (mod modulus)`. The residue is reduced first.
    pub fn push(&mut self, residue: u64, modulus: u64) -> Result<()> {
        if !is_prime(modulus) {
            return Err(Error::NonPrimeModulus(modulus));
        }
        let residue = residue % modulus;
        match self.congruences.binary_search_by_key(&modulus, |&(_, m)| m) {
            Ok(i) => {
                let existing = self.congruences[i].0;
                if existing != residue {
                    return Err(Error::ConflictingCongruence {
                        modulus,
                        first: existing,
                        second: residue,
                    });
                }
            }
            Err(i) => self.congruences.insert(i, (residue, modulus)),
        }
        Ok(())
    }

    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut sys = Self::new();
        for (r, m) in pairs {
            sys.push(r, m)?;
        }
        Ok(sys)
    }

    /// `(residue, modulus)` pairs ordered by modulus.
    pub fn congruences(&self) -> &[(u64, u64)] {
        &self.congruences
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn modulus(&self) -> BigUint {
        self.congruences
            .iter()
            .map(|&(_, m)| BigUint::from(m))
            .product()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtSolution {
    /// Least non-negative solution.
    pub x: BigUint,
    /// Product of the moduli.
    pub modulus: BigUint,
}

/// Solves the system by folding one congruence at a time into
/// `x ≡ a (mod M)`.
pub fn crt_solve(system: &CongruenceSystem) -> CrtSolution {
    let mut a = BigUint::zero();
    let mut big_m = BigUint::one();
    for &(r, m) in &system.congruences {
        // Want a + M·t ≡ r (mod m)  ⇒  t ≡ (r − a)·M⁻¹ (mod m).
        let a_mod = (&a % m).to_u64().expect("reduced below u64 modulus");
        let m_mod = (&big_m % m).to_u64().expect("reduced below u64 modulus");
        let inv = mod_inverse(m_mod, m).expect("moduli are distinct primes");
        let diff = ((r as u128 + m as u128 - a_mod as u128) % m as u128) as u64;
        let t = mul_mod(diff, inv, m);
        a += &big_m * t;
        big_m *= m;
    }
    CrtSolution {
        x: a,
        modulus: big_m,
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}
