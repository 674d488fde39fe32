use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{check_min, Decomposition};
use crate::numtheory::{distinct_primes, prime_power};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    SameSide,
    DifferentSide,
}

impl Relation {
    pub fn differ(self) -> bool {
        self == Relation::DifferentSide
    }
}

/// A two-prime consequence of one pair of mirrored clauses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryConstraint {
    pub relation: Relation,
    /// Smaller prime.
    pub p: u64,
    /// Larger prime.
    pub q: u64,
    /// Decompositions inducing the constraint, ascending by `n1`.
    pub provenance: Vec<Decomposition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DerivedConstraints {
    /// Ordered by first provenance.
    pub constraints: Vec<BinaryConstraint>,
    /// `Some(q)` when `n − 1` is a power of the prime `q`: the unit clauses
    /// of `1 + (n − 1)` and `(n − 1) + 1` put `q` on both sides.
    pub immediate_unsat: Option<u64>,
}

/// Binary constraints that follow from pairs of clauses with few literals.
///
/// * `n = p^a + q^b` (distinct primes): `p` and `q` share a side, since the
///   two mirrored clauses read `p₁ ∨ q₂` and `q₁ ∨ p₂`.
/// * `n − 1 = q1^a · q2^b`: the clauses of `1 + (n − 1)` and `(n − 1) + 1`
///   read `q1₂ ∨ q2₂` and `q1₁ ∨ q2₁`, so `q1` and `q2` are split.
/// * `n − 1 = q^l`: immediately unsatisfiable.
pub fn derive_binary_constraints(n: u64) -> Result<DerivedConstraints> {
    check_min(n)?;
    let mut by_pair: BTreeMap<(Relation, u64, u64), Vec<Decomposition>> = BTreeMap::new();

    for n1 in 1..n {
        let n2 = n - n1;
        if let (Some((p, _)), Some((q, _))) = (prime_power(n1), prime_power(n2)) {
            if p != q {
                by_pair
                    .entry((Relation::SameSide, p.min(q), p.max(q)))
                    .or_default()
                    .push(Decomposition::new(n1, n2));
            }
        }
    }

    let mut immediate_unsat = None;
    match distinct_primes(n - 1).as_slice() {
        [q] => immediate_unsat = Some(*q),
        &[q1, q2] => {
            by_pair.insert(
                (Relation::DifferentSide, q1, q2),
                vec![Decomposition::new(1, n - 1), Decomposition::new(n - 1, 1)],
            );
        }
        _ => {}
    }

    let mut constraints: Vec<BinaryConstraint> = by_pair
        .into_iter()
        .map(|((relation, p, q), provenance)| BinaryConstraint {
            relation,
            p,
            q,
            provenance,
        })
        .collect();
    constraints.sort_by_key(|c| c.provenance[0].n1);
    Ok(DerivedConstraints {
        constraints,
        immediate_unsat,
    })
}
