//! Self-contained certificates.
//!
//! A positive certificate carries a partition, the witness pair built from
//! it and the Erdős–Woods interval built from it, each re-checked by its own
//! verifier and converted back to a partition. A negative certificate
//! carries a propagation refutation when one exists and otherwise a marker
//! that the verdict rests on complete search.
//!
//! Large integers are written as decimal strings so no JSON reader loses
//! precision.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::erdoswoods::{
    interval_from_partition, partition_from_interval, verify_interval, EWInterval,
};
use crate::partition::{
    chain, check_min, oracle_decides, replay_chain, solve, verify_partition, PrimePartition, Step,
    StepKind, EXHAUSTIVE_PRIME_LIMIT,
};
use crate::witness::{partition_from_witness, verify_witness, witness_from_partition, WitnessPair};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    PrimePartitionable,
    NotPrimePartitionable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionRecord {
    pub p1: Vec<u64>,
    pub p2: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub d: String,
    pub n1: String,
    pub n2: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalRecord {
    pub e1: String,
    pub w: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

impl Check {
    fn new(name: &str, pass: bool) -> Self {
        Self {
            name: name.to_owned(),
            pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub solver: String,
    pub branch_order: String,
    pub canonical_side_of_2: u8,
    pub enrichment_side: String,
    pub prime_selection: String,
    pub exhaustive_prime_limit: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            solver: "dpll-two-watched-literals+parity-union-find".into(),
            branch_order: "primes-descending".into(),
            canonical_side_of_2: 1,
            enrichment_side: "n1".into(),
            prime_selection: "smallest-side-one-then-side-two".into(),
            exhaustive_prime_limit: EXHAUSTIVE_PRIME_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub version: String,
    pub config: SolverConfig,
}

impl Default for ToolInfo {
    fn default() -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").into(),
            config: SolverConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: u64,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<IntervalRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refutation: Option<Vec<Step>>,
    pub checks: Vec<Check>,
    pub tool: ToolInfo,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Certificate(e.to_string()))
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// The evidence required by the verdict is present and every check
    /// passed.
    pub fn is_complete(&self) -> bool {
        let evidence = match self.verdict {
            Verdict::PrimePartitionable => {
                self.partition.is_some() && self.witness.is_some() && self.interval.is_some()
            }
            Verdict::NotPrimePartitionable => {
                self.refutation.as_ref().is_some_and(|r| !r.is_empty())
            }
        };
        evidence && self.all_checks_pass()
    }

    pub fn partition(&self) -> Result<Option<PrimePartition>> {
        self.partition
            .as_ref()
            .map(|r| PrimePartition::from_sets(self.n, &r.p1, &r.p2))
            .transpose()
    }

    pub fn witness(&self) -> Result<Option<WitnessPair>> {
        self.witness
            .as_ref()
            .map(|r| {
                let d =
                    r.d.parse()
                        .map_err(|_| Error::Certificate(format!("bad d {:?}", r.d)))?;
                WitnessPair::new(d, parse_big(&r.n1)?, parse_big(&r.n2)?)
            })
            .transpose()
    }

    pub fn interval(&self) -> Result<Option<EWInterval>> {
        self.interval
            .as_ref()
            .map(|r| EWInterval::new(parse_big(&r.e1)?, r.w))
            .transpose()
    }
}

fn parse_big(s: &str) -> Result<BigUint> {
    s.parse()
        .map_err(|_| Error::Certificate(format!("{s:?} is not a decimal integer")))
}

fn partition_record(p: &PrimePartition) -> PartitionRecord {
    PartitionRecord {
        p1: p.p1(),
        p2: p.p2(),
    }
}

fn witness_record(w: &WitnessPair) -> WitnessRecord {
    WitnessRecord {
        d: w.d.to_string(),
        n1: w.n1.to_str_radix(10),
        n2: w.n2.to_str_radix(10),
    }
}

fn interval_record(iv: &EWInterval) -> IntervalRecord {
    IntervalRecord {
        e1: iv.e1.to_str_radix(10),
        w: iv.w,
    }
}

fn positive_checks(
    n: u64,
    partition: &PrimePartition,
    witness: Option<&WitnessPair>,
    interval: Option<&EWInterval>,
) -> Vec<Check> {
    let w_ok = witness.is_some_and(|w| w.d == n && verify_witness(w).unwrap_or(false));
    let iv_ok = interval.is_some_and(|iv| iv.w == n && verify_interval(iv));
    vec![
        Check::new(
            "partition-satisfies-clauses",
            partition.n() == n && verify_partition(partition),
        ),
        Check::new("witness-verifies", w_ok),
        Check::new(
            "witness-recovers-partition",
            witness.is_some_and(|w| partition_from_witness(w).is_ok()),
        ),
        Check::new("interval-verifies", iv_ok),
        Check::new(
            "interval-recovers-partition",
            interval.is_some_and(|iv| partition_from_interval(iv).is_ok()),
        ),
    ]
}

fn negative_checks(n: u64, refutation: &[Step]) -> Vec<Check> {
    let mut checks = Vec::new();
    match refutation {
        [only] if only.kind == StepKind::ExhaustiveSearch => {
            checks.push(Check::new("search-refutes", matches!(solve(n), Ok(None))));
            if let Ok(found) = oracle_decides(n) {
                checks.push(Check::new("oracle-refutes", !found));
            }
        }
        steps => checks.push(Check::new("refutation-replays", replay_chain(n, steps))),
    }
    checks
}

/// Decides `n` and bundles every piece of evidence for the verdict.
pub fn certify(n: u64) -> Result<Certificate> {
    check_min(n)?;
    let tool = ToolInfo::default();
    match solve(n)? {
        Some(partition) => {
            let witness = witness_from_partition(&partition).ok();
            let interval = interval_from_partition(&partition).ok();
            let checks = positive_checks(n, &partition, witness.as_ref(), interval.as_ref());
            Ok(Certificate {
                n,
                verdict: Verdict::PrimePartitionable,
                partition: Some(partition_record(&partition)),
                witness: witness.as_ref().map(witness_record),
                interval: interval.as_ref().map(interval_record),
                refutation: None,
                checks,
                tool,
            })
        }
        None => {
            let refutation = chain::refute(n)?.unwrap_or_else(|| vec![Step::exhaustive_search()]);
            let checks = negative_checks(n, &refutation);
            Ok(Certificate {
                n,
                verdict: Verdict::NotPrimePartitionable,
                partition: None,
                witness: None,
                interval: None,
                refutation: Some(refutation),
                checks,
                tool,
            })
        }
    }
}

/// Re-runs every verifier on the evidence recorded in `cert`.
pub fn recheck(cert: &Certificate) -> Result<Vec<Check>> {
    check_min(cert.n)?;
    match cert.verdict {
        Verdict::PrimePartitionable => {
            let partition = cert.partition()?.ok_or_else(|| {
                Error::Certificate("positive certificate without partition".into())
            })?;
            let witness = cert.witness()?;
            let interval = cert.interval()?;
            Ok(positive_checks(
                cert.n,
                &partition,
                witness.as_ref(),
                interval.as_ref(),
            ))
        }
        Verdict::NotPrimePartitionable => {
            let steps = cert.refutation.as_deref().ok_or_else(|| {
                Error::Certificate("negative certificate without refutation".into())
            })?;
            Ok(negative_checks(cert.n, steps))
        }
    }
}

/// Whether the three characterizations agree on `n`: the partition search,
/// a witness pair built from its answer, and an interval built from it.
pub fn cross_check(n: u64) -> Result<bool> {
    check_min(n)?;
    let partition = solve(n)?;
    let by_witness = partition.as_ref().is_some_and(|p| {
        witness_from_partition(p).is_ok_and(|w| {
            verify_witness(&w).unwrap_or(false) && partition_from_witness(&w).is_ok()
        })
    });
    let by_interval = partition.as_ref().is_some_and(|p| {
        interval_from_partition(p)
            .is_ok_and(|iv| verify_interval(&iv) && partition_from_interval(&iv).is_ok())
    });
    let decided = partition.is_some();
    Ok(decided == by_witness && decided == by_interval)
}
