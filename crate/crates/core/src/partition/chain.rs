//! Human-readable refutations built from binary and unit reasoning.
//!
//! The refuter keeps a parity union-find over the primes plus one extra
//! *anchor* node standing for "side one". Every relation it learns is a
//! [`Step`] justified by one decomposition (and, for relations, its mirror)
//! after the clauses are simplified modulo what is already known:
//!
//! * a literal whose prime is tied to the anchor is decided and either
//!   satisfies the clause or drops out;
//! * literals whose primes are known to share a side and that ask for the
//!   same side merge into one;
//! * a pair of mirrored clauses that both reduce to two literals, with
//!   opposite sides, fixes the relation between those two literals;
//! * a clause whose literals all live in one class forces that class.
//!
//! Each step records the earlier steps it relied on. When a relation closes
//! an odd cycle, or a clause loses every literal, the steps reachable from
//! the conflict form the returned chain. The procedure is sound but not
//! complete: some non-partitionable `n` need case splits it never makes.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{check_min, derive_binary_constraints, ClauseSet, ParityUnionFind, Side};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    SameSide,
    DifferentSide,
    ForcedSideOne,
    ForcedSideTwo,
    FalsifiedClause,
    /// Not a derivation step: marks a refutation by complete search.
    ExhaustiveSearch,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Step {
    pub kind: StepKind,
    /// Primes of the literals still open when the step was taken, ascending.
    pub primes: Vec<u64>,
    /// `[n1, n2]`. Relation steps use `n1 < n2` and stand for the mirrored
    /// pair; forced and falsified steps name the exact ordered clause.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<[u64; 2]>,
}

impl Step {
    pub fn exhaustive_search() -> Self {
        Self {
            kind: StepKind::ExhaustiveSearch,
            primes: Vec::new(),
            decomposition: None,
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let primes = self
            .primes
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        let [a, b] = self.decomposition.unwrap_or([0, 0]);
        match self.kind {
            StepKind::SameSide => {
                write!(
                    f,
                    "{a}+{b} and {b}+{a}: {{{primes}}} force a same-side relation"
                )
            }
            StepKind::DifferentSide => {
                write!(
                    f,
                    "{a}+{b} and {b}+{a}: {{{primes}}} force a different-side relation"
                )
            }
            StepKind::ForcedSideOne | StepKind::ForcedSideTwo => {
                let side = if self.kind == StepKind::ForcedSideOne {
                    1
                } else {
                    2
                };
                write!(
                    f,
                    "{a}+{b}: only {{{primes}}} remain, forced to side {side}"
                )
            }
            StepKind::FalsifiedClause => {
                write!(f, "{a}+{b}: every literal over {{{primes}}} is false")
            }
            StepKind::ExhaustiveSearch => f.write_str("refuted by exhaustive search"),
        }
    }
}

/// A propagation refutation of `n`, or `None` when propagation alone does
/// not reach a contradiction.
///
/// Fails for `n < 4` and for prime partitionable `n`.
pub fn contradiction_chain(n: u64) -> Result<Option<Vec<Step>>> {
    check_min(n)?;
    if super::is_prime_partitionable(n) {
        return Err(Error::PrimePartitionable(n));
    }
    refute(n)
}

/// Runs the refuter without first deciding `n`.
pub(crate) fn refute(n: u64) -> Result<Option<Vec<Step>>> {
    check_min(n)?;
    let derived = derive_binary_constraints(n)?;
    let set = ClauseSet::new(n);
    let mut r = Refuter::new(&set, true);

    for c in &derived.constraints {
        let d = c.provenance[0].unordered();
        match r.mirrored_pair(d.n1) {
            Event::Conflict(chain) => return Ok(Some(chain)),
            Event::Learned | Event::Nothing => {}
        }
    }

    loop {
        let mut changed = false;
        for j in 1..=n / 2 {
            match r.visit(j) {
                Event::Conflict(chain) => return Ok(Some(chain)),
                Event::Learned => changed = true,
                Event::Nothing => {}
            }
        }
        if !changed {
            return Ok(None);
        }
    }
}

/// Checks that `steps` is a valid propagation refutation of `n`: each step
/// must be re-derivable from the steps before it, and the last one must
/// produce the contradiction.
pub fn replay_chain(n: u64, steps: &[Step]) -> bool {
    if n < super::MIN_N || steps.is_empty() {
        return false;
    }
    let set = ClauseSet::new(n);
    let mut r = Refuter::new(&set, false);
    for (t, step) in steps.iter().enumerate() {
        let last = t + 1 == steps.len();
        let Some([a, b]) = step.decomposition else {
            return false;
        };
        if a == 0 || b == 0 || a + b != n {
            return false;
        }
        let outcome = match step.kind {
            StepKind::SameSide | StepKind::DifferentSide => r.replay_relation(a.min(b), step),
            StepKind::ForcedSideOne | StepKind::ForcedSideTwo => r.replay_forced(a, step),
            StepKind::FalsifiedClause => r.replay_falsified(a, step),
            StepKind::ExhaustiveSearch => return false,
        };
        match outcome {
            Replay::Invalid => return false,
            Replay::Conflict => return last,
            Replay::Consistent => {}
        }
    }
    false
}

enum Event {
    Nothing,
    Learned,
    Conflict(Vec<Step>),
}

enum Replay {
    Invalid,
    Consistent,
    Conflict,
}

/// One merged literal of a simplified clause.
#[derive(Debug, Clone, Copy)]
struct Group {
    rep: usize,
    side: Side,
    root: usize,
    parity: bool,
}

enum ClauseState {
    Inert,
    Open,
    Falsified {
        deps: Vec<usize>,
        primes: Vec<u64>,
    },
    Unit {
        rep: usize,
        side: Side,
        deps: Vec<usize>,
        primes: Vec<u64>,
    },
}

enum Reduced {
    /// Satisfied by a decided literal, or contains two literals of which one
    /// must hold.
    Inert,
    Open {
        groups: Vec<Group>,
        deps: Vec<usize>,
        primes: Vec<u64>,
        // Primes of literals decided false.
        dropped: Vec<u64>,
    },
}

struct Record {
    step: Step,
    deps: Vec<usize>,
}

/// `(a, b, differ, deps, primes)` read off a mirrored pair of clauses.
type PairRelation = (usize, usize, bool, Vec<usize>, Vec<u64>);
/// A clause with no literal left: `(n1, deps, primes)`.
type Emptied = (u64, Vec<usize>, Vec<u64>);

struct Refuter<'a> {
    set: &'a ClauseSet,
    anchor: usize,
    uf: ParityUnionFind,
    // (neighbour, record id) over relations that merged two sets.
    forest: Vec<Vec<(usize, usize)>>,
    records: Vec<Record>,
    explain: bool,
}

impl<'a> Refuter<'a> {
    fn new(set: &'a ClauseSet, explain: bool) -> Self {
        let k = set.primes.len();
        Self {
            set,
            anchor: k,
            uf: ParityUnionFind::new(k + 1),
            forest: vec![Vec::new(); k + 1],
            records: Vec::new(),
            explain,
        }
    }

    fn prime(&self, i: usize) -> u64 {
        self.set.primes[i]
    }

    /// Record ids along the forest path from `a` to `b`.
    fn path(&self, a: usize, b: usize) -> Vec<usize> {
        if a == b || !self.explain {
            return Vec::new();
        }
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.forest.len()];
        let mut queue = std::collections::VecDeque::from([a]);
        let mut seen = vec![false; self.forest.len()];
        seen[a] = true;
        while let Some(u) = queue.pop_front() {
            if u == b {
                break;
            }
            for &(v, id) in &self.forest[u] {
                if !seen[v] {
                    seen[v] = true;
                    prev[v] = Some((u, id));
                    queue.push_back(v);
                }
            }
        }
        let mut ids = Vec::new();
        let mut cur = b;
        while let Some((u, id)) = prev[cur] {
            ids.push(id);
            cur = u;
        }
        debug_assert_eq!(cur, a, "path requested across disconnected nodes");
        ids
    }

    fn reduce(&mut self, n1: u64) -> Reduced {
        let (anchor_root, anchor_par) = self.uf.find(self.anchor);
        let mut groups: Vec<Group> = Vec::new();
        let mut deps = Vec::new();
        let mut primes = Vec::new();
        let mut dropped = Vec::new();
        for &(i, s) in self.set.clause(n1) {
            let (root, parity) = self.uf.find(i);
            if root == anchor_root {
                let side = if parity ^ anchor_par {
                    Side::Two
                } else {
                    Side::One
                };
                if side == s {
                    return Reduced::Inert;
                }
                deps.extend(self.path(i, self.anchor));
                dropped.push(self.prime(i));
                continue;
            }
            primes.push(self.prime(i));
            let mut merged = false;
            for g in &groups {
                if g.root != root {
                    continue;
                }
                match (g.parity == parity, g.side == s) {
                    (true, true) => {
                        deps.extend(self.path(i, g.rep));
                        merged = true;
                        break;
                    }
                    // Same class on opposite sides, or opposite classes on
                    // the same side: one of the two always holds.
                    (true, false) | (false, true) => return Reduced::Inert,
                    // Equivalent literals are kept apart.
                    (false, false) => {}
                }
            }
            if !merged {
                groups.push(Group {
                    rep: i,
                    side: s,
                    root,
                    parity,
                });
            }
        }
        primes.sort_unstable();
        primes.dedup();
        dropped.sort_unstable();
        dropped.dedup();
        Reduced::Open {
            groups,
            deps,
            primes,
            dropped,
        }
    }

    fn push(&mut self, step: Step, deps: Vec<usize>) -> usize {
        self.records.push(Record { step, deps });
        self.records.len() - 1
    }

    /// Adds a relation backed by record `id`.
    fn relate(&mut self, a: usize, b: usize, differ: bool, id: usize) -> Result<bool, Vec<usize>> {
        match self.uf.relate(a, b, differ) {
            Ok(true) => {
                self.forest[a].push((b, id));
                self.forest[b].push((a, id));
                Ok(true)
            }
            Ok(false) => Ok(false),
            Err(_) => {
                let mut roots = self.path(a, b);
                roots.push(id);
                Err(roots)
            }
        }
    }

    fn closure(&self, roots: Vec<usize>) -> Vec<Step> {
        let mut keep = BTreeSet::new();
        let mut stack = roots;
        while let Some(id) = stack.pop() {
            if keep.insert(id) {
                stack.extend(self.records[id].deps.iter().copied());
            }
        }
        keep.into_iter()
            .map(|id| self.records[id].step.clone())
            .collect()
    }

    /// Adds a step and its relation; discards the step if nothing is new.
    fn learn(&mut self, step: Step, deps: Vec<usize>, a: usize, b: usize, differ: bool) -> Event {
        let id = self.push(step, deps);
        match self.relate(a, b, differ, id) {
            Ok(true) => Event::Learned,
            Ok(false) => {
                self.records.pop();
                Event::Nothing
            }
            Err(roots) => Event::Conflict(self.closure(roots)),
        }
    }

    /// Complementary two-literal reductions of `(j, n − j)` and its mirror.
    fn pair_relation(&mut self, j: u64) -> Option<Result<PairRelation, Emptied>> {
        let n = self.set.n;
        let ra = self.reduce(j);
        let rb = self.reduce(n - j);
        let (ga, da, pa) = match ra {
            Reduced::Open {
                groups,
                deps,
                dropped,
                ..
            } if groups.is_empty() => return Some(Err((j, deps, dropped))),
            Reduced::Open {
                groups,
                deps,
                primes,
                ..
            } => (groups, deps, primes),
            Reduced::Inert => return None,
        };
        let (gb, db, pb) = match rb {
            Reduced::Open {
                groups,
                deps,
                dropped,
                ..
            } if groups.is_empty() => return Some(Err((n - j, deps, dropped))),
            Reduced::Open {
                groups,
                deps,
                primes,
                ..
            } => (groups, deps, primes),
            Reduced::Inert => return None,
        };
        if ga.len() != 2 || gb.len() != 2 {
            return None;
        }
        let mirror = |g: &Group| {
            gb.iter()
                .find(|h| h.root == g.root && h.parity == g.parity && h.side != g.side)
                .copied()
        };
        let (x, y) = (ga[0], ga[1]);
        let (mx, my) = (mirror(&x)?, mirror(&y)?);
        let mut deps = da;
        deps.extend(db);
        deps.extend(self.path(x.rep, mx.rep));
        deps.extend(self.path(y.rep, my.rep));
        let mut primes = pa;
        primes.extend(pb);
        primes.sort_unstable();
        primes.dedup();
        // x ∨ y and ¬x ∨ ¬y: x holds exactly when y fails.
        Some(Ok((x.rep, y.rep, x.side == y.side, deps, primes)))
    }

    fn falsified(&mut self, n1: u64, deps: Vec<usize>, primes: Vec<u64>) -> Event {
        let step = Step {
            kind: StepKind::FalsifiedClause,
            primes,
            decomposition: Some([n1, self.set.n - n1]),
        };
        let id = self.push(step, deps);
        Event::Conflict(self.closure(vec![id]))
    }

    fn mirrored_pair(&mut self, j: u64) -> Event {
        match self.pair_relation(j) {
            None => Event::Nothing,
            Some(Err((n1, deps, primes))) => self.falsified(n1, deps, primes),
            Some(Ok((a, b, differ, deps, primes))) => {
                let step = Step {
                    kind: if differ {
                        StepKind::DifferentSide
                    } else {
                        StepKind::SameSide
                    },
                    primes,
                    decomposition: Some([j, self.set.n - j]),
                };
                self.learn(step, deps, a, b, differ)
            }
        }
    }

    fn analyse(&mut self, n1: u64) -> ClauseState {
        match self.reduce(n1) {
            Reduced::Inert => ClauseState::Inert,
            Reduced::Open {
                groups,
                deps,
                dropped,
                ..
            } if groups.is_empty() => ClauseState::Falsified {
                deps,
                primes: dropped,
            },
            Reduced::Open {
                groups,
                mut deps,
                primes,
                ..
            } => {
                let first = groups[0];
                if groups.iter().any(|g| g.root != first.root) {
                    return ClauseState::Open;
                }
                // Remaining groups are equivalent to the first.
                for g in &groups[1..] {
                    deps.extend(self.path(first.rep, g.rep));
                }
                ClauseState::Unit {
                    rep: first.rep,
                    side: first.side,
                    deps,
                    primes,
                }
            }
        }
    }

    fn forced_step(&self, n1: u64, side: Side, primes: Vec<u64>) -> Step {
        Step {
            kind: match side {
                Side::One => StepKind::ForcedSideOne,
                Side::Two => StepKind::ForcedSideTwo,
            },
            primes,
            decomposition: Some([n1, self.set.n - n1]),
        }
    }

    /// Processes `(j, n − j)` and its mirror.
    fn visit(&mut self, j: u64) -> Event {
        let n = self.set.n;
        if j < n - j {
            match self.mirrored_pair(j) {
                Event::Nothing => {}
                other => return other,
            }
        }
        // Analyse both clauses before applying either, so two opposite units
        // clash as a pair.
        let mut sides = vec![j];
        if n - j != j {
            sides.push(n - j);
        }
        let states: Vec<(u64, ClauseState)> =
            sides.into_iter().map(|n1| (n1, self.analyse(n1))).collect();
        let mut learned = false;
        for (n1, state) in states {
            let ev = match state {
                ClauseState::Falsified { deps, primes } => self.falsified(n1, deps, primes),
                ClauseState::Unit {
                    rep,
                    side,
                    deps,
                    primes,
                } => {
                    let step = self.forced_step(n1, side, primes);
                    self.learn(step, deps, rep, self.anchor, side == Side::Two)
                }
                ClauseState::Inert | ClauseState::Open => Event::Nothing,
            };
            match ev {
                Event::Nothing => {}
                Event::Learned => learned = true,
                conflict => return conflict,
            }
        }
        if learned {
            Event::Learned
        } else {
            Event::Nothing
        }
    }

    fn replay_relation(&mut self, j: u64, step: &Step) -> Replay {
        match self.pair_relation(j) {
            Some(Ok((a, b, differ, _, primes))) => {
                let kind = if differ {
                    StepKind::DifferentSide
                } else {
                    StepKind::SameSide
                };
                if kind != step.kind || primes != step.primes {
                    return Replay::Invalid;
                }
                match self.uf.relate(a, b, differ) {
                    Ok(_) => Replay::Consistent,
                    Err(_) => Replay::Conflict,
                }
            }
            _ => Replay::Invalid,
        }
    }

    fn replay_forced(&mut self, n1: u64, step: &Step) -> Replay {
        match self.analyse(n1) {
            ClauseState::Unit {
                rep, side, primes, ..
            } => {
                if self.forced_step(n1, side, primes) != *step {
                    return Replay::Invalid;
                }
                match self.uf.relate(rep, self.anchor, side == Side::Two) {
                    Ok(_) => Replay::Consistent,
                    Err(_) => Replay::Conflict,
                }
            }
            // A unit read off before its mirror was applied: the clause is
            // now false outright.
            ClauseState::Falsified { primes, .. } if primes == step.primes => Replay::Conflict,
            _ => Replay::Invalid,
        }
    }

    fn replay_falsified(&mut self, n1: u64, step: &Step) -> Replay {
        match self.analyse(n1) {
            ClauseState::Falsified { primes, .. } if primes == step.primes => Replay::Conflict,
            _ => Replay::Invalid,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn step(kind: StepKind, primes: &[u64], d: [u64; 2]) -> Step {
        Step {
            kind,
            primes: primes.to_vec(),
            decomposition: Some(d),
        }
    }

    #[test]
    fn fifty_two_matches_the_four_bullets() {
        let chain = contradiction_chain(52).unwrap().unwrap();
        let mut got = chain.clone();
        got.sort();
        let mut want = vec![
            step(StepKind::SameSide, &[3, 5], [25, 27]),
            step(StepKind::SameSide, &[3, 7], [3, 49]),
            step(StepKind::SameSide, &[5, 7, 17], [17, 35]),
            step(StepKind::DifferentSide, &[3, 17], [1, 51]),
        ];
        want.sort();
        assert_eq!(got, want);
        assert!(replay_chain(52, &chain));
    }

    #[test]
    fn one_plus_prime_power_is_a_unit_clash() {
        let chain = contradiction_chain(17).unwrap().unwrap();
        assert_eq!(
            chain,
            vec![
                step(StepKind::ForcedSideTwo, &[2], [1, 16]),
                step(StepKind::ForcedSideOne, &[2], [16, 1]),
            ]
        );
        assert!(replay_chain(17, &chain));

        let chain = contradiction_chain(4).unwrap().unwrap();
        assert_eq!(
            chain,
            vec![
                step(StepKind::ForcedSideTwo, &[3], [1, 3]),
                step(StepKind::ForcedSideOne, &[3], [3, 1]),
            ]
        );
    }

    #[test]
    fn partitionable_numbers_are_rejected() {
        assert_eq!(contradiction_chain(16), Err(Error::PrimePartitionable(16)));
        assert!(contradiction_chain(3).is_err());
    }

    #[test]
    fn tampered_chains_do_not_replay() {
        let chain = contradiction_chain(52).unwrap().unwrap();
        // Dropping a premise breaks the derivation.
        assert!(!replay_chain(52, &chain[1..]));
        // Claiming the wrong relation.
        let mut bad = chain.clone();
        bad[0].kind = match bad[0].kind {
            StepKind::SameSide => StepKind::DifferentSide,
            _ => StepKind::SameSide,
        };
        assert!(!replay_chain(52, &bad));
        // Not a refutation of a different n.
        assert!(!replay_chain(54, &chain));
        assert!(!replay_chain(52, &[Step::exhaustive_search()]));
        // Stopping before the conflict.
        assert!(!replay_chain(52, &chain[..chain.len() - 1]));
    }

    #[test]
    fn chains_replay_for_all_refutable_n() {
        for n in 4..=200 {
            if super::super::is_prime_partitionable(n) {
                continue;
            }
            if let Some(chain) = refute(n).unwrap() {
                assert!(replay_chain(n, &chain), "n = {n}: {chain:?}");
            }
        }
    }
}
