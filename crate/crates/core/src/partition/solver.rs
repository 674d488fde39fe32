//! DPLL search over prime sides.
//!
//! Derived binary constraints are folded into a parity union-find first, so
//! the search runs over equivalence classes of primes rather than primes.
//! Clauses are rewritten over class literals, deduplicated, and propagated
//! with two watched literals. Conflicts are analysed to the first unique
//! implication point; the learned clause decides how far to jump back.

use rayon::prelude::*;

use super::{
    check_min, derive_binary_constraints, ClauseSet, ParityUnionFind, PrimePartition, Side,
};
use crate::Result;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Prime classes after folding the derived constraints.
    pub classes: usize,
    /// Distinct non-tautological clauses over classes.
    pub clauses: usize,
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
    /// Clauses added by conflict analysis.
    pub learned: usize,
}

/// A satisfying canonical partition of the primes below `n`, if any.
pub fn solve(n: u64) -> Result<Option<PrimePartition>> {
    Ok(solve_with_stats(n)?.0)
}

pub fn solve_with_stats(n: u64) -> Result<(Option<PrimePartition>, SolveStats)> {
    check_min(n)?;
    let mut stats = SolveStats::default();
    let derived = derive_binary_constraints(n)?;
    if derived.immediate_unsat.is_some() {
        return Ok((None, stats));
    }

    let set = ClauseSet::new(n);
    let k = set.primes.len();
    let mut uf = ParityUnionFind::new(k);
    for c in &derived.constraints {
        let (p, q) = (set.index_of(c.p).unwrap(), set.index_of(c.q).unwrap());
        if uf.relate(p, q, c.relation.differ()).is_err() {
            return Ok((None, stats));
        }
    }

    let mut class_of_root = vec![usize::MAX; k];
    let mut var_class = vec![0; k];
    let mut var_flip = vec![false; k];
    let mut classes = 0;
    for i in 0..k {
        let (r, flip) = uf.find(i);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = classes;
            classes += 1;
        }
        var_class[i] = class_of_root[r];
        var_flip[i] = flip;
    }
    // Class value `true` puts the class representative on side one, so prime
    // `i` is on side one iff value ^ flip[i].
    let lit = |i: usize, s: Side| 2 * var_class[i] + (((s == Side::One) ^ var_flip[i]) as usize);

    let mut clauses: Vec<Vec<usize>> = Vec::with_capacity(set.clauses.len());
    for raw in &set.clauses {
        let mut c: Vec<usize> = raw.iter().map(|&(i, s)| lit(i, s)).collect();
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            continue;
        }
        clauses.push(c);
    }
    clauses.sort_unstable();
    clauses.dedup();
    stats.classes = classes;
    stats.clauses = clauses.len();

    // Side two must not be empty.
    let mut two: Vec<usize> = (0..k).map(|i| lit(i, Side::Two)).collect();
    two.sort_unstable();
    two.dedup();
    if !two.windows(2).any(|w| w[0] ^ 1 == w[1]) {
        clauses.push(two);
    }

    // Branch order: primes descending, first literal puts the prime on side one.
    let order: Vec<usize> = (0..k).rev().map(|i| lit(i, Side::One)).collect();

    let mut cdcl = Cdcl::new(classes, clauses, &order);
    let found = cdcl.run(lit(0, Side::One)).map(|assign| {
        (0..k)
            .map(|i| {
                if assign[var_class[i]] ^ var_flip[i] {
                    Side::One
                } else {
                    Side::Two
                }
            })
            .collect::<Vec<Side>>()
    });
    stats.decisions = cdcl.decisions;
    stats.propagations = cdcl.propagations;
    stats.conflicts = cdcl.conflicts;
    stats.learned = cdcl.clauses.len() - cdcl.original;
    let partition = found.map(|sides| {
        PrimePartition::from_parts(n, set.primes.clone(), sides)
            .expect("search only accepts two nonempty parts")
    });
    Ok((partition, stats))
}

/// `false` for `n < 4`, otherwise whether [`solve`] finds a partition.
pub fn is_prime_partitionable(n: u64) -> bool {
    n >= super::MIN_N && solve(n).expect("n checked").is_some()
}

/// All prime partitionable `n` with `4 ≤ n ≤ limit`, ascending. Runs on the
/// current rayon pool.
pub fn enumerate_pp(limit: u64) -> Vec<u64> {
    if limit < super::MIN_N {
        return Vec::new();
    }
    (super::MIN_N..=limit)
        .into_par_iter()
        .filter(|&n| is_prime_partitionable(n))
        .collect()
}

const DECAY: f64 = 0.95;

struct Cdcl {
    clauses: Vec<Vec<usize>>,
    original: usize,
    watches: Vec<Vec<usize>>,
    assign: Vec<Option<bool>>,
    level: Vec<usize>,
    reason: Vec<Option<usize>>,
    trail: Vec<usize>,
    trail_lim: Vec<usize>,
    qhead: usize,
    units: Vec<usize>,
    // Decision literals in tie-break order; a class's preferred polarity.
    order: Vec<usize>,
    phase: Vec<usize>,
    activity: Vec<f64>,
    bump: f64,
    seen: Vec<bool>,
    decisions: u64,
    propagations: u64,
    conflicts: u64,
}

impl Cdcl {
    fn new(vars: usize, clauses: Vec<Vec<usize>>, order: &[usize]) -> Self {
        let mut watches = vec![Vec::new(); 2 * vars];
        let mut units = Vec::new();
        for (ci, c) in clauses.iter().enumerate() {
            match c.len() {
                0 => unreachable!("every clause has a literal"),
                1 => units.push(c[0]),
                _ => {
                    watches[c[0]].push(ci);
                    watches[c[1]].push(ci);
                }
            }
        }
        let mut seen_var = vec![false; vars];
        let order: Vec<usize> = order
            .iter()
            .copied()
            .filter(|&l| !std::mem::replace(&mut seen_var[l >> 1], true))
            .collect();
        let mut phase = vec![0; vars];
        for &l in &order {
            phase[l >> 1] = l;
        }
        Self {
            original: clauses.len(),
            clauses,
            watches,
            assign: vec![None; vars],
            level: vec![0; vars],
            reason: vec![None; vars],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            units,
            order,
            phase,
            activity: vec![0.0; vars],
            bump: 1.0,
            seen: vec![false; vars],
            decisions: 0,
            propagations: 0,
            conflicts: 0,
        }
    }

    fn value(&self, lit: usize) -> Option<bool> {
        self.assign[lit >> 1].map(|v| v == (lit & 1 == 1))
    }

    /// Makes `lit` true; false if it is already false.
    fn enqueue(&mut self, lit: usize, reason: Option<usize>) -> bool {
        match self.value(lit) {
            Some(v) => v,
            None => {
                let v = lit >> 1;
                self.assign[v] = Some(lit & 1 == 1);
                self.level[v] = self.trail_lim.len();
                self.reason[v] = reason;
                self.trail.push(lit);
                true
            }
        }
    }

    /// Unit propagation; the falsified clause on conflict. The implied
    /// literal of a reason clause is kept at position 0.
    fn propagate(&mut self) -> Option<usize> {
        while self.qhead < self.trail.len() {
            let falsified = self.trail[self.qhead] ^ 1;
            self.qhead += 1;
            let watching = std::mem::take(&mut self.watches[falsified]);
            let mut keep = Vec::with_capacity(watching.len());
            let mut conflict = None;
            let mut it = watching.into_iter();
            for ci in it.by_ref() {
                let c = &mut self.clauses[ci];
                if c[0] == falsified {
                    c.swap(0, 1);
                }
                let other = c[0];
                if self.assign[other >> 1].map(|v| v == (other & 1 == 1)) == Some(true) {
                    keep.push(ci);
                    continue;
                }
                let replacement = (2..c.len()).find(|&j| {
                    let l = c[j];
                    self.assign[l >> 1].map(|v| v == (l & 1 == 1)) != Some(false)
                });
                if let Some(j) = replacement {
                    c.swap(1, j);
                    let new_watch = c[1];
                    self.watches[new_watch].push(ci);
                    continue;
                }
                keep.push(ci);
                self.propagations += 1;
                if !self.enqueue(other, Some(ci)) {
                    conflict = Some(ci);
                    break;
                }
            }
            keep.extend(it);
            self.watches[falsified] = keep;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.bump;
        if self.activity[v] > 1e100 {
            self.activity.iter_mut().for_each(|a| *a *= 1e-100);
            self.bump *= 1e-100;
        }
    }

    /// First-UIP clause (asserting literal first) and the level to jump to.
    fn analyze(&mut self, mut confl: usize) -> (Vec<usize>, usize) {
        let current = self.trail_lim.len();
        let mut learnt = vec![0];
        let mut pending = 0;
        let mut idx = self.trail.len();
        let mut implied: Option<usize> = None;
        loop {
            let skip = usize::from(implied.is_some());
            for j in skip..self.clauses[confl].len() {
                let q = self.clauses[confl][j];
                let v = q >> 1;
                if self.seen[v] || self.level[v] == 0 {
                    continue;
                }
                self.seen[v] = true;
                self.bump_var(v);
                if self.level[v] == current {
                    pending += 1;
                } else {
                    learnt.push(q);
                }
            }
            loop {
                idx -= 1;
                if self.seen[self.trail[idx] >> 1] {
                    break;
                }
            }
            let p = self.trail[idx];
            self.seen[p >> 1] = false;
            pending -= 1;
            implied = Some(p);
            if pending == 0 {
                learnt[0] = p ^ 1;
                break;
            }
            confl = self.reason[p >> 1].expect("only the decision lacks a reason");
        }
        for &q in &learnt[1..] {
            self.seen[q >> 1] = false;
        }
        self.bump /= DECAY;
        // Second watch goes to the deepest remaining literal.
        let mut jump = 0;
        if learnt.len() > 1 {
            let deepest = (1..learnt.len())
                .max_by_key(|&j| self.level[learnt[j] >> 1])
                .unwrap();
            learnt.swap(1, deepest);
            jump = self.level[learnt[1] >> 1];
        }
        (learnt, jump)
    }

    fn backjump(&mut self, level: usize) {
        if self.trail_lim.len() <= level {
            return;
        }
        let len = self.trail_lim[level];
        for lit in self.trail.drain(len..) {
            let v = lit >> 1;
            self.assign[v] = None;
            self.reason[v] = None;
            self.phase[v] = lit;
        }
        self.trail_lim.truncate(level);
        self.qhead = len;
    }

    fn learn(&mut self, clause: Vec<usize>) {
        let asserting = clause[0];
        if clause.len() == 1 {
            self.enqueue(asserting, None);
            return;
        }
        let ci = self.clauses.len();
        self.watches[clause[0]].push(ci);
        self.watches[clause[1]].push(ci);
        self.clauses.push(clause);
        self.enqueue(asserting, Some(ci));
    }

    /// Most active unassigned class, ties to the earliest in branch order.
    fn pick(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for &l in &self.order {
            let v = l >> 1;
            if self.assign[v].is_none()
                && best.is_none_or(|b| self.activity[v] > self.activity[b >> 1])
            {
                best = Some(l);
            }
        }
        best.map(|l| self.phase[l >> 1])
    }

    /// A total assignment satisfying every clause, if one exists.
    fn run(&mut self, root: usize) -> Option<Vec<bool>> {
        let units = std::mem::take(&mut self.units);
        if !units
            .into_iter()
            .chain([root])
            .all(|u| self.enqueue(u, None))
        {
            return None;
        }
        loop {
            if let Some(confl) = self.propagate() {
                self.conflicts += 1;
                if self.trail_lim.is_empty() {
                    return None;
                }
                let (learnt, jump) = self.analyze(confl);
                self.backjump(jump);
                self.learn(learnt);
                continue;
            }
            match self.pick() {
                Some(l) => {
                    self.decisions += 1;
                    self.trail_lim.push(self.trail.len());
                    self.enqueue(l, None);
                }
                None => return Some(self.assign.iter().map(|v| v.unwrap()).collect()),
            }
        }
    }
}
