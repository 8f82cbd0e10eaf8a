//! Backtracking search for starter 2-factors.
//!
//! The starters of every kind amount to an exact cover of rotation orbits:
//! the starter edges must meet each orbit of the relevant graph exactly once.
//! Factors are built one cycle at a time. Each cycle starts at the smallest
//! vertex its factor has not covered, takes one of the remaining lengths
//! (largest first) and grows edge by edge, pruning on orbit reuse and on the
//! adjacency rule, which is tracked as a single side bit (see
//! [`crate::expand`]).
//!
//! Canonical form, relative to which `Exhausted` is a complete answer:
//! - a cycle of length 3 or more is listed with its second vertex below its
//!   last;
//! - one- and two-starters use `{0, inf}` as their only possible pink edge at
//!   `inf` (every factor may be turned independently without changing the
//!   orbits it meets);
//! - three-starters place the pink and blue 2-cycle of difference
//!   `(n - 1) / 2` on `{0, (n - 1) / 2}` and search `F1` and `F3` only.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog::{classify, cycle_types, reference_method, Coverage, CycleType, Method, StarterHint};
use crate::chain::certify;
use crate::error::{HopError, Result};
use crate::factor::{Cycle, TwoFactor};
use crate::format::{StarterKind, StarterRecord};
use crate::model::{infinity, ColouredEdge, Difference, GraphKind, OrbitIndex, Vertex};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_seconds: f64,
    /// Shuffles candidate order when set.
    pub seed: Option<u64>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 100_000_000,
            max_seconds: 300.0,
            seed: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(StarterRecord, SearchStats),
    Exhausted(SearchStats),
    BudgetExceeded(SearchStats),
}

impl SearchOutcome {
    pub fn stats(&self) -> SearchStats {
        match self {
            SearchOutcome::Found(_, s) | SearchOutcome::Exhausted(s) | SearchOutcome::BudgetExceeded(s) => *s,
        }
    }

    pub fn record(&self) -> Option<&StarterRecord> {
        match self {
            SearchOutcome::Found(r, _) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for SearchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.stats();
        let what = match self {
            SearchOutcome::Found(r, _) => format!("found({})", r.kind),
            SearchOutcome::Exhausted(_) => "exhausted".to_string(),
            SearchOutcome::BudgetExceeded(_) => "budget-exceeded".to_string(),
        };
        write!(f, "{what} {} nodes {:.2}s", s.nodes, s.elapsed.as_secs_f64())
    }
}

const NONE: u8 = u8::MAX;

/// Edge choices from `a` to `b` as `(colour slot, side before, side after)`.
/// Slots: 0 pink, 1 blue, 2 arc a->b, 3 arc b->a; in the two-fold graph
/// 0 pink, 1 black.
const FOUR_FOLD_STEPS: [(usize, u8, u8); 4] = [(0, 0, 1), (1, 1, 0), (2, 1, 1), (3, 0, 0)];
const TWO_FOLD_STEPS: [(usize, u8, u8); 2] = [(0, 0, 0), (1, 0, 0)];

fn make_edge(oriented: bool, a: Vertex, b: Vertex, slot: usize) -> ColouredEdge {
    match (oriented, slot) {
        (_, 0) => ColouredEdge::pink(a, b),
        (true, 1) => ColouredEdge::blue(a, b),
        (true, 2) => ColouredEdge::arc(a, b),
        (true, _) => ColouredEdge::arc(b, a),
        (false, _) => ColouredEdge::black(a, b),
    }
}

fn steps(oriented: bool) -> &'static [(usize, u8, u8)] {
    if oriented {
        &FOUR_FOLD_STEPS
    } else {
        &TWO_FOLD_STEPS
    }
}

struct FactorState {
    remaining: Vec<usize>,
    covered: u32,
    cycles: Vec<Cycle>,
}

struct Engine {
    n: usize,
    oriented: bool,
    orbit: Vec<u8>,
    /// Difference of each orbit, 0 standing for edges at `inf`.
    orbit_difference: Vec<u8>,
    target: u64,
    used: u64,
    factors: Vec<FactorState>,
    all_vertices: u32,
    nodes: u64,
    max_nodes: u64,
    deadline: Instant,
    out_of_budget: bool,
    rng: Option<ChaCha8Rng>,
    path: Vec<Vertex>,
    edges: Vec<ColouredEdge>,
}

impl Engine {
    fn orbit_of(&self, a: Vertex, b: Vertex, slot: usize) -> u8 {
        self.orbit[(a * self.n + b) * 4 + slot]
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes >= self.max_nodes || (self.nodes.is_multiple_of(4096) && Instant::now() >= self.deadline) {
            self.out_of_budget = true;
        }
        self.out_of_budget
    }

    /// In the last factor every unused orbit has to land in that factor, so
    /// the orbits of each difference must fit into the vertex pairs of that
    /// difference still open to it (twice over while a 2-cycle can be used).
    fn feasible(&self, fi: usize, len: usize) -> bool {
        if fi + 1 != self.factors.len() {
            return true;
        }
        let m = self.n - 1;
        let finite = (1u32 << m) - 1;
        let mut open = !self.factors[fi].covered & self.all_vertices;
        if let (Some(&first), Some(&last)) = (self.path.first(), self.path.last()) {
            open |= (1 << first) | (1 << last);
        }
        let f = open & finite;
        let reach = if len == 2 || self.factors[fi].remaining.contains(&2) {
            2
        } else {
            1
        };
        let mut unused = [0u32; 32];
        let mut left = self.target & !self.used;
        while left != 0 {
            unused[self.orbit_difference[left.trailing_zeros() as usize] as usize] += 1;
            left &= left - 1;
        }
        let at_inf = if open >> m & 1 == 1 { f.count_ones() } else { 0 };
        if unused[0] > reach * at_inf {
            return false;
        }
        unused.iter().enumerate().take(m / 2 + 1).skip(1).all(|(d, &count)| {
            let turned = ((f << d) | (f >> (m - d))) & finite;
            let pairs = (f & turned).count_ones();
            let pairs = if 2 * d == m { pairs / 2 } else { pairs };
            count <= reach * pairs
        })
    }

    fn solve(&mut self, fi: usize) -> bool {
        if fi == self.factors.len() {
            return self.used == self.target;
        }
        let covered = self.factors[fi].covered;
        if covered == self.all_vertices {
            return self.solve(fi + 1);
        }
        let start = (!covered).trailing_zeros() as usize;
        let mut lengths = self.factors[fi].remaining.clone();
        lengths.dedup();
        for len in lengths {
            let remaining = &mut self.factors[fi].remaining;
            let at = remaining.iter().position(|&l| l == len).expect("length present");
            remaining.remove(at);
            self.factors[fi].covered |= 1 << start;
            self.path.push(start);
            let sides: &[u8] = if !self.oriented || len == 2 { &[0] } else { &[0, 1] };
            for &side in sides {
                if self.extend(fi, len, side, side, 0) {
                    return true;
                }
                if self.out_of_budget {
                    break;
                }
            }
            self.path.pop();
            self.factors[fi].covered &= !(1 << start);
            self.factors[fi].remaining.insert(at, len);
            if self.out_of_budget {
                return false;
            }
        }
        false
    }

    fn extend(&mut self, fi: usize, len: usize, first: u8, side: u8, pinks: usize) -> bool {
        if self.tick() || !self.feasible(fi, len) {
            return false;
        }
        let cur = *self.path.last().expect("path starts with a vertex");
        if self.path.len() == len {
            return self.close(fi, len, first, side, pinks);
        }
        let covered = self.factors[fi].covered;
        let last_pick = len >= 3 && self.path.len() == len - 1;
        let mut candidates: Vec<Vertex> = (0..self.n)
            .filter(|&w| covered & (1 << w) == 0)
            .filter(|&w| !last_pick || w > self.path[1])
            .collect();
        if let Some(rng) = self.rng.as_mut() {
            candidates.shuffle(rng);
        }
        for w in candidates {
            for &(slot, before, after) in steps(self.oriented) {
                if self.oriented && before != side {
                    continue;
                }
                let id = self.orbit_of(cur, w, slot);
                if id == NONE || self.used & (1 << id) != 0 {
                    continue;
                }
                self.used |= 1 << id;
                self.factors[fi].covered |= 1 << w;
                self.path.push(w);
                let e = make_edge(self.oriented, cur, w, slot);
                self.edges.push(e);
                if self.extend(fi, len, first, after, pinks + usize::from(slot == 0)) {
                    return true;
                }
                self.edges.pop();
                self.path.pop();
                self.factors[fi].covered &= !(1 << w);
                self.used &= !(1 << id);
                if self.out_of_budget {
                    return false;
                }
            }
        }
        false
    }

    fn close(&mut self, fi: usize, len: usize, first: u8, side: u8, pinks: usize) -> bool {
        let cur = *self.path.last().expect("path is non-empty");
        let start = self.path[self.path.len() - len];
        for &(slot, before, after) in steps(self.oriented) {
            if self.oriented && (before != side || after != first) {
                continue;
            }
            if !self.oriented && len >= 3 && (pinks + usize::from(slot == 0)) % 2 == 1 {
                continue;
            }
            let id = self.orbit_of(cur, start, slot);
            if id == NONE || self.used & (1 << id) != 0 {
                continue;
            }
            self.used |= 1 << id;
            let mut edges: Vec<ColouredEdge> = self.edges.drain(self.edges.len() - (len - 1)..).collect();
            edges.push(make_edge(self.oriented, cur, start, slot));
            let vertices: Vec<Vertex> = self.path.drain(self.path.len() - len..).collect();
            self.factors[fi]
                .cycles
                .push(Cycle::new(vertices.clone(), edges.clone()));
            if self.solve(fi) {
                return true;
            }
            self.factors[fi].cycles.pop();
            self.path.extend(vertices);
            edges.pop();
            self.edges.extend(edges);
            self.used &= !(1 << id);
            if self.out_of_budget {
                return false;
            }
        }
        false
    }
}

fn check_arguments(n: usize, t: &CycleType, kind: StarterKind) -> Result<()> {
    if t.n() != n {
        return Err(HopError::InvalidArgument(format!("type {t} does not sum to n={n}")));
    }
    if !(4..=20).contains(&n) {
        return Err(HopError::InvalidArgument(format!(
            "search covers 4 <= n <= 20, got {n}"
        )));
    }
    if !kind.parity_ok(n) {
        return Err(HopError::WrongParity(format!("{kind} starters do not exist for n={n}")));
    }
    if kind == StarterKind::Three && !t.parts().contains(&2) {
        return Err(HopError::InvalidArgument(format!(
            "three-starter search places a 2-cycle in F1, type {t} has none"
        )));
    }
    Ok(())
}

fn orbit_table(n: usize, kind: StarterKind, index: &OrbitIndex) -> Vec<u8> {
    let inf = infinity(n);
    let mut table = vec![NONE; n * n * 4];
    let oriented = kind != StarterKind::One;
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            for &(slot, _, _) in steps(oriented) {
                let e = make_edge(oriented, a, b, slot);
                let pink_at_inf = slot == 0 && (a == inf || b == inf);
                if kind != StarterKind::Three && pink_at_inf && a != 0 && b != 0 {
                    continue;
                }
                if let Some(id) = index.id(&e) {
                    table[(a * n + b) * 4 + slot] = id as u8;
                }
            }
        }
    }
    table
}

/// Searches for a starter of the given kind and type. A `Found` record has
/// passed the full verification chain.
pub fn search_starter(n: usize, t: &CycleType, kind: StarterKind, budget: &SearchBudget) -> Result<SearchOutcome> {
    check_arguments(n, t, kind)?;
    let began = Instant::now();
    let graph = if kind == StarterKind::One {
        GraphKind::TwoFold
    } else {
        GraphKind::FourFold
    };
    let index = OrbitIndex::new(n, graph);
    let h = (n - 1) / 2;
    let all_vertices = (1u32 << n) - 1;
    let mut factors: Vec<FactorState> = (0..kind.factor_count())
        .map(|_| FactorState {
            remaining: t.parts().to_vec(),
            covered: 0,
            cycles: Vec::new(),
        })
        .collect();
    let mut used = 0u64;
    if kind == StarterKind::Three {
        let pink = ColouredEdge::pink(0, h);
        let blue = ColouredEdge::blue(h, 0);
        for e in [pink, blue, ColouredEdge::arc(0, h)] {
            used |= 1 << index.id(&e).expect("middle edges lie in the graph");
        }
        let f1 = &mut factors[0];
        let at = f1.remaining.iter().rposition(|&l| l == 2).expect("type has a 2");
        f1.remaining.remove(at);
        f1.covered = (1 << 0) | (1 << h);
        f1.cycles.push(Cycle::new(vec![0, h], vec![pink, blue]));
    }
    let mut engine = Engine {
        n,
        oriented: kind != StarterKind::One,
        orbit: orbit_table(n, kind, &index),
        orbit_difference: index
            .orbits()
            .iter()
            .map(|o| match o.difference() {
                Difference::Finite(d) => d as u8,
                Difference::Infinity => 0,
            })
            .collect(),
        target: (1u64 << index.len()) - 1,
        used,
        factors,
        all_vertices,
        nodes: 0,
        max_nodes: budget.max_nodes.max(1),
        deadline: began + Duration::from_secs_f64(budget.max_seconds.max(0.0)),
        out_of_budget: false,
        rng: budget.seed.map(ChaCha8Rng::seed_from_u64),
        path: Vec::new(),
        edges: Vec::new(),
    };
    let found = engine.solve(0);
    let stats = SearchStats {
        nodes: engine.nodes,
        elapsed: began.elapsed(),
    };
    if !found {
        return Ok(if engine.out_of_budget {
            SearchOutcome::BudgetExceeded(stats)
        } else {
            SearchOutcome::Exhausted(stats)
        });
    }
    let two_factors: Vec<TwoFactor> = engine
        .factors
        .into_iter()
        .map(|f| TwoFactor::new(n, f.cycles))
        .collect();
    let record = StarterRecord::from_factors(kind, t.clone(), &two_factors);
    let cert = certify(&record, false);
    if !cert.is_ok() {
        return Err(HopError::Verification(format!(
            "search produced {} which fails: {}",
            record.id(),
            cert.report
        )));
    }
    Ok(SearchOutcome::Found(record, stats))
}

/// Kinds to try for a type: the method in the reference table when there is
/// one, otherwise one-starters before two-starters for even `n`.
pub fn kinds_for(t: &CycleType) -> Vec<StarterKind> {
    match reference_method(t) {
        Some(Method::One) => vec![StarterKind::One],
        Some(Method::Two) => vec![StarterKind::Two],
        Some(Method::Three) => vec![StarterKind::Three],
        _ if t.n() % 2 == 1 => vec![StarterKind::Three],
        _ => vec![StarterKind::One, StarterKind::Two],
    }
}

/// Searches every type of `n` that no theorem covers, in parallel. Each type
/// gets the full budget per kind tried.
pub fn search_all(n: usize, budget: &SearchBudget) -> Result<BTreeMap<CycleType, SearchOutcome>> {
    let needed: Vec<CycleType> = cycle_types(n)?
        .into_iter()
        .filter(|t| {
            matches!(
                classify(t),
                Coverage::NeedsStarter(StarterHint::OneOrTwo | StarterHint::Three)
            )
        })
        .collect();
    needed
        .into_par_iter()
        .map(|t| {
            let mut last = None;
            for kind in kinds_for(&t) {
                let outcome = search_starter(n, &t, kind, budget)?;
                let found = matches!(outcome, SearchOutcome::Found(..));
                last = Some(outcome);
                if found {
                    break;
                }
            }
            Ok((t, last.expect("at least one kind")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> CycleType {
        s.parse().unwrap()
    }

    #[test]
    fn finds_small_one_starter() {
        let out = search_starter(10, &ty("8,2"), StarterKind::One, &SearchBudget::default()).unwrap();
        assert!(matches!(out, SearchOutcome::Found(..)), "{out}");
    }

    #[test]
    fn rejects_inconsistent_arguments() {
        let b = SearchBudget::default();
        assert!(search_starter(10, &ty("8,3"), StarterKind::One, &b).is_err());
        assert!(search_starter(11, &ty("9,2"), StarterKind::Two, &b).is_err());
        assert!(search_starter(11, &ty("5,3,3"), StarterKind::Three, &b).is_err());
    }

    #[test]
    fn tiny_budget_is_reported() {
        let b = SearchBudget {
            max_nodes: 3,
            ..SearchBudget::default()
        };
        let out = search_starter(10, &ty("6,4"), StarterKind::Two, &b).unwrap();
        assert!(matches!(out, SearchOutcome::BudgetExceeded(_)));
    }

    #[test]
    fn seeded_search_is_deterministic() {
        let b = SearchBudget {
            seed: Some(7),
            ..SearchBudget::default()
        };
        let t = ty("4,2,2,2");
        let x = search_starter(10, &t, StarterKind::One, &b).unwrap();
        let y = search_starter(10, &t, StarterKind::One, &b).unwrap();
        assert_eq!(x.record(), y.record());
        assert_eq!(x.stats().nodes, y.stats().nodes);
    }
}
