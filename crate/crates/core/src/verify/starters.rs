use std::collections::{BTreeSet, HashMap};

use super::{check_condition_c, Clause, Report};
use crate::error::{HopError, Result};
use crate::factor::TwoFactor;
use crate::model::{Colour, ColouredEdge, Difference, GraphKind, OrbitIndex};

/// Reports structural problems; `false` when the factor is too malformed for
/// the remaining checks to mean anything.
fn structure(report: &mut Report, name: &str, f: &TwoFactor, n: usize) -> bool {
    if f.n != n {
        report.push(Clause::Structure, format!("{name} is over n={}, expected n={n}", f.n));
        return false;
    }
    for p in f.structure_problems() {
        report.push(Clause::Structure, format!("{name}: {p}"));
    }
    f.is_well_formed()
}

fn same_type(report: &mut Report, factors: &[(&str, &TwoFactor)]) {
    let (first_name, first) = factors[0];
    for (name, f) in &factors[1..] {
        if f.lengths() != first.lengths() {
            report.push(
                Clause::CycleType,
                format!(
                    "{name} has lengths {:?}, {first_name} has {:?}",
                    f.lengths(),
                    first.lengths()
                ),
            );
        }
    }
}

fn condition_c(report: &mut Report, name: &str, f: &TwoFactor) {
    for (i, c) in f.cycles.iter().enumerate() {
        match check_condition_c(c) {
            Ok(violations) => {
                for v in violations {
                    report.push(
                        Clause::ConditionC,
                        format!(
                            "{name} cycle {i} at vertex {}: {} then {}",
                            v.vertex, v.incoming, v.outgoing
                        ),
                    );
                }
            }
            Err(e) => report.push(Clause::ConditionC, format!("{name} cycle {i}: {e}")),
        }
    }
}

fn disjoint(report: &mut Report, factors: &[(&str, &TwoFactor)]) {
    for (i, (a_name, a)) in factors.iter().enumerate() {
        let a_edges: BTreeSet<ColouredEdge> = a.edges().map(ColouredEdge::canonical).collect();
        for (b_name, b) in &factors[i + 1..] {
            for e in b.edges().map(ColouredEdge::canonical) {
                if a_edges.contains(&e) {
                    report.push(Clause::Disjoint, format!("{e} lies in both {a_name} and {b_name}"));
                }
            }
        }
    }
}

/// Orbit use counts over the given edges; edges outside the graph are reported.
fn orbit_counts<'a>(
    report: &mut Report,
    clause: Clause,
    index: &OrbitIndex,
    edges: impl Iterator<Item = &'a ColouredEdge>,
) -> Vec<usize> {
    let mut counts = vec![0; index.len()];
    for e in edges {
        match index.id(e) {
            Some(id) => counts[id] += 1,
            None => report.push(clause, format!("{e} is not an edge of the graph")),
        }
    }
    counts
}

fn exactly_once(report: &mut Report, clause: Clause, index: &OrbitIndex, counts: &[usize]) {
    for (id, &count) in counts.iter().enumerate() {
        match count {
            1 => {}
            0 => report.push(clause, format!("orbit {} unused", index.orbit(id))),
            k => report.push(clause, format!("orbit {} used {k} times", index.orbit(id))),
        }
    }
}

/// One-starter conditions over the pink/black two-fold graph: every cycle of
/// length at least 3 has an even number of pink edges, and the factor meets
/// every rotation orbit exactly once.
pub fn check_a(f: &TwoFactor, n: usize) -> Result<Report> {
    if n % 2 == 1 {
        return Err(HopError::WrongParity(format!(
            "one-starter check needs even n, got {n}"
        )));
    }
    let mut report = Report::new();
    if !structure(&mut report, "F", f, n) {
        return Ok(report);
    }
    for (i, c) in f.cycles.iter().enumerate() {
        if c.len() >= 3 && c.pink_count() % 2 == 1 {
            report.push(Clause::A1, format!("cycle {i} has {} pink edges", c.pink_count()));
        }
    }
    let index = OrbitIndex::new(n, GraphKind::TwoFold);
    let counts = orbit_counts(&mut report, Clause::A2, &index, f.edges());
    exactly_once(&mut report, Clause::A2, &index, &counts);
    Ok(report)
}

/// Two-starter conditions: edge-disjoint factors, every cycle satisfying the
/// adjacency rule, and jointly one edge from each orbit of the four-fold
/// graph.
pub fn check_d(f1: &TwoFactor, f2: &TwoFactor, n: usize) -> Report {
    let mut report = Report::new();
    if n % 2 == 1 {
        report.push(Clause::Parity, format!("two-starter check needs even n, got {n}"));
        return report;
    }
    let f1_ok = structure(&mut report, "F1", f1, n);
    let f2_ok = structure(&mut report, "F2", f2, n);
    if !(f1_ok && f2_ok) {
        return report;
    }
    let factors = [("F1", f1), ("F2", f2)];
    same_type(&mut report, &factors);
    disjoint(&mut report, &factors);
    condition_c(&mut report, "F1", f1);
    condition_c(&mut report, "F2", f2);
    let index = OrbitIndex::new(n, GraphKind::FourFold);
    let counts = orbit_counts(&mut report, Clause::D2, &index, f1.edges().chain(f2.edges()));
    exactly_once(&mut report, Clause::D2, &index, &counts);
    report
}

/// Three-starter conditions for odd `n`, with `h = (n - 1) / 2`:
/// pairwise edge-disjoint factors; the adjacency rule on every cycle; no orbit
/// split between `F1 + F2` and `F3`; `F1 + F2` closed under the `h`-th power
/// of the rotation; and a pink and a blue edge of difference `h` in `F1 + F2`.
pub fn check_e(f1: &TwoFactor, f2: &TwoFactor, f3: &TwoFactor, n: usize) -> Result<Report> {
    if n.is_multiple_of(2) {
        return Err(HopError::WrongParity(format!(
            "three-starter check needs odd n, got {n}"
        )));
    }
    let h = (n - 1) / 2;
    let mut report = Report::new();
    let well_formed = [("F1", f1), ("F2", f2), ("F3", f3)]
        .into_iter()
        .fold(true, |ok, (name, f)| structure(&mut report, name, f, n) && ok);
    if !well_formed {
        return Ok(report);
    }
    let factors = [("F1", f1), ("F2", f2), ("F3", f3)];
    same_type(&mut report, &factors);
    disjoint(&mut report, &factors);
    for (name, f) in factors {
        condition_c(&mut report, name, f);
    }

    let index = OrbitIndex::new(n, GraphKind::FourFold);
    let first = orbit_counts(&mut report, Clause::E2, &index, f1.edges().chain(f2.edges()));
    let third = orbit_counts(&mut report, Clause::E2, &index, f3.edges());
    for id in 0..index.len() {
        if first[id] > 0 && third[id] > 0 {
            report.push(Clause::E2, format!("orbit {} meets both F1+F2 and F3", index.orbit(id)));
        }
    }

    let union: HashMap<ColouredEdge, ()> = f1.edges().chain(f2.edges()).map(|e| (e.canonical(), ())).collect();
    for e in f1.edges().chain(f2.edges()) {
        let image = e.rotate(h, n).canonical();
        if !union.contains_key(&image) {
            report.push(Clause::E3, format!("{e} maps to {image}, which is not in F1+F2"));
        }
    }

    let middle = Difference::Finite(h);
    for colour in [Colour::Pink, Colour::Blue] {
        let present = f1
            .edges()
            .chain(f2.edges())
            .any(|e| e.colour == colour && e.difference(n) == middle);
        if !present {
            report.push(
                Clause::E4,
                format!("no {colour:?} edge of difference {h} in F1+F2").to_lowercase(),
            );
        }
    }
    Ok(report)
}
