use std::collections::HashMap;

use super::{check_condition_c, Clause, Report};
use crate::factor::Factorization;
use crate::model::{all_edges, ColouredEdge, GraphKind};

/// Full check that `d` is a factorization of the four-fold graph into
/// `2n - 2` factors of the declared type, every cycle obeying the adjacency
/// rule. Coverage is checked as an exact multiset: each pair carries one pink
/// edge, one blue edge and the two opposite arcs, nothing else.
pub fn verify_hop_factorization(d: &Factorization) -> Report {
    let n = d.n;
    let mut report = Report::new();
    if n < 4 {
        report.push(Clause::Structure, format!("n={n} is below 4"));
        return report;
    }
    if d.cycle_type.n() != n {
        report.push(
            Clause::CycleType,
            format!("type {} does not sum to n={n}", d.cycle_type),
        );
    }
    if d.factors.len() != 2 * n - 2 {
        report.push(
            Clause::Cardinality,
            format!("{} factors, expected {}", d.factors.len(), 2 * n - 2),
        );
    }

    let mut counts: HashMap<ColouredEdge, usize> = HashMap::new();
    for (k, f) in d.factors.iter().enumerate() {
        if f.n != n {
            report.push(Clause::Structure, format!("factor {k} is over n={}", f.n));
            continue;
        }
        for p in f.structure_problems() {
            report.push(Clause::Structure, format!("factor {k}: {p}"));
        }
        if !f.has_type(&d.cycle_type) {
            report.push(
                Clause::CycleType,
                format!("factor {k} has lengths {:?}, expected {}", f.lengths(), d.cycle_type),
            );
        }
        for (i, c) in f.cycles.iter().enumerate() {
            match check_condition_c(c) {
                Ok(violations) => {
                    for v in violations {
                        report.push(
                            Clause::ConditionC,
                            format!(
                                "factor {k} cycle {i} at vertex {}: {} then {}",
                                v.vertex, v.incoming, v.outgoing
                            ),
                        );
                    }
                }
                Err(e) => report.push(Clause::ConditionC, format!("factor {k} cycle {i}: {e}")),
            }
        }
        for e in f.edges() {
            *counts.entry(e.canonical()).or_default() += 1;
        }
    }

    for e in all_edges(n, GraphKind::FourFold) {
        match counts.remove(&e) {
            Some(1) => {}
            None => report.push(Clause::Coverage, format!("{e} missing")),
            Some(k) => report.push(Clause::Coverage, format!("{e} appears {k} times")),
        }
    }
    let mut stray: Vec<_> = counts.into_iter().collect();
    stray.sort();
    for (e, k) in stray {
        report.push(
            Clause::Coverage,
            format!("{e} ({k}x) is not an edge of the four-fold graph"),
        );
    }
    report
}
