//! Checkers for starters, expanded factorizations and seating schedules.
//!
//! Every checker accumulates violations instead of stopping at the first one,
//! so a transcription error shows up together with everything it breaks.
//! `Err` is reserved for calls that make no sense at all (wrong parity of
//! `n`, an undirected edge where orientation is required).

use std::fmt;

mod condition;
mod hop;
mod seating;
mod starters;

pub use condition::{adjacent_pair_ok, check_condition_c, AdjacencyViolation};
pub use hop::verify_hop_factorization;
pub use seating::{verify_alternating_factorization, verify_semi_uniform, LiftTable, SeatingSolution};
pub use starters::{check_a, check_d, check_e};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    Structure,
    Parity,
    CycleType,
    ConditionC,
    A1,
    A2,
    D2,
    E2,
    E3,
    E4,
    Disjoint,
    Cardinality,
    Coverage,
    Matching,
    Partition,
    Alternation,
    Multiplicity,
    Lift,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::Structure => "structure",
            Clause::Parity => "parity",
            Clause::CycleType => "cycle-type",
            Clause::ConditionC => "condition-c",
            Clause::A1 => "A1",
            Clause::A2 => "A2",
            Clause::D2 => "D2",
            Clause::E2 => "E2",
            Clause::E3 => "E3",
            Clause::E4 => "E4",
            Clause::Disjoint => "disjoint",
            Clause::Cardinality => "cardinality",
            Clause::Coverage => "coverage",
            Clause::Matching => "matching",
            Clause::Partition => "partition",
            Clause::Alternation => "alternation",
            Clause::Multiplicity => "multiplicity",
            Clause::Lift => "lift",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub clause: Clause,
    pub locus: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.clause, self.locus)
    }
}

/// Accumulated violations; empty means the object passed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, clause: Clause, locus: impl Into<String>) {
        self.violations.push(Violation {
            clause,
            locus: locus.into(),
        });
    }

    pub fn merge(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }

    pub fn has(&self, clause: Clause) -> bool {
        self.violations.iter().any(|v| v.clause == clause)
    }

    pub fn render_text(&self, id: &str) -> String {
        if self.is_ok() {
            return format!("{id}: ok\n");
        }
        let mut out = format!("{id}: {} violation(s)\n", self.violations.len());
        for v in &self.violations {
            out.push_str(&format!("  {v}\n"));
        }
        out
    }

    /// `FAIL <id> <clause> <locus>` per violation.
    pub fn render_porcelain(&self, id: &str) -> String {
        self.violations
            .iter()
            .map(|v| format!("FAIL {id} {} {}\n", v.clause, v.locus))
            .collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(Violation::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}
