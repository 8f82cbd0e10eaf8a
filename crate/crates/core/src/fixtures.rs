//! Starter records shipped with the crate, one file per appendix.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::catalog::{CycleType, FixtureStatus};
use crate::chain::certify;
use crate::format::{parse_starter_file, StarterRecord};

/// `(name, text)` for every shipped fixture file, ordered by `n`.
pub const FILES: &[(&str, &str)] = &[
    ("appendix_b", include_str!("../fixtures/appendix_b.txt")),
    ("appendix_c", include_str!("../fixtures/appendix_c.txt")),
    ("appendix_d", include_str!("../fixtures/appendix_d.txt")),
    ("appendix_e", include_str!("../fixtures/appendix_e.txt")),
    ("appendix_f", include_str!("../fixtures/appendix_f.txt")),
    ("appendix_g", include_str!("../fixtures/appendix_g.txt")),
    ("appendix_h", include_str!("../fixtures/appendix_h.txt")),
    ("appendix_i", include_str!("../fixtures/appendix_i.txt")),
    ("appendix_j", include_str!("../fixtures/appendix_j.txt")),
    ("appendix_k", include_str!("../fixtures/appendix_k.txt")),
    ("appendix_l", include_str!("../fixtures/appendix_l.txt")),
];

/// The files for n = 10, 11 and 12.
pub const MANDATORY: &[&str] = &["appendix_b", "appendix_c", "appendix_d"];

pub fn file(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(f, _)| *f == name).map(|(_, text)| *text)
}

/// Parsed records of one file. Shipped files always parse.
pub fn records(name: &str) -> Option<Vec<StarterRecord>> {
    file(name).map(|text| parse_starter_file(text).expect("shipped fixture parses"))
}

pub fn all_records() -> Vec<StarterRecord> {
    FILES
        .iter()
        .flat_map(|(_, text)| parse_starter_file(text).expect("shipped fixture parses"))
        .collect()
}

pub fn records_for(n: usize) -> Vec<StarterRecord> {
    all_records().into_iter().filter(|r| r.n == n).collect()
}

/// Status of the shipped fixture for each type of `n` that has one, after
/// running the full chain without the lift.
pub fn fixture_index(n: usize) -> BTreeMap<CycleType, FixtureStatus> {
    records_for(n)
        .par_iter()
        .map(|r| {
            let cert = certify(r, false);
            let status = if cert.is_ok() {
                FixtureStatus::Verified
            } else {
                FixtureStatus::Failed(cert.report.to_string())
            };
            (r.cycle_type.clone(), status)
        })
        .collect()
}
