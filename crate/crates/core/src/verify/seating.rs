use std::collections::HashMap;
use std::fmt;

use super::{Clause, Report};
use crate::catalog::CycleType;

pub type Guest = usize;

/// Colour table used to lift coloured edges onto couples.
///
/// `Standard` sends pink `{x,y}` to `{2x,2y}`, blue to `{2x+1,2y+1}` and the
/// arc `x -> y` to `{2x+1,2y}`. `Swapped` exchanges the two spouses of every
/// couple throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LiftTable {
    Standard,
    Swapped,
}

impl fmt::Display for LiftTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LiftTable::Standard => "standard",
            LiftTable::Swapped => "swapped",
        })
    }
}

/// A seating schedule for `n_couples` couples: each round is a list of tables,
/// each table a cyclic sequence of guests. Couple `x` is guests `2x` and
/// `2x + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeatingSolution {
    pub n_couples: usize,
    /// Table sizes, in guests.
    pub cycle_type: CycleType,
    pub table: LiftTable,
    pub i_factor: Vec<(Guest, Guest)>,
    pub rounds: Vec<Vec<Vec<Guest>>>,
}

impl SeatingSolution {
    pub fn new(n_couples: usize, cycle_type: CycleType, table: LiftTable, rounds: Vec<Vec<Vec<Guest>>>) -> Self {
        SeatingSolution {
            n_couples,
            cycle_type,
            table,
            i_factor: (0..n_couples).map(|x| (2 * x, 2 * x + 1)).collect(),
            rounds,
        }
    }

    /// The spouse matching followed by the non-spouse edges of each round.
    /// Meaningful only when every table alternates spouse and non-spouse
    /// edges.
    pub fn one_factorization(&self) -> Vec<Vec<(Guest, Guest)>> {
        let mut out = vec![self.i_factor.clone()];
        for round in &self.rounds {
            let mut matching = Vec::new();
            for table in round {
                for (a, b) in cyclic_pairs(table) {
                    if !is_spouse(a, b) {
                        matching.push(ordered(a, b));
                    }
                }
            }
            matching.sort_unstable();
            out.push(matching);
        }
        out
    }
}

fn is_spouse(a: Guest, b: Guest) -> bool {
    a != b && a / 2 == b / 2
}

fn ordered(a: Guest, b: Guest) -> (Guest, Guest) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn cyclic_pairs(table: &[Guest]) -> impl Iterator<Item = (Guest, Guest)> + '_ {
    let len = table.len();
    (0..len).map(move |i| (table[i], table[(i + 1) % len]))
}

fn sorted_desc(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Checks a schedule against the definition: `2n - 2` rounds, each seating
/// every guest once at tables of the given sizes, every table alternating
/// spouse and non-spouse edges, and across all rounds each spouse pair
/// adjacent `2n - 2` times and every other pair exactly once.
pub fn verify_alternating_factorization(s: &SeatingSolution, cycle_type2x: &CycleType) -> Report {
    let mut report = Report::new();
    let n = s.n_couples;
    let guests = 2 * n;
    if n < 2 {
        report.push(Clause::Structure, format!("{n} couples"));
        return report;
    }
    if cycle_type2x.n() != guests {
        report.push(
            Clause::CycleType,
            format!("type {cycle_type2x} does not seat {guests} guests"),
        );
    }
    if s.rounds.len() != 2 * n - 2 {
        report.push(
            Clause::Cardinality,
            format!("{} rounds, expected {}", s.rounds.len(), 2 * n - 2),
        );
    }

    let mut multiplicity: HashMap<(Guest, Guest), usize> = HashMap::new();
    for (r, round) in s.rounds.iter().enumerate() {
        let mut seen = vec![0usize; guests];
        for (t, table) in round.iter().enumerate() {
            if table.len() < 3 {
                report.push(
                    Clause::Structure,
                    format!("round {} table {t} seats {} guests", r + 1, table.len()),
                );
            }
            for &g in table {
                match seen.get_mut(g) {
                    Some(count) => *count += 1,
                    None => report.push(Clause::Structure, format!("round {} seats unknown guest {g}", r + 1)),
                }
            }
            if table.len() % 2 == 1 {
                report.push(Clause::Alternation, format!("round {} table {t} has odd length", r + 1));
            }
            let pairs: Vec<_> = cyclic_pairs(table).collect();
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if a == b {
                    report.push(
                        Clause::Structure,
                        format!("round {} table {t} repeats guest {a}", r + 1),
                    );
                    continue;
                }
                *multiplicity.entry(ordered(a, b)).or_default() += 1;
                let (c, d) = pairs[(i + 1) % pairs.len()];
                if pairs.len() > 1 && is_spouse(a, b) == is_spouse(c, d) {
                    let kind = if is_spouse(a, b) { "spouse" } else { "non-spouse" };
                    report.push(
                        Clause::Alternation,
                        format!("round {} table {t}: {a}-{b} and {c}-{d} are both {kind} edges", r + 1),
                    );
                }
            }
        }
        for (g, &count) in seen.iter().enumerate() {
            if count != 1 {
                report.push(
                    Clause::Structure,
                    format!("round {} seats guest {g} {count} times", r + 1),
                );
            }
        }
        let lengths = sorted_desc(round.iter().map(Vec::len).collect());
        if lengths != cycle_type2x.parts() {
            report.push(
                Clause::CycleType,
                format!("round {} has tables {lengths:?}, expected {cycle_type2x}", r + 1),
            );
        }
    }

    for a in 0..guests {
        for b in a + 1..guests {
            let expected = if is_spouse(a, b) { 2 * n - 2 } else { 1 };
            let found = multiplicity.remove(&(a, b)).unwrap_or(0);
            if found != expected {
                report.push(
                    Clause::Multiplicity,
                    format!("{a}-{b} adjacent {found} times, expected {expected}"),
                );
            }
        }
    }
    let mut stray: Vec<_> = multiplicity.into_iter().collect();
    stray.sort_unstable();
    for ((a, b), k) in stray {
        report.push(Clause::Multiplicity, format!("{a}-{b} ({k}x) joins unknown guests"));
    }
    report
}

/// Cycle lengths of the union of two perfect matchings, or `None` when they
/// share an edge or are not matchings on `0..guests`.
fn union_lengths(a: &[(Guest, Guest)], b: &[(Guest, Guest)], guests: usize) -> Option<Vec<usize>> {
    let mut mate_a = vec![usize::MAX; guests];
    let mut mate_b = vec![usize::MAX; guests];
    for (mate, m) in [(&mut mate_a, a), (&mut mate_b, b)] {
        for &(x, y) in m {
            if x >= guests || y >= guests {
                return None;
            }
            mate[x] = y;
            mate[y] = x;
        }
    }
    let mut done = vec![false; guests];
    let mut lengths = Vec::new();
    for start in 0..guests {
        if done[start] {
            continue;
        }
        let mut x = start;
        let mut len = 0;
        loop {
            done[x] = true;
            let y = mate_a[x];
            if y == usize::MAX || mate_b[x] == y {
                return None;
            }
            done[y] = true;
            len += 2;
            x = mate_b[y];
            if x == usize::MAX {
                return None;
            }
            if x == start {
                break;
            }
        }
        lengths.push(len);
    }
    Some(sorted_desc(lengths))
}

/// Checks that `factors` is a 1-factorization of the complete graph on
/// `two_n` vertices in which the first factor together with any other one
/// forms cycles of the given lengths.
pub fn verify_semi_uniform(factors: &[Vec<(Guest, Guest)>], two_n: usize, cycle_type2x: &CycleType) -> Report {
    let mut report = Report::new();
    if two_n < 2 || two_n % 2 == 1 {
        report.push(
            Clause::Structure,
            format!("{two_n} vertices cannot be perfectly matched"),
        );
        return report;
    }
    if factors.len() != two_n - 1 {
        report.push(
            Clause::Cardinality,
            format!("{} matchings, expected {}", factors.len(), two_n - 1),
        );
    }

    let mut perfect = vec![true; factors.len()];
    let mut count: HashMap<(Guest, Guest), usize> = HashMap::new();
    for (i, m) in factors.iter().enumerate() {
        let mut degree = vec![0usize; two_n];
        for &(x, y) in m {
            if x >= two_n || y >= two_n || x == y {
                report.push(Clause::Matching, format!("matching {i} has invalid edge {x}-{y}"));
                perfect[i] = false;
                continue;
            }
            degree[x] += 1;
            degree[y] += 1;
            *count.entry(ordered(x, y)).or_default() += 1;
        }
        for (v, &d) in degree.iter().enumerate() {
            if d != 1 {
                report.push(Clause::Matching, format!("matching {i} covers vertex {v} {d} times"));
                perfect[i] = false;
            }
        }
    }

    for a in 0..two_n {
        for b in a + 1..two_n {
            match count.get(&(a, b)).copied().unwrap_or(0) {
                1 => {}
                k => report.push(Clause::Partition, format!("edge {a}-{b} lies in {k} matchings")),
            }
        }
    }

    if factors.first().is_some_and(|_| perfect[0]) {
        for i in 1..factors.len() {
            if !perfect[i] {
                continue;
            }
            match union_lengths(&factors[0], &factors[i], two_n) {
                Some(lengths) if lengths == cycle_type2x.parts() => {}
                Some(lengths) => report.push(
                    Clause::CycleType,
                    format!("matchings 0 and {i} form cycles {lengths:?}, expected {cycle_type2x}"),
                ),
                None => report.push(Clause::CycleType, format!("matchings 0 and {i} share an edge")),
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_robin_k4() -> Vec<Vec<(Guest, Guest)>> {
        vec![vec![(0, 1), (2, 3)], vec![(0, 2), (1, 3)], vec![(0, 3), (1, 2)]]
    }

    #[test]
    fn k4_round_robin_is_semi_uniform() {
        let t = CycleType::new(vec![4]).unwrap();
        assert!(verify_semi_uniform(&round_robin_k4(), 4, &t).is_ok());
    }

    #[test]
    fn duplicate_matching_breaks_partition() {
        let t = CycleType::new(vec![4]).unwrap();
        let mut f = round_robin_k4();
        f[2] = f[1].clone();
        let r = verify_semi_uniform(&f, 4, &t);
        assert!(r.has(Clause::Partition));
    }

    // Two couples, two rounds: the only schedule is the 4-cycle seated twice
    // with the non-spouse pairs swapped.
    fn two_couples() -> SeatingSolution {
        let t = CycleType::new(vec![4]).unwrap();
        SeatingSolution::new(
            2,
            t,
            LiftTable::Standard,
            vec![vec![vec![0, 1, 3, 2]], vec![vec![0, 1, 2, 3]]],
        )
    }

    #[test]
    fn two_couple_schedule() {
        let s = two_couples();
        let t = CycleType::new(vec![4]).unwrap();
        assert!(verify_alternating_factorization(&s, &t).is_ok());
        assert!(verify_semi_uniform(&s.one_factorization(), 4, &t).is_ok());
    }

    #[test]
    fn consecutive_non_spouse_edges_fail() {
        let mut s = two_couples();
        s.rounds[1] = vec![vec![0, 2, 1, 3]];
        let t = CycleType::new(vec![4]).unwrap();
        let r = verify_alternating_factorization(&s, &t);
        assert!(r.has(Clause::Alternation));
    }

    #[test]
    fn extra_round_breaks_multiplicity() {
        let mut s = two_couples();
        s.rounds.push(s.rounds[0].clone());
        let t = CycleType::new(vec![4]).unwrap();
        let r = verify_alternating_factorization(&s, &t);
        assert!(r.has(Clause::Multiplicity));
        assert!(r.has(Clause::Cardinality));
    }
}
