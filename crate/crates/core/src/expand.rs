//! From starters to full factorizations, and from factorizations to seating
//! schedules.

use crate::catalog::CycleType;
use crate::error::{HopError, Result};
use crate::factor::{Cycle, Factorization, TwoFactor};
use crate::format::{StarterKind, StarterRecord};
use crate::model::{Colour, ColouredEdge, Difference, Vertex};
use crate::verify::{
    check_a, check_d, verify_alternating_factorization, verify_semi_uniform, LiftTable, SeatingSolution,
};

/// A starter record paired with the expansion its kind calls for.
#[derive(Debug, Clone)]
pub struct ExpansionPlan {
    pub kind: StarterKind,
    pub n: usize,
    pub source: StarterRecord,
}

impl ExpansionPlan {
    pub fn new(source: StarterRecord) -> Result<Self> {
        if !source.kind.parity_ok(source.n) {
            return Err(HopError::WrongParity(format!(
                "{} starters need {} n, got n={}",
                source.kind,
                if source.n.is_multiple_of(2) { "odd" } else { "even" },
                source.n
            )));
        }
        Ok(ExpansionPlan {
            kind: source.kind,
            n: source.n,
            source,
        })
    }

    pub fn starters(&self) -> Result<Vec<TwoFactor>> {
        complete_starters(self.kind, self.n, &self.source.two_factors())
    }

    pub fn expand(&self) -> Result<Factorization> {
        expand_starters(self.kind, self.n, &self.source.two_factors())
    }
}

/// The starter factors in expansion order, `[F]`, `[F1, F2]` or
/// `[F1, F2, F3]`, from the factors a record lists (`F1` and `F3` for
/// three-starters, with `F2` derived here).
pub fn complete_starters(kind: StarterKind, n: usize, listed: &[TwoFactor]) -> Result<Vec<TwoFactor>> {
    if listed.len() != kind.factor_count() {
        return Err(HopError::Structure(format!(
            "{kind} starters list {} factors, found {}",
            kind.factor_count(),
            listed.len()
        )));
    }
    let mut factors = listed.to_vec();
    if kind == StarterKind::Three {
        let f2 = derive_f2(&factors[0], n)?;
        factors.insert(1, f2);
    }
    Ok(factors)
}

pub fn expand_starters(kind: StarterKind, n: usize, listed: &[TwoFactor]) -> Result<Factorization> {
    let factors = complete_starters(kind, n, listed)?;
    match kind {
        StarterKind::One => {
            let (f1, f2) = one_to_two(&factors[0], n)?;
            expand_two(&f1, &f2, n)
        }
        StarterKind::Two => expand_two(&factors[0], &factors[1], n),
        StarterKind::Three => expand_three(&factors[0], &factors[1], &factors[2], n),
    }
}

fn is_middle_pink_blue(c: &Cycle, n: usize) -> bool {
    let h = (n - 1) / 2;
    let mut colours: Vec<Colour> = c.edges.iter().map(|e| e.colour).collect();
    colours.sort();
    c.len() == 2
        && colours == [Colour::Pink, Colour::Blue]
        && c.edges.iter().all(|e| e.difference(n) == Difference::Finite(h))
}

/// `F2` of a three-starter: `F1` turned by half a revolution, with the image
/// of its pink and blue 2-cycle of difference `(n - 1) / 2` replaced by the
/// two opposite black arcs on the same pair.
pub fn derive_f2(f1: &TwoFactor, n: usize) -> Result<TwoFactor> {
    if n.is_multiple_of(2) {
        return Err(HopError::WrongParity(format!("deriving F2 needs odd n, got {n}")));
    }
    let h = (n - 1) / 2;
    let special: Vec<usize> = (0..f1.cycles.len())
        .filter(|&i| is_middle_pink_blue(&f1.cycles[i], n))
        .collect();
    let index = match special.as_slice() {
        [] => {
            return Err(HopError::Structure(format!(
                "F1 has no 2-cycle of a pink and a blue edge of difference {h}"
            )))
        }
        [i] => *i,
        _ => {
            return Err(HopError::Ambiguous(format!(
                "F1 has {} pink and blue 2-cycles of difference {h}",
                special.len()
            )))
        }
    };
    let mut f2 = f1.rotate(h);
    let pair = &f2.cycles[index].vertices;
    let (a, b) = (pair[0], pair[1]);
    f2.cycles[index] = Cycle::new(vec![a, b], vec![ColouredEdge::arc(a, b), ColouredEdge::arc(b, a)]);
    Ok(f2)
}

/// Traversal order for a one-starter cycle: from its lowest vertex toward the
/// lower of that vertex's two neighbours.
fn traversal(c: &Cycle) -> Vec<(Vertex, Vertex, Colour)> {
    let len = c.len();
    let start = (0..len).min_by_key(|&i| c.vertices[i]).unwrap_or(0);
    let next = c.vertices[(start + 1) % len];
    let prev = c.vertices[(start + len - 1) % len];
    let steps: Vec<usize> = if next <= prev {
        (0..len).map(|k| (start + k) % len).collect()
    } else {
        (0..len).map(|k| (start + len - 1 - k) % len).collect()
    };
    let forward = next <= prev;
    steps
        .into_iter()
        .map(|i| {
            let e = c.edges[i];
            let (a, b) = if forward {
                (c.vertices[i], c.vertices[(i + 1) % len])
            } else {
                (c.vertices[(i + 1) % len], c.vertices[i])
            };
            (a, b, e.colour)
        })
        .collect()
}

/// Colours and orients one cycle of a one-starter.
///
/// Walking the cycle, a side bit is carried from edge to edge: pink flips it
/// from 0 to 1, blue from 1 to 0, an arc followed along its direction keeps 1
/// and an arc followed against it keeps 0. Consecutive edges obey the
/// adjacency rule exactly when the bit carries over unchanged, so pink edges
/// are recoloured by the bit and black edges oriented by it.
fn orient_cycle(c: &Cycle) -> Cycle {
    let steps = traversal(c);
    let all_black = steps.iter().all(|s| s.2 != Colour::Pink);
    let mut side = if all_black { 1 } else { 0 };
    let mut vertices = Vec::with_capacity(steps.len());
    let mut edges = Vec::with_capacity(steps.len());
    for (a, b, colour) in steps {
        vertices.push(a);
        let e = match (colour, side) {
            (Colour::Pink, 0) => {
                side = 1;
                ColouredEdge::pink(a, b)
            }
            (Colour::Pink, _) => {
                side = 0;
                ColouredEdge::blue(a, b)
            }
            (_, 1) => ColouredEdge::arc(a, b),
            _ => ColouredEdge::arc(b, a),
        };
        edges.push(e);
    }
    Cycle::new(vertices, edges)
}

/// Two-starter from a one-starter.
///
/// Cycles of length at least 3 are oriented by [`orient_cycle`] into `F1` and
/// conjugated into `F2`. A pink and black 2-cycle cannot be oriented on its
/// own (an arc cannot leave both of its ends), so `F1` takes the pink and
/// blue 2-cycle on that pair and `F2` the two opposite arcs. The result must
/// pass the two-starter check.
pub fn one_to_two(f: &TwoFactor, n: usize) -> Result<(TwoFactor, TwoFactor)> {
    let a = check_a(f, n)?;
    if !a.is_ok() {
        return Err(HopError::Verification(format!("not a one-starter: {a}")));
    }
    let mut c1 = Vec::with_capacity(f.cycles.len());
    let mut c2 = Vec::with_capacity(f.cycles.len());
    for c in &f.cycles {
        if c.len() == 2 {
            let (u, v) = (c.vertices[0], c.vertices[1]);
            c1.push(Cycle::new(
                vec![u, v],
                vec![ColouredEdge::pink(u, v), ColouredEdge::blue(v, u)],
            ));
            c2.push(Cycle::new(
                vec![u, v],
                vec![ColouredEdge::arc(u, v), ColouredEdge::arc(v, u)],
            ));
        } else {
            let oriented = orient_cycle(c);
            c2.push(oriented.conjugate());
            c1.push(oriented);
        }
    }
    let f1 = TwoFactor::new(n, c1);
    let f2 = TwoFactor::new(n, c2);
    let d = check_d(&f1, &f2, n);
    if !d.is_ok() {
        return Err(HopError::Reconstruction(format!(
            "two-starter from one-starter fails: {d}"
        )));
    }
    Ok((f1, f2))
}

fn cycle_type_of(f: &TwoFactor) -> Result<CycleType> {
    CycleType::new(f.lengths())
}

/// `rho^i F1` and `rho^i F2` for every `i` in `0..n-1`.
pub fn expand_two(f1: &TwoFactor, f2: &TwoFactor, n: usize) -> Result<Factorization> {
    let cycle_type = cycle_type_of(f1)?;
    let mut factors = Vec::with_capacity(2 * (n - 1));
    for i in 0..n - 1 {
        factors.push(f1.rotate(i));
        factors.push(f2.rotate(i));
    }
    Ok(Factorization { n, cycle_type, factors })
}

/// `rho^i F1` and `rho^i F2` for `i` below `(n - 1) / 2`, then `rho^i F3` for
/// every `i` in `0..n-1`.
pub fn expand_three(f1: &TwoFactor, f2: &TwoFactor, f3: &TwoFactor, n: usize) -> Result<Factorization> {
    if n.is_multiple_of(2) {
        return Err(HopError::WrongParity(format!(
            "three-starter expansion needs odd n, got {n}"
        )));
    }
    let cycle_type = cycle_type_of(f1)?;
    let h = (n - 1) / 2;
    let mut factors = Vec::with_capacity(2 * n - 2);
    for i in 0..h {
        factors.push(f1.rotate(i));
        factors.push(f2.rotate(i));
    }
    factors.extend((0..n - 1).map(|i| f3.rotate(i)));
    Ok(Factorization { n, cycle_type, factors })
}

/// The guests an edge is seated between: `(guest at e.u, guest at e.v)`.
fn lift_edge(e: &ColouredEdge, table: LiftTable) -> (usize, usize) {
    let (su, sv) = match e.colour {
        Colour::Pink => (0, 0),
        Colour::Blue => (1, 1),
        Colour::Arc => (1, 0),
        Colour::Black => (0, 1),
    };
    let flip = usize::from(table == LiftTable::Swapped);
    (2 * e.u + (su ^ flip), 2 * e.v + (sv ^ flip))
}

/// Guest sitting at couple `x` on edge `e`.
fn guest_at(e: &ColouredEdge, x: Vertex, table: LiftTable) -> usize {
    let (gu, gv) = lift_edge(e, table);
    if e.u == x {
        gu
    } else {
        gv
    }
}

fn lift_cycle(c: &Cycle, table: LiftTable) -> Result<Vec<usize>> {
    let len = c.len();
    let mut guests = Vec::with_capacity(2 * len);
    for i in 0..len {
        let x = c.vertices[i];
        let enter = guest_at(&c.edges[(i + len - 1) % len], x, table);
        let leave = guest_at(&c.edges[i], x, table);
        if enter == leave {
            return Err(HopError::LiftConvention(format!(
                "{table} table seats guest {enter} on both sides at couple {x}"
            )));
        }
        guests.push(enter);
        guests.push(leave);
    }
    Ok(guests)
}

/// Lifts with a fixed colour table, without checking the result.
pub fn lift_with(d: &Factorization, table: LiftTable) -> Result<SeatingSolution> {
    if d.factors.iter().flat_map(|f| f.edges()).any(|e| !e.is_oriented()) {
        return Err(HopError::Unoriented("lifting needs every black edge oriented".into()));
    }
    let rounds = d
        .factors
        .iter()
        .map(|f| {
            f.cycles
                .iter()
                .map(|c| lift_cycle(c, table))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SeatingSolution::new(d.n, d.cycle_type.doubled(), table, rounds))
}

/// Seating schedule for a factorization. The standard colour table is tried
/// first and the swapped one second; whichever is returned has passed both
/// seating verifiers.
pub fn lift(d: &Factorization) -> Result<SeatingSolution> {
    let type2x = d.cycle_type.doubled();
    let mut failures = Vec::new();
    for table in [LiftTable::Standard, LiftTable::Swapped] {
        let s = match lift_with(d, table) {
            Ok(s) => s,
            Err(e) => {
                failures.push(e.to_string());
                continue;
            }
        };
        let mut report = verify_alternating_factorization(&s, &type2x);
        report.merge(verify_semi_uniform(&s.one_factorization(), 2 * d.n, &type2x));
        if report.is_ok() {
            return Ok(s);
        }
        failures.push(format!("{table} table: {report}"));
    }
    Err(HopError::LiftConvention(failures.join("; ")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::check_condition_c;

    #[test]
    fn derive_f2_middle_pair_maps_to_itself() {
        // n = 11: rho^5 sends {0,5} to {5,0}
        let f1 = TwoFactor::new(
            11,
            vec![Cycle::new(
                vec![0, 5],
                vec![ColouredEdge::pink(0, 5), ColouredEdge::blue(5, 0)],
            )],
        );
        let f2 = derive_f2(&f1, 11).unwrap();
        assert_eq!(f2.cycles[0].vertices, vec![5, 0]);
        assert!(f2.cycles[0].edges.iter().all(|e| e.colour == Colour::Arc));
        assert!(check_condition_c(&f2.cycles[0]).unwrap().is_empty());
    }

    #[test]
    fn derive_f2_needs_odd_n() {
        let f1 = TwoFactor::new(10, vec![]);
        assert!(matches!(derive_f2(&f1, 10), Err(HopError::WrongParity(_))));
    }

    #[test]
    fn all_black_cycle_becomes_directed() {
        let c = Cycle::new(
            vec![3, 1, 4, 2],
            vec![
                ColouredEdge::black(3, 1),
                ColouredEdge::black(1, 4),
                ColouredEdge::black(4, 2),
                ColouredEdge::black(2, 3),
            ],
        );
        let o = orient_cycle(&c);
        assert_eq!(o.vertices, vec![1, 3, 2, 4]);
        assert!(check_condition_c(&o).unwrap().is_empty());
        assert!(check_condition_c(&o.conjugate()).unwrap().is_empty());
        for (i, e) in o.edges.iter().enumerate() {
            assert_eq!((e.u, e.v), (o.vertices[i], o.vertices[(i + 1) % 4]));
        }
    }

    #[test]
    fn mixed_cycle_alternates_pink_and_blue() {
        let c = Cycle::new(
            vec![0, 2, 5, 7],
            vec![
                ColouredEdge::pink(0, 2),
                ColouredEdge::black(2, 5),
                ColouredEdge::pink(5, 7),
                ColouredEdge::black(7, 0),
            ],
        );
        let o = orient_cycle(&c);
        let colours: Vec<Colour> = o.edges.iter().map(|e| e.colour).collect();
        assert_eq!(colours, [Colour::Pink, Colour::Arc, Colour::Blue, Colour::Arc]);
        assert!(check_condition_c(&o).unwrap().is_empty());
    }

    #[test]
    fn lift_edges_of_a_pair_are_distinct() {
        let edges = [
            ColouredEdge::pink(1, 3),
            ColouredEdge::blue(1, 3),
            ColouredEdge::arc(1, 3),
            ColouredEdge::arc(3, 1),
        ];
        let mut seen: Vec<(usize, usize)> = edges
            .iter()
            .map(|e| {
                let (a, b) = lift_edge(e, LiftTable::Standard);
                (a.min(b), a.max(b))
            })
            .collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen, vec![(2, 6), (2, 7), (3, 6), (3, 7)]);
    }
}
