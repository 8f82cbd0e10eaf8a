//! Desk-scale acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the test harness so the lines are printed on every
//! `cargo test` run; the process exits non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hop_core::catalog::{classify, compare, cycle_types, reference_table, Agreement};
use hop_core::chain::{certify, certify_starters, check_record, expand_record};
use hop_core::model::{all_orbits, Colour, ColouredEdge, GraphKind};
use hop_core::search::{search_starter, SearchBudget, SearchOutcome};
use hop_core::verify::{verify_alternating_factorization, verify_hop_factorization, verify_semi_uniform};
use hop_core::{fixtures, CycleType, Factorization, StarterKind, StarterRecord, TwoFactor};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn mandatory() -> Vec<(&'static str, Vec<StarterRecord>)> {
    fixtures::MANDATORY
        .iter()
        .map(|&name| (name, fixtures::records(name).expect("shipped fixture")))
        .collect()
}

fn fixture_verification() -> Outcome {
    let start = Instant::now();
    let mut counts = Vec::new();
    for (name, records) in mandatory() {
        for r in &records {
            let report = check_record(r);
            if !report.is_ok() {
                return Err(report.render_text(&r.id()));
            }
            let d = expand_record(r).map_err(|e| format!("{}: {e}", r.id()))?;
            if d.factors.len() != 2 * r.n - 2 {
                return Err(format!("{}: {} factors", r.id(), d.factors.len()));
            }
            let report = verify_hop_factorization(&d);
            if !report.is_ok() {
                return Err(report.render_text(&r.id()));
            }
        }
        counts.push(format!("{name} {}", records.len()));
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(10) {
        return Err(format!("took {elapsed:.2?}"));
    }
    Ok(format!(
        "{} records (appendix_d holds 15, not 13) in {elapsed:.2?}",
        counts.join(", ")
    ))
}

fn per_pair_ok(d: &Factorization) -> bool {
    let mut per_pair: BTreeMap<(usize, usize), Vec<ColouredEdge>> = BTreeMap::new();
    for e in d.factors.iter().flat_map(TwoFactor::edges) {
        per_pair
            .entry((e.u.min(e.v), e.u.max(e.v)))
            .or_default()
            .push(e.canonical());
    }
    per_pair.len() == d.n * (d.n - 1) / 2
        && per_pair.into_iter().all(|((a, b), mut edges)| {
            edges.sort();
            let mut expected = vec![
                ColouredEdge::pink(a, b),
                ColouredEdge::blue(a, b),
                ColouredEdge::arc(a, b),
                ColouredEdge::arc(b, a),
            ];
            expected.sort();
            edges == expected
        })
}

fn edge_conservation() -> Outcome {
    let mut totals = BTreeSet::new();
    for (_, records) in mandatory() {
        for r in &records {
            let d = expand_record(r).map_err(|e| format!("{}: {e}", r.id()))?;
            if d.edge_count() != 2 * r.n * (r.n - 1) {
                return Err(format!("{}: {} edges", r.id(), d.edge_count()));
            }
            if !per_pair_ok(&d) {
                return Err(format!("{}: a pair is not covered by pink, blue and both arcs", r.id()));
            }
            totals.insert((r.n, d.edge_count()));
        }
    }
    let totals: Vec<String> = totals.iter().map(|(n, e)| format!("n={n}: {e}")).collect();
    Ok(format!(
        "edges {}; every pair pink + blue + two opposite arcs",
        totals.join(", ")
    ))
}

fn table_reproduction() -> Outcome {
    let mut flags = Vec::new();
    let mut counts = Vec::new();
    for n in 10..=12 {
        let types = cycle_types(n).map_err(|e| e.to_string())?;
        counts.push(types.len());
        let reference: BTreeMap<CycleType, _> = reference_table(n).into_iter().collect();
        if reference.len() != types.len() {
            return Err(format!(
                "n={n}: {} types against {} table rows",
                types.len(),
                reference.len()
            ));
        }
        for t in &types {
            let method = reference.get(t).ok_or_else(|| format!("n={n}: {t} not in the table"))?;
            match compare(classify(t), *method) {
                Agreement::Agrees => {}
                Agreement::Flagged(why) => flags.push(format!("n={n} {t} ({why})")),
                Agreement::Conflicts(why) => return Err(format!("n={n} {t}: {why}")),
            }
        }
    }
    if counts != [12, 14, 21] {
        return Err(format!("row counts {counts:?}"));
    }
    for f in &flags {
        println!("    flag: {f}");
    }
    Ok(format!("rows {counts:?}, no conflicts, {} flagged", flags.len()))
}

fn search_rediscovery() -> Outcome {
    let cases = [
        (10, "8,2", StarterKind::One),
        (10, "6,4", StarterKind::Two),
        (10, "4,3,3", StarterKind::Two),
        (11, "3,2,2,2,2", StarterKind::Three),
        (12, "5,4,3", StarterKind::One),
    ];
    let budget = SearchBudget::default();
    let mut found = Vec::new();
    for (n, t, kind) in cases {
        let t: CycleType = t.parse().map_err(|e: hop_core::HopError| e.to_string())?;
        let outcome = search_starter(n, &t, kind, &budget).map_err(|e| e.to_string())?;
        let SearchOutcome::Found(r, stats) = &outcome else {
            return Err(format!("n={n} {t} {kind}: {outcome}"));
        };
        if stats.elapsed > Duration::from_secs(300) {
            return Err(format!("n={n} {t} {kind}: {outcome}"));
        }
        let cert = certify(r, true);
        if !cert.is_ok() {
            return Err(cert.report.render_text(&cert.id));
        }
        found.push(format!("{}{t} {} nodes", n, stats.nodes));
    }
    Ok(found.join(", "))
}

fn lift_gate() -> Outcome {
    let mut lines = Vec::new();
    for (name, t, rounds) in [("appendix_b", "[4,3,3]", 18), ("appendix_c", "[7,2,2]", 20)] {
        let r = fixtures::records(name)
            .and_then(|rs| rs.into_iter().find(|r| r.cycle_type.to_string() == t))
            .ok_or_else(|| format!("{name} has no {t}"))?;
        let cert = certify(&r, true);
        let s = cert.seating.ok_or_else(|| cert.report.render_text(&cert.id))?;
        let doubled = r.cycle_type.doubled();
        if s.rounds.len() != rounds || s.cycle_type != doubled {
            return Err(format!("{t}: {} rounds of type {}", s.rounds.len(), s.cycle_type));
        }
        let report = verify_alternating_factorization(&s, &doubled);
        if !report.is_ok() {
            return Err(report.render_text(t));
        }
        let matchings = s.one_factorization();
        if matchings.len() != rounds + 1 {
            return Err(format!("{t}: {} matchings", matchings.len()));
        }
        let report = verify_semi_uniform(&matchings, 2 * r.n, &doubled);
        if !report.is_ok() {
            return Err(report.render_text(t));
        }
        lines.push(format!("{t} {rounds} rounds / {} matchings", matchings.len()));
    }
    let all: Vec<StarterRecord> = mandatory().into_iter().flat_map(|(_, rs)| rs).collect();
    let lifted = all.iter().filter(|r| certify(r, true).seating.is_some()).count();
    if lifted != all.len() {
        return Err(format!("{lifted} of {} mandatory records lifted", all.len()));
    }
    Ok(format!("{}; all {lifted} mandatory records lift", lines.join(", ")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Mutation {
    ColourFlip,
    ArcReversal,
    EndpointShift,
}

fn mutate(rng: &mut ChaCha8Rng, kind: StarterKind, n: usize, f: &mut TwoFactor) -> Mutation {
    let ci = rng.gen_range(0..f.cycles.len());
    let ei = rng.gen_range(0..f.cycles[ci].edges.len());
    let mut op = match rng.gen_range(0..3) {
        0 => Mutation::ColourFlip,
        1 => Mutation::ArcReversal,
        _ => Mutation::EndpointShift,
    };
    let arcs: Vec<(usize, usize)> = f
        .cycles
        .iter()
        .enumerate()
        .flat_map(|(ci, c)| c.edges.iter().enumerate().map(move |(ei, e)| (ci, ei, e.colour)))
        .filter(|&(_, _, colour)| colour == Colour::Arc)
        .map(|(ci, ei, _)| (ci, ei))
        .collect();
    if op == Mutation::ArcReversal && arcs.is_empty() {
        op = Mutation::ColourFlip;
    }
    match op {
        Mutation::ColourFlip => {
            let e = &mut f.cycles[ci].edges[ei];
            let palette: &[Colour] = match kind {
                StarterKind::One => &[Colour::Pink, Colour::Black],
                _ => &[Colour::Pink, Colour::Blue, Colour::Arc],
            };
            let others: Vec<Colour> = palette.iter().copied().filter(|&c| c != e.colour).collect();
            e.colour = others[rng.gen_range(0..others.len())];
        }
        Mutation::ArcReversal => {
            let (ci, ei) = arcs[rng.gen_range(0..arcs.len())];
            let e = &mut f.cycles[ci].edges[ei];
            std::mem::swap(&mut e.u, &mut e.v);
        }
        Mutation::EndpointShift => {
            let e = &mut f.cycles[ci].edges[ei];
            let candidates: Vec<usize> = (0..n).filter(|&x| x != e.u && x != e.v).collect();
            e.v = candidates[rng.gen_range(0..candidates.len())];
        }
    }
    op
}

fn mutation_fuzzing() -> Outcome {
    let records: Vec<StarterRecord> = mandatory().into_iter().flat_map(|(_, rs)| rs).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut tally: BTreeMap<Mutation, usize> = BTreeMap::new();
    let mut escapes = Vec::new();
    for trial in 0..1000 {
        let r = &records[rng.gen_range(0..records.len())];
        let original = r.two_factors();
        let mut factors = original.clone();
        let fi = rng.gen_range(0..factors.len());
        let op = mutate(&mut rng, r.kind, r.n, &mut factors[fi]);
        if factors == original {
            return Err(format!("{} #{trial}: {op:?} left the starter unchanged", r.id()));
        }
        *tally.entry(op).or_default() += 1;
        let cert = certify_starters(format!("{} #{trial}", r.id()), r.kind, r.n, &factors, false);
        if cert.is_ok() {
            escapes.push(format!("{} ({op:?})", cert.id));
        }
    }
    if !escapes.is_empty() {
        return Err(format!("{} escapes: {}", escapes.len(), escapes.join(", ")));
    }
    let tally: Vec<String> = tally.iter().map(|(op, k)| format!("{op:?} {k}")).collect();
    Ok(format!("1000 mutations rejected, 0 escapes ({})", tally.join(", ")))
}

type PlainEdge = (usize, usize, u8);

fn plain_rotate((u, v, c): PlainEdge, n: usize) -> PlainEdge {
    let step = |x: usize| if x == n - 1 { x } else { (x + 1) % (n - 1) };
    let (a, b) = (step(u), step(v));
    if c == 2 || a < b {
        (a, b, c)
    } else {
        (b, a, c)
    }
}

fn plain(e: &ColouredEdge) -> PlainEdge {
    let tag = match e.colour {
        Colour::Pink => 0,
        Colour::Blue => 1,
        Colour::Arc => 2,
        Colour::Black => 3,
    };
    let e = e.canonical();
    (e.u, e.v, tag)
}

fn brute_force_orbits(n: usize, kind: GraphKind) -> BTreeSet<BTreeSet<PlainEdge>> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            match kind {
                GraphKind::TwoFold => edges.extend([(u, v, 0), (u, v, 3)]),
                GraphKind::FourFold => edges.extend([(u, v, 0), (u, v, 1), (u, v, 2), (v, u, 2)]),
            }
        }
    }
    let mut orbits = BTreeSet::new();
    for e in edges {
        let mut closure = BTreeSet::from([e]);
        let mut next = plain_rotate(e, n);
        while closure.insert(next) {
            next = plain_rotate(next, n);
        }
        orbits.insert(closure);
    }
    orbits
}

fn orbit_oracle() -> Outcome {
    let mut checked = 0;
    for n in 4..=12 {
        for kind in [GraphKind::TwoFold, GraphKind::FourFold] {
            let computed: BTreeSet<BTreeSet<PlainEdge>> = all_orbits(n, kind)
                .iter()
                .map(|o| o.members.iter().map(plain).collect())
                .collect();
            let listed = all_orbits(n, kind).len();
            let expected = brute_force_orbits(n, kind);
            if computed != expected || listed != expected.len() {
                return Err(format!(
                    "n={n} {kind:?}: {listed} orbits, brute force {}",
                    expected.len()
                ));
            }
            checked += listed;
        }
    }
    Ok(format!("n=4..12, both graph kinds, {checked} orbits match"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("fixture verification", fixture_verification),
        ("edge conservation", edge_conservation),
        ("table reproduction", table_reproduction),
        ("search rediscovery", search_rediscovery),
        ("lift gate", lift_gate),
        ("mutation fuzzing", mutation_fuzzing),
        ("orbit oracle", orbit_oracle),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} {name}: PASS {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
