use hop_core::chain::{certify, check_record, check_starters};
use hop_core::expand::derive_f2;
use hop_core::format::parse_starter_file;
use hop_core::model::{Colour, ColouredEdge};
use hop_core::verify::{check_a, check_condition_c, check_d, check_e, Clause};
use hop_core::{fixtures, Cycle, StarterKind, StarterRecord, TwoFactor};

fn record(name: &str, t: &str) -> StarterRecord {
    fixtures::records(name)
        .unwrap()
        .into_iter()
        .find(|r| r.cycle_type.to_string() == t)
        .unwrap_or_else(|| panic!("{name} has no {t}"))
}

fn factors(name: &str, t: &str) -> Vec<TwoFactor> {
    record(name, t).two_factors()
}

#[test]
fn mandatory_fixture_counts() {
    let counts: Vec<usize> = fixtures::MANDATORY
        .iter()
        .map(|f| fixtures::records(f).unwrap().len())
        .collect();
    assert_eq!(counts, [9, 7, 15]);
}

#[test]
fn every_shipped_record_passes_the_chain() {
    let records = fixtures::all_records();
    assert_eq!(records.len(), 462);
    let failures: Vec<String> = records
        .iter()
        .map(|r| certify(r, false))
        .filter(|c| !c.is_ok())
        .map(|c| c.report.render_text(&c.id))
        .collect();
    assert!(failures.is_empty(), "{}", failures.join(""));
}

#[test]
fn kinds_follow_parity() {
    for r in fixtures::all_records() {
        let expected = if r.n % 2 == 1 { StarterKind::Three } else { r.kind };
        assert_eq!(r.kind, expected, "{}", r.id());
        assert!(r.kind.parity_ok(r.n));
    }
}

#[test]
fn condition_c_examples() {
    let ok = Cycle::new(vec![0, 5], vec![ColouredEdge::pink(0, 5), ColouredEdge::blue(5, 0)]);
    assert!(check_condition_c(&ok).unwrap().is_empty());

    let triangle = Cycle::new(
        vec![1, 9, 0],
        vec![
            ColouredEdge::blue(1, 9),
            ColouredEdge::pink(9, 0),
            ColouredEdge::arc(0, 1),
        ],
    );
    assert!(check_condition_c(&triangle).unwrap().is_empty());

    let pink_pink = Cycle::new(vec![0, 5], vec![ColouredEdge::pink(0, 5), ColouredEdge::pink(5, 0)]);
    assert!(!check_condition_c(&pink_pink).unwrap().is_empty());

    let undirected = Cycle::new(vec![0, 5], vec![ColouredEdge::pink(0, 5), ColouredEdge::black(5, 0)]);
    assert!(check_condition_c(&undirected).is_err());
}

#[test]
fn one_starter_conditions() {
    let f = &factors("appendix_b", "[4,2,2,2]")[0];
    assert!(check_a(f, 10).unwrap().is_ok());
    assert!(check_a(f, 11).is_err());

    // C_3 = (0 8): black edge of difference 1 recoloured pink
    let mut recoloured = f.clone();
    recoloured.cycles[3].edges[1].colour = Colour::Pink;
    let report = check_a(&recoloured, 10).unwrap();
    assert!(report.has(Clause::A2), "{report}");

    let mut odd_pink = f.clone();
    odd_pink.cycles[0].edges[0].colour = Colour::Pink;
    let report = check_a(&odd_pink, 10).unwrap();
    assert!(report.has(Clause::A1), "{report}");
}

#[test]
fn two_starter_conditions() {
    let f = factors("appendix_b", "[3,3,2,2]");
    assert!(check_d(&f[0], &f[1], 10).is_ok());

    let same = check_d(&f[0], &f[0], 10);
    assert!(same.has(Clause::Disjoint), "{same}");

    // drop the blue edge of the 2-cycle (5 2) by turning it into a second pink
    let mut broken = f[0].clone();
    let i = broken.cycles.iter().position(|c| c.vertices == [5, 2]).unwrap();
    broken.cycles[i].edges[1].colour = Colour::Pink;
    let report = check_d(&broken, &f[1], 10);
    assert!(report.has(Clause::D2), "{report}");
    assert!(report.to_string().contains("[3,2] unused"), "{report}");
}

#[test]
fn three_starter_conditions() {
    let f = factors("appendix_c", "[3,2,2,2,2]");
    let f2 = derive_f2(&f[0], 11).unwrap();
    assert!(check_e(&f[0], &f2, &f[1], 11).unwrap().is_ok());
    assert!(check_e(&f[0], &f2, &f[1], 10).is_err());

    // the middle 2-cycle (0 5) loses its pink edge
    let mut no_pink = f[0].clone();
    let i = no_pink.cycles.iter().position(|c| c.vertices == [0, 5]).unwrap();
    no_pink.cycles[i].edges[0].colour = Colour::Blue;
    let report = check_e(&no_pink, &f2, &f[1], 11).unwrap();
    assert!(report.has(Clause::E4), "{report}");

    // an F3 edge moved onto an orbit F1 already meets: pink of difference 4
    let mut f3 = f[1].clone();
    let i = f3.cycles.iter().position(|c| c.vertices == [3, 4]).unwrap();
    f3.cycles[i] = Cycle::new(vec![3, 7], vec![ColouredEdge::pink(3, 7), ColouredEdge::blue(7, 3)]);
    let report = check_e(&f[0], &f2, &f3, 11).unwrap();
    assert!(report.has(Clause::E2), "{report}");
}

#[test]
fn derived_f2_keeps_the_middle_pair() {
    let f = factors("appendix_c", "[3,2,2,2,2]");
    let f2 = derive_f2(&f[0], 11).unwrap();
    let middle = f2
        .cycles
        .iter()
        .find(|c| c.vertices.contains(&0) && c.vertices.contains(&5))
        .unwrap();
    assert_eq!(middle.edges, [ColouredEdge::arc(5, 0), ColouredEdge::arc(0, 5)]);
    assert!(derive_f2(&f[1], 11).is_err());
}

#[test]
fn problems_in_the_record_surface_as_violations() {
    let text = "starter n=11 type=[3,2,2,2,2] kind=two\nC: [0, [5, 0], 5, [5, 2]]\n--\nC: [0, [5, 0], 5, [5, 2]]\n";
    assert!(parse_starter_file(text).is_err());
    let f = factors("appendix_b", "[3,3,2,2]");
    assert!(check_starters(StarterKind::Two, 11, &f).has(Clause::Parity));
    assert!(check_starters(StarterKind::One, 10, &f).has(Clause::Structure));

    // three-starter blocks in the wrong order: no middle 2-cycle to derive F2 from
    let mut r = record("appendix_c", "[3,2,2,2,2]");
    r.factors.swap(0, 1);
    let report = check_record(&r);
    assert!(report.has(Clause::Structure), "{report}");
}
