use hop_core::catalog::cycle_types;
use hop_core::chain::certify;
use hop_core::model::ColouredEdge;
use hop_core::search::{search_all, search_starter, SearchBudget, SearchOutcome};
use hop_core::verify::check_a;
use hop_core::{Cycle, CycleType, StarterKind, TwoFactor};

fn two_factors(n: usize, lengths: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn grow(
        n: usize,
        covered: u32,
        lengths: &mut Vec<usize>,
        cycles: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if covered == (1 << n) - 1 {
            out.push(cycles.clone());
            return;
        }
        let start = (!covered).trailing_zeros() as usize;
        let mut tried = Vec::new();
        for i in 0..lengths.len() {
            let len = lengths[i];
            if tried.contains(&len) {
                continue;
            }
            tried.push(len);
            lengths.remove(i);
            let mut path = vec![start];
            paths(n, covered | 1 << start, len, &mut path, &mut |path, used| {
                cycles.push(path.to_vec());
                grow(n, used, lengths, cycles, out);
                cycles.pop();
            });
            lengths.insert(i, len);
        }
    }

    fn paths(n: usize, covered: u32, len: usize, path: &mut Vec<usize>, f: &mut dyn FnMut(&[usize], u32)) {
        if path.len() == len {
            if len < 3 || path[1] < path[len - 1] {
                f(path, covered);
            }
            return;
        }
        for w in 0..n {
            if covered & (1 << w) == 0 {
                path.push(w);
                paths(n, covered | 1 << w, len, path, f);
                path.pop();
            }
        }
    }

    let mut out = Vec::new();
    grow(n, 0, &mut lengths.to_vec(), &mut Vec::new(), &mut out);
    out
}

fn one_starter_exists(t: &CycleType) -> bool {
    let n = t.n();
    two_factors(n, t.parts()).into_iter().any(|cycles| {
        (0u32..1 << n).any(|pinks| {
            let mut k = 0;
            let cycles = cycles
                .iter()
                .map(|vs| {
                    let edges = (0..vs.len())
                        .map(|i| {
                            let (a, b) = (vs[i], vs[(i + 1) % vs.len()]);
                            k += 1;
                            if pinks >> (k - 1) & 1 == 1 {
                                ColouredEdge::pink(a, b)
                            } else {
                                ColouredEdge::black(a, b)
                            }
                        })
                        .collect();
                    Cycle::new(vs.clone(), edges)
                })
                .collect();
            let f = TwoFactor::new(n, cycles);
            f.is_well_formed() && check_a(&f, n).unwrap().is_ok()
        })
    })
}

#[test]
fn exhausted_agrees_with_brute_force_for_one_starters() {
    for n in [4, 6] {
        for t in cycle_types(n).unwrap() {
            let outcome = search_starter(n, &t, StarterKind::One, &SearchBudget::default()).unwrap();
            let found = match outcome {
                SearchOutcome::Found(..) => true,
                SearchOutcome::Exhausted(_) => false,
                SearchOutcome::BudgetExceeded(_) => panic!("{t}: {outcome}"),
            };
            assert_eq!(found, one_starter_exists(&t), "n={n} {t}");
        }
    }
}

#[test]
fn small_exhausted_cases() {
    for (n, t) in [(6, "6"), (6, "3,3"), (8, "4,2,2"), (8, "6,2")] {
        let t: CycleType = t.parse().unwrap();
        let outcome = search_starter(n, &t, StarterKind::One, &SearchBudget::default()).unwrap();
        assert!(matches!(outcome, SearchOutcome::Exhausted(_)), "{t}: {outcome}");
    }
}

#[test]
fn every_kind_is_rediscovered() {
    for (n, t, kind) in [
        (10, "4,2,2,2", StarterKind::One),
        (10, "3,3,2,2", StarterKind::Two),
        (13, "6,3,2,2", StarterKind::Three),
        (14, "8,4,2", StarterKind::One),
    ] {
        let t: CycleType = t.parse().unwrap();
        let outcome = search_starter(n, &t, kind, &SearchBudget::default()).unwrap();
        let r = outcome.record().unwrap_or_else(|| panic!("{t}: {outcome}"));
        assert_eq!((r.kind, &r.cycle_type), (kind, &t));
        assert!(certify(r, true).is_ok());
    }
}

#[test]
fn search_all_covers_the_starter_rows() {
    let outcomes = search_all(10, &SearchBudget::default()).unwrap();
    assert_eq!(outcomes.len(), 9);
    assert!(outcomes.values().all(|o| matches!(o, SearchOutcome::Found(..))));

    let outcomes = search_all(11, &SearchBudget::default()).unwrap();
    assert_eq!(outcomes.len(), 7);
    assert!(outcomes.values().all(|o| matches!(o, SearchOutcome::Found(..))));

    let t: CycleType = "2,2".parse().unwrap();
    assert!(!search_all(4, &SearchBudget::default()).unwrap().contains_key(&t));
}
