use std::collections::{BTreeSet, HashSet};

use super::*;
use crate::hilbert::enumerate_o_sequences;
use crate::monomial::{lex_ideal, parse_ideal, LexTable};

fn hf(v: &[u64]) -> HilbertFunction {
    HilbertFunction::new(v.to_vec()).unwrap()
}

fn lex_diagram(v: &[u64]) -> BettiDiagram {
    ek_betti(&lex_ideal(&hf(v), 3).unwrap()).unwrap()
}

fn table(text: &str) -> BettiDiagram {
    parse_layout(text, 3).unwrap()
}

const EX24_LEX: &str = "
total: 1 16 27 12
0: 1 . . .
1: . . . .
2: . 1 . .
3: . 3 5 2
4: . 5 9 4
5: . 5 9 4
6: . 2 4 2";

const EX24_MIN: &str = "
total: 1 4 5 2
0: 1 . . .
1: . . . .
2: . 1 . .
3: . 3 . .
4: . . 2 .
5: . . 3 .
6: . . . 2";

const EX31_LEX: &str = "
total: 1 12 19 8
0: 1 . . .
1: . . . .
2: . 3 3 1
3: . 6 10 4
4: . 2 4 2
5: . 1 2 1";

const EX31_MID: &str = "
total: 1 6 13 8
0: 1 . . .
1: . . . .
2: . 3 . 1
3: . 3 8 4
4: . . 3 2
5: . . 2 1";

const EX31_FINAL: &str = "
total: 1 6 7 2
0: 1 . . .
1: . . . .
2: . 3 . .
3: . 3 7 1
4: . . . .
5: . . . 1";

const EX33_LEX: &str = "
total: 1 25 43 19
0: 1 . . .
1: . . . .
2: . . . .
3: . . . .
4: . 6 8 3
5: . 7 12 5
6: . 12 23 11";

const EX33_FINAL: &str = "
total: 1 6 19 14
0: 1 . . .
1: . . . .
2: . . . .
3: . . . .
4: . 6 1 3
5: . . . .
6: . . 18 11";

const EX34_LEX: &str = "
total: 1 30 53 24
0: 1 . . .
1: . . . .
2: . . . .
3: . . . .
4: . 4 4 1
5: . 3 5 2
6: . 2 4 2
7: . 4 7 3
8: . 6 12 6
9: . 11 21 10";

const EX36: &str = "
total: 1 7 9 3
0: 1 . . .
1: . . . .
2: . 6 8 3
3: . 1 1 .";

#[test]
fn ek_reproduces_lex_diagrams() {
    assert_eq!(lex_diagram(&[1, 3, 6, 9, 9, 6, 2]), table(EX24_LEX));
    let d = lex_diagram(&[1, 3, 6, 7, 3, 1]);
    assert_eq!(d, table(EX31_LEX));
    assert_eq!(d.totals(), [1, 12, 19, 8]);
    assert_eq!(lex_diagram(&[1, 3, 6, 10, 15, 15, 11]), table(EX33_LEX));
    assert_eq!(lex_diagram(&[1, 3, 6, 10, 15, 17, 17, 17, 15, 10]), table(EX34_LEX));

    let principal = ek_betti(&parse_ideal("a^2", Some(1)).unwrap()).unwrap();
    assert_eq!(principal.entries().collect::<Vec<_>>(), [((0, 0), 1), ((1, 2), 1)]);
    assert_eq!(ek_betti(&parse_ideal("a^2;b^2", Some(2)).unwrap()), Err(Error::NotStable));
}

#[test]
fn cancel_examples() {
    let d = table(EX31_LEX);
    let c = d.cancel(1, 4, 3).unwrap();
    assert_eq!((c.get(1, 4), c.get(2, 4)), (3, 0));
    assert_eq!(c.entries().count(), d.entries().count() - 1);
    assert!(matches!(c.cancel(1, 4, 1), Err(Error::CannotCancel { .. })));
    assert!(d.cancel(0, 0, 1).is_err());
    assert!(d.cancel(3, 6, 1).is_err());
}

#[test]
fn greedy_reproduces_printed_stages() {
    let stages = table(EX31_LEX).greedy_stages();
    assert_eq!(stages, vec![table(EX31_MID), table(EX31_FINAL)]);
    assert_eq!(stages[1].max_shifts().unwrap(), [4, 5, 8]);

    let g = table(EX33_LEX).greedy_minimize();
    assert_eq!(g, table(EX33_FINAL));
    assert_eq!(g.max_shifts().unwrap(), [5, 8, 9]);

    let g = table(EX24_LEX).greedy_minimize();
    assert_eq!(g, table(EX24_MIN));
    assert!(g.is_fully_cancelled());

    assert_eq!(table(EX34_LEX).greedy_minimize().max_shifts().unwrap(), [5, 11, 12]);

    let principal = ek_betti(&parse_ideal("a^2", Some(1)).unwrap()).unwrap();
    assert_eq!(principal.greedy_minimize(), principal);
}

#[test]
fn shift_examples() {
    let m = table(EX24_MIN);
    assert_eq!(m.min_shifts().unwrap(), [3, 6, 9]);
    assert_eq!(m.max_shifts().unwrap(), [4, 7, 9]);
    let single = BettiDiagram::from_entries(1, [((0, 0), 1), ((1, 2), 1)]).unwrap();
    assert_eq!(single.max_shifts().unwrap(), [2]);
    assert_eq!(single.min_shifts().unwrap(), [2]);
    let gap = BettiDiagram::from_entries(3, [((0, 0), 1), ((1, 2), 1), ((3, 5), 1)]).unwrap();
    assert!(matches!(gap.max_shifts(), Err(Error::Malformed(_))));
    assert_eq!(table(EX31_LEX).regularity(), Some(5));
}

#[test]
fn purity_examples() {
    let truncated = table(
        "total: 1 27 46 20
         0: 1 . . .
         1: . . . .
         2: . . . .
         3: . . . .
         4: . . . .
         5: . 27 45 19
         6: . . 1 1",
    );
    assert!(truncated.is_quasipure());
    assert!(!truncated.is_pure());
    let original = table(
        "total: 1 5 8 4
         0: 1 . . .
         1: . . . .
         2: . 2 . .
         3: . 2 2 .
         4: . . . .
         5: . 1 5 3
         6: . . 1 1",
    );
    assert!(!original.is_quasipure());
    assert!(table(EX24_MIN).is_quasipure());
}

#[test]
fn huneke_miller_cases() {
    let line = BettiDiagram::from_entries(1, [((0, 0), 1), ((1, 7), 1)]).unwrap();
    assert_eq!(line.huneke_miller(1).unwrap(), Ratio::integer(7));
    let ci22 = BettiDiagram::from_entries(2, [((0, 0), 1), ((1, 2), 2), ((2, 4), 1)]).unwrap();
    assert_eq!(ci22.huneke_miller(2).unwrap(), Ratio::integer(4));
    assert_eq!(ci22.hilbert_function().unwrap().multiplicity().unwrap(), 4);
    assert_eq!(table(EX31_LEX).huneke_miller(3), Err(Error::NotPure));
    assert_eq!(ci22.huneke_miller(3), Err(Error::NotPure));
}

#[test]
fn hilbert_recovery() {
    let h = hf(&[1, 3, 6, 9, 9, 6, 2]);
    assert_eq!(table(EX24_LEX).hilbert_function().unwrap(), h);
    let linear = BettiDiagram::from_entries(3, [((0, 0), 1), ((1, 1), 3), ((2, 2), 3), ((3, 3), 1)]).unwrap();
    assert_eq!(linear.hilbert_function().unwrap(), hf(&[1]));
    assert_eq!(table(EX31_FINAL).hilbert_function().unwrap(), hf(&[1, 3, 6, 7, 3, 1]));
    // column 3 is missing: not the diagram of an Artinian quotient
    assert!(matches!(table(EX36).hilbert_function(), Err(Error::InconsistentDiagram(_))));
    let broken = BettiDiagram::from_entries(1, [((0, 0), 1), ((1, 0), 2)]).unwrap();
    assert!(matches!(broken.hilbert_function(), Err(Error::InconsistentDiagram(_))));
}

#[test]
fn shift_growth() {
    let d = table(EX36);
    assert_eq!(d.max_shifts().unwrap(), [4, 5, 5]);
    assert!(!d.check_shift_growth());
    let single = BettiDiagram::from_entries(1, [((0, 0), 1), ((1, 2), 1)]).unwrap();
    assert!(single.check_shift_growth());
    let mut table = LexTable::new(3);
    for h in enumerate_o_sequences(3, 5, &[1]).unwrap() {
        let d = ek_betti(&table.lex_ideal(&h.unwrap()).unwrap()).unwrap();
        assert!(d.check_shift_growth());
    }
}

#[test]
fn dual_examples() {
    let m = table(EX24_MIN);
    let dual = m.dual(3, 9).unwrap();
    assert_eq!(dual.dual(3, 9).unwrap(), m);
    // column i of the dual starts at 9 - M_{3-i}
    let big = m.max_shifts().unwrap();
    let small = dual.min_shifts().unwrap();
    assert_eq!(small, [9 - big[1], 9 - big[0], 9]);
    assert_eq!(dual.column(0).collect::<Vec<_>>(), [(0, 2)]);

    let principal = BettiDiagram::from_entries(1, [((0, 0), 1), ((1, 2), 1)]).unwrap();
    let flipped = principal.dual(1, 2).unwrap();
    assert_eq!(flipped, principal);
    assert!(m.dual(3, 8).is_err());
}

#[test]
fn layout_matches_paper_table() {
    let text = table(EX31_FINAL).to_string();
    let expected = "total: 1 6 7 2\n    0: 1 . . .\n    1: . . . .\n    2: . 3 . .\n    3: . 3 7 1\n    4: . . . .\n    5: . . . 1";
    assert_eq!(text, expected);
    let wide = table(EX24_LEX).to_string();
    assert!(wide.starts_with("total: 1 16 27 12\n    0: 1  .  .  ."));
    assert!(parse_layout("total: 1 2\n0: 1 .\n1: . 1", 1).is_err());
}

#[test]
fn machine_form_round_trip() {
    let d = table(EX33_LEX);
    let text = d.to_machine();
    assert!(text.starts_with("0 0 1\n1 5 6\n"));
    assert_eq!(parse_machine(&text, 3).unwrap(), d);
    assert!(parse_machine("1 2", 3).is_err());
}

/// Every diagram reachable by single unit cancellations, by plain DFS with
/// a visited set.
fn unit_dfs(base: &BettiDiagram) -> HashSet<BettiDiagram> {
    let mut seen = HashSet::new();
    let mut stack = vec![base.clone()];
    seen.insert(base.clone());
    while let Some(d) = stack.pop() {
        for ((i, j), _) in d.entries().collect::<Vec<_>>() {
            if let Ok(next) = d.cancel(i, j, 1) {
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
    }
    seen
}

fn shift_product(d: &BettiDiagram) -> Option<u64> {
    d.max_shifts().ok().map(|m| m.iter().map(|&x| u64::from(x)).product())
}

#[test]
fn reachable_enumeration_matches_unit_dfs() {
    let mut table = LexTable::new(3);
    for h in enumerate_o_sequences(3, 4, &[1]).unwrap() {
        let base = ek_betti(&table.lex_ideal(&h.unwrap()).unwrap()).unwrap();
        let oracle = unit_dfs(&base);
        let mut got = Vec::new();
        let stats = for_each_reachable(&base, None, usize::MAX, |d| got.push(d.clone()));
        assert!(!stats.capped);
        let got_set: HashSet<_> = got.iter().cloned().collect();
        assert_eq!(got.len(), got_set.len(), "duplicates");
        assert_eq!(got_set, oracle);

        // the threshold keeps exactly the well-formed diagrams below it
        let threshold = 6 * base.hilbert_function().unwrap().multiplicity().unwrap();
        let mut below = BTreeSet::new();
        for_each_reachable(&base, Some(threshold), usize::MAX, |d| {
            below.insert(d.clone());
        });
        let expected: BTreeSet<_> = oracle
            .iter()
            .filter(|d| shift_product(d).is_some_and(|p| p < threshold) && d.projective_dimension() == 3)
            .cloned()
            .collect();
        assert_eq!(below, expected);
    }
}

#[test]
fn node_cap_is_reported() {
    let base = table(EX34_LEX);
    let stats = for_each_reachable(&base, None, 1000, |_| {});
    assert!(stats.capped);
    assert!(stats.nodes <= 1001);
}

#[test]
fn greedy_is_minimal_and_everything_is_dominated() {
    let mut table = LexTable::new(3);
    for h in enumerate_o_sequences(3, 4, &[1, 3]).unwrap() {
        let base = ek_betti(&table.lex_ideal(&h.unwrap()).unwrap()).unwrap();
        let greedy = shift_product(&base.greedy_minimize()).unwrap();
        for d in unit_dfs(&base) {
            assert!(d.is_dominated_by(&base));
            if let Some(p) = shift_product(&d) {
                assert!(greedy <= p, "{d}");
            }
        }
    }
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn small_lex() -> impl Strategy<Value = BettiDiagram> {
        let all: Vec<HilbertFunction> =
            enumerate_o_sequences(3, 6, &[1, 3]).unwrap().map(Result::unwrap).collect();
        proptest::sample::select(all).prop_map(|h| ek_betti(&lex_ideal(&h, 3).unwrap()).unwrap())
    }

    proptest! {
        #[test]
        fn cancellation_preserves_hilbert_function(base in small_lex(), picks in proptest::collection::vec((0usize..64, 1u64..4), 0..12)) {
            let h = base.hilbert_function().unwrap();
            let mut d = base;
            for (k, count) in picks {
                let options: Vec<(usize, u32)> = d
                    .entries()
                    .filter(|&((i, j), _)| i >= 1 && d.get(i + 1, j) > 0)
                    .map(|(key, _)| key)
                    .collect();
                if options.is_empty() {
                    break;
                }
                let (i, j) = options[k % options.len()];
                let c = count.min(d.get(i, j)).min(d.get(i + 1, j));
                d = d.cancel(i, j, c).unwrap();
                prop_assert_eq!(d.hilbert_function().unwrap(), h.clone());
            }
        }

        #[test]
        fn layouts_round_trip(base in small_lex()) {
            let g = base.greedy_minimize();
            prop_assert_eq!(parse_layout(&g.to_string(), 3).unwrap(), g.clone());
            prop_assert_eq!(parse_machine(&g.to_machine(), 3).unwrap(), g);
        }

        #[test]
        fn dual_is_an_involution(base in small_lex()) {
            let g = base.greedy_minimize();
            let top = *g.max_shifts().unwrap().last().unwrap();
            let dual = g.dual(3, top).unwrap();
            prop_assert_eq!(dual.dual(3, top).unwrap(), g.clone());
            let big = g.max_shifts().unwrap();
            let small: Vec<u32> = (0..3).map(|i| dual.column(i).next().unwrap().0).collect();
            // column i of the dual starts at top - M_{3-i}, with M_0 = 0
            for i in 0..3 {
                let m = if i == 3 { 0 } else { big[2 - i] };
                prop_assert_eq!(small[i], top - m);
            }
        }
    }
}
