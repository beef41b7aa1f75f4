mod common;

use common::*;
use implify::analysis::{count_open, open_entries, what_if};
use implify::cardinals::{consistently_greater, eval};
use implify::format::{parse_kb, parse_table, render_table, serialize_kb, TableFormat};
use implify::deduction::close_kb;
use implify::{close, initial_table, CardinalModel, Closer, Hypothesis, KnowledgeBase, TruthValue};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn fact_kb(seed: u64, max_n: usize) -> KnowledgeBase {
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_n);
    let count = r.gen_range(0..=n * n / 2 + 1);
    random_fact_kb(&mut r, n, count)
}

#[test]
fn closure_matches_brute_force_on_500_random_kbs() {
    let (mut consistent, mut conflicting) = (0, 0);
    for seed in 0..500 {
        let kb = fact_kb(seed, 6);
        match (close_kb(&kb, false), naive_close(&kb)) {
            (Ok(fast), Some(slow)) => {
                assert_eq!(fast, slow, "seed {seed}");
                consistent += 1;
            }
            (Err(_), None) => conflicting += 1,
            (fast, slow) => panic!("seed {seed}: engine {fast:?}, brute force {slow:?}"),
        }
    }
    // Both branches must actually be exercised.
    assert!(consistent > 100 && conflicting > 50, "{consistent} / {conflicting}");
}

#[test]
fn worklist_order_does_not_matter() {
    for seed in 0..100 {
        let kb = fact_kb(1000 + seed, 8);
        let Ok(start) = initial_table(&kb) else { continue };
        let reference = close(&start, &kb, false);
        let mut r = rng(seed);
        let shuffled = Closer::new(&kb).close_scheduled(&start, |len| r.gen_range(0..len));
        let fifo = Closer::new(&kb).close_scheduled(&start, |_| 0);
        match reference {
            Ok(t) => {
                assert_eq!(shuffled.as_ref().ok(), Some(&t), "seed {seed}");
                assert_eq!(fifo.as_ref().ok(), Some(&t), "seed {seed}");
            }
            Err(_) => assert!(shuffled.is_err() && fifo.is_err(), "seed {seed}"),
        }
    }
}

#[test]
fn closure_is_idempotent_and_monotone() {
    for seed in 0..300 {
        let mut r = rng(5000 + seed);
        let n = r.gen_range(1..=8);
        let count = r.gen_range(0..2 * n);
        let facts = random_facts(&mut r, n, count);
        let cut = r.gen_range(0..=facts.len());
        let props = random_properties(&mut r, n);
        let small = KnowledgeBase::new_catalog(props.clone())
            .unwrap()
            .with_facts(facts[..cut].to_vec())
            .unwrap();
        let large = KnowledgeBase::new_catalog(props).unwrap().with_facts(facts).unwrap();
        let (Ok(a), Ok(b)) = (close_kb(&small, false), close_kb(&large, false)) else {
            continue;
        };
        assert_eq!(close(&a, &small, false).unwrap(), a, "seed {seed}");
        for (e, v) in a.iter().filter(|(_, v)| v.is_decided()) {
            assert_eq!(b.at(e), v, "seed {seed} at {e}");
        }
    }
}

#[test]
fn what_if_conserves_open_entries() {
    for seed in 0..150 {
        let mut r = rng(9000 + seed);
        let kb = fact_kb(9000 + seed, 7);
        let Ok(t) = close_kb(&kb, false) else { continue };
        let open = open_entries(&t);
        if open.is_empty() {
            continue;
        }
        let e = open[r.gen_range(0..open.len())];
        for v in [TruthValue::Implies, TruthValue::NotImplies] {
            let w = what_if(&kb, &t, Hypothesis::new(e.row(), e.col(), v).unwrap()).unwrap();
            if let Some(after) = w.open_after() {
                assert_eq!(w.open_before, after + w.settled().len());
                assert_eq!(w.open_before, count_open(&t));
                assert!(w.settled().contains(&(e, v)));
            }
        }
    }
}

/// The two answers to one open question can both settle a third entry, so
/// "opposite answers share only the question" is not a law: with 1 ⇔ 2,
/// deciding (0,1) either way decides (0,2) the same way.
#[test]
fn opposite_answers_may_share_more_than_the_question() {
    let kb = KnowledgeBase::new_catalog(random_properties(&mut rng(0), 3))
        .unwrap()
        .with_facts(vec![implify::Fact::implies(1, 2), implify::Fact::implies(2, 1)])
        .unwrap();
    let t = close_kb(&kb, false).unwrap();
    let settled = |v| {
        what_if(&kb, &t, Hypothesis::new(0, 1, v).unwrap())
            .unwrap()
            .settled()
            .to_vec()
    };
    let e = |i, j| implify::Entry::new(i, j);
    assert_eq!(
        settled(TruthValue::Implies),
        vec![(e(0, 1), TruthValue::Implies), (e(0, 2), TruthValue::Implies)]
    );
    assert_eq!(
        settled(TruthValue::NotImplies),
        vec![(e(0, 1), TruthValue::NotImplies), (e(0, 2), TruthValue::NotImplies)]
    );
}

#[test]
fn kb_round_trips_on_random_instances() {
    for seed in 0..100 {
        let mut r = rng(40_000 + seed);
        let n = r.gen_range(1..=30);
        let kb = random_full_kb(&mut r, n);
        kb.validate().unwrap();
        let text = serialize_kb(&kb);
        let back = parse_kb(&text).unwrap_or_else(|e| panic!("seed {seed}: {e}\n{text}"));
        assert_eq!(back, kb, "seed {seed}");
        assert_eq!(serialize_kb(&back), text);
    }
}

#[test]
fn tables_round_trip_on_random_instances() {
    for seed in 0..100 {
        let mut r = rng(60_000 + seed);
        let n = r.gen_range(1..=25);
        let t = random_table(&mut r, n);
        for f in [TableFormat::Ascii, TableFormat::Csv, TableFormat::Json] {
            let text = render_table(&t, f);
            assert_eq!(parse_table(&text, f).unwrap(), t, "seed {seed}, {f:?}");
        }
    }
}

fn model(ranks: &[u32]) -> CardinalModel {
    CardinalModel::new("m", BASES.iter().copied().zip(ranks.iter().copied()))
}

proptest! {
    #[test]
    fn eval_is_monotone(seed in any::<u64>(), ranks in prop::collection::vec(1u32..5, 6),
                        bump in 0usize..6, by in 1u32..3) {
        let expr = random_expr(&mut rng(seed), 3);
        let mut raised = ranks.clone();
        raised[bump] += by;
        prop_assert!(eval(&expr, &model(&raised)).unwrap() >= eval(&expr, &model(&ranks)).unwrap());
    }

    #[test]
    fn nothing_is_consistently_greater_than_itself(
        seed in any::<u64>(),
        models in prop::collection::vec(prop::collection::vec(1u32..5, 6), 0..4),
    ) {
        let expr = random_expr(&mut rng(seed), 3);
        let models: Vec<_> = models.iter().map(|m| model(m)).collect();
        prop_assert!(!consistently_greater(&expr, &expr, &models).unwrap());
    }

    #[test]
    fn consistency_never_contradicts_provable_order(seed in any::<u64>()) {
        let mut r = rng(seed);
        let kb = random_full_kb(&mut r, 1);
        for (lesser, greater) in kb.provable().pairs() {
            prop_assert!(!consistently_greater(lesser, greater, kb.models()).unwrap());
        }
    }

    #[test]
    fn closure_is_idempotent_on_arbitrary_fact_lists(
        n in 1usize..7,
        facts in prop::collection::vec((0usize..7, 0usize..7, any::<bool>()), 0..20),
    ) {
        let facts: Vec<_> = facts
            .into_iter()
            .filter(|&(i, j, _)| i < n && j < n)
            .map(|(i, j, pos)| if pos { implify::Fact::implies(i, j) } else { implify::Fact::not_implies(i, j) })
            .collect();
        let kb = KnowledgeBase::new_catalog(random_properties(&mut rng(n as u64), n))
            .unwrap()
            .with_facts(facts)
            .unwrap();
        if let Ok(t) = close_kb(&kb, false) {
            prop_assert_eq!(close(&t, &kb, false).unwrap(), t.clone());
            prop_assert!(implify::is_closed(&t, &kb, false));
        }
    }
}
