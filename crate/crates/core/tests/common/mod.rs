#![allow(dead_code)]

use implify::{
    CardinalExpr, CardinalModel, CoverClass, Fact, ImplicationTable, KnowledgeBase, Property,
    ProvableOrder, Selector, TruthValue,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub const BASES: [&str; 6] = ["p", "t", "b", "s", "cov(M)", "d"];

/// `n` distinct properties, names drawn without replacement from all 48
/// selector/cover combinations.
pub fn random_properties<R: Rng>(rng: &mut R, n: usize) -> Vec<Property> {
    let mut combos: Vec<(Selector, CoverClass, CoverClass)> = Vec::new();
    for s in [Selector::S1, Selector::Sfin, Selector::Ufin] {
        for a in CoverClass::ALL {
            for b in CoverClass::ALL {
                combos.push((s, a, b));
            }
        }
    }
    combos.shuffle(rng);
    combos
        .into_iter()
        .take(n)
        .enumerate()
        .map(|(id, (s, a, b))| Property::new(id, s, a, b))
        .collect()
}

pub fn random_facts<R: Rng>(rng: &mut R, n: usize, count: usize) -> Vec<Fact> {
    (0..count)
        .map(|_| {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if rng.gen_bool(0.6) {
                Fact::implies(i, j)
            } else {
                Fact::not_implies(i, j)
            }
        })
        .collect()
}

/// Catalog of `n` properties plus random facts; may well be contradictory.
pub fn random_fact_kb<R: Rng>(rng: &mut R, n: usize, count: usize) -> KnowledgeBase {
    KnowledgeBase::new_catalog(random_properties(rng, n))
        .unwrap()
        .with_facts(random_facts(rng, n, count))
        .unwrap()
}

pub fn random_expr<R: Rng>(rng: &mut R, depth: u32) -> CardinalExpr {
    if depth == 0 || rng.gen_bool(0.6) {
        CardinalExpr::base(*BASES.choose(rng).unwrap())
    } else {
        CardinalExpr::max(random_expr(rng, depth - 1), random_expr(rng, depth - 1))
    }
}

/// A fully populated, valid knowledge base: crits, a provable order that
/// follows `BASES` order, and models whose ranks are nondecreasing along it.
pub fn random_full_kb<R: Rng>(rng: &mut R, n: usize) -> KnowledgeBase {
    let props = random_properties(rng, n)
        .into_iter()
        .map(|p| {
            if rng.gen_bool(0.7) {
                p.with_crit(random_expr(rng, 2))
            } else {
                p
            }
        })
        .collect();
    let mut pairs = Vec::new();
    for (k, a) in BASES.iter().enumerate() {
        for b in &BASES[k + 1..] {
            if rng.gen_bool(0.3) {
                pairs.push((CardinalExpr::base(*a), CardinalExpr::base(*b)));
            }
        }
    }
    let models: Vec<CardinalModel> = (0..rng.gen_range(0..4))
        .map(|k| {
            let mut rank = 1;
            let ranks: Vec<(&str, u32)> = BASES
                .iter()
                .map(|&c| {
                    rank += rng.gen_range(0..2);
                    (c, rank)
                })
                .collect();
            let m = CardinalModel::new(format!("m{k}"), ranks);
            if rng.gen_bool(0.5) {
                m.with_citation(format!("model number {k}"))
            } else {
                m
            }
        })
        .collect();
    let count = rng.gen_range(0..2 * n);
    let facts: Vec<Fact> = random_facts(rng, n, count)
        .into_iter()
        .map(|f| {
            if rng.gen_bool(0.5) {
                f.with_justification("see the literature")
            } else {
                f
            }
        })
        .collect();
    KnowledgeBase::new_catalog(props)
        .unwrap()
        .with_facts(facts)
        .unwrap()
        .with_provable(ProvableOrder::new(pairs))
        .with_models(models)
}

pub fn random_table<R: Rng>(rng: &mut R, n: usize) -> ImplicationTable {
    let cells = (0..n * n)
        .map(|_| match rng.gen_range(0..3) {
            0 => TruthValue::Implies,
            1 => TruthValue::NotImplies,
            _ => TruthValue::Open,
        })
        .collect();
    ImplicationTable::from_cells(n, cells).unwrap()
}

/// Brute-force closure: sweep every (i,j,k) triple with R1–R3 until nothing
/// changes. `None` when some rule (or a pair of facts) demands both values of
/// one entry.
pub fn naive_close(kb: &KnowledgeBase) -> Option<ImplicationTable> {
    use TruthValue::{Implies as I, NotImplies as N, Open};
    let n = kb.len();
    let mut t = vec![vec![Open; n]; n];
    fn put(t: &mut [Vec<TruthValue>], i: usize, j: usize, v: TruthValue) -> Option<bool> {
        match t[i][j] {
            TruthValue::Open => {
                t[i][j] = v;
                Some(true)
            }
            w if w == v => Some(false),
            _ => None,
        }
    }
    for i in 0..n {
        put(&mut t, i, i, I)?;
    }
    for f in kb.facts() {
        put(&mut t, f.from.0, f.to.0, f.value())?;
    }
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if t[i][j] == I && t[j][k] == I {
                        changed |= put(&mut t, i, k, I)?;
                    }
                    if t[i][k] == N && t[i][j] == I {
                        changed |= put(&mut t, j, k, N)?;
                    }
                    if t[i][k] == N && t[j][k] == I {
                        changed |= put(&mut t, i, j, N)?;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    ImplicationTable::from_cells(n, t.into_iter().flatten().collect())
}
