//! Which open entry is most worth resolving? Try both answers for each of
//! the open entries and sort by how many entries get settled.

use std::time::Instant;

use implify::analysis::rank;
use implify::{dataset, TruthValue};

fn main() {
    let kb = dataset::spm2003();
    let table = dataset::golden_table();
    let t0 = Instant::now();
    let ranking = rank(&kb, &table, &[TruthValue::Implies, TruthValue::NotImplies]).unwrap();
    println!("{} closures in {:?}", ranking.len(), t0.elapsed());

    for r in ranking.iter().take(10) {
        let (p, q) = (
            kb.properties()[r.hypothesis.entry.row()].display_name(),
            kb.properties()[r.hypothesis.entry.col()].display_name(),
        );
        println!(
            "{:<10} {:>2} settled  {p} {} {q}",
            r.hypothesis.to_string(),
            r.settled_count,
            if r.hypothesis.value == TruthValue::Implies { "=>" } else { "=/=>" }
        );
    }
    let best_negative = ranking
        .iter()
        .find(|r| r.hypothesis.value == TruthValue::NotImplies)
        .unwrap();
    println!("best negative: {} ({} settled)", best_negative.hypothesis, best_negative.settled_count);
}
