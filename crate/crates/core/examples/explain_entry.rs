//! Shortest derivations for decided entries, and the two derivations behind
//! a refuted hypothesis.

use implify::analysis::what_if;
use implify::explain::explain;
use implify::{dataset, Entry, Hypothesis, TruthValue};

fn main() {
    let kb = dataset::spm2003();
    let table = dataset::golden_table();
    for (i, j) in [(0, 21), (21, 0), (4, 4), (9, 5)] {
        let trace = explain(&table, &kb, Entry::new(i, j), false).unwrap();
        println!("{trace}");
    }
    if let Err(e) = explain(&table, &kb, Entry::new(0, 5), false) {
        println!("(0,5): {e}\n");
    }

    let h = Hypothesis::new(14, 0, TruthValue::Implies).unwrap();
    let r = what_if(&kb, &table, h).unwrap();
    if let Some(c) = r.conflict() {
        println!("{h} is refuted:\n{c}");
    }
}
