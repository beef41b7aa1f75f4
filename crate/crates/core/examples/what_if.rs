//! Hypothetical answers to open questions and how much of the table they
//! would settle.

use implify::analysis::what_if;
use implify::{dataset, Hypothesis, TruthValue};

fn main() {
    let kb = dataset::spm2003();
    let table = dataset::golden_table();
    for (i, j, v) in [
        (12, 5, TruthValue::Implies),
        (16, 3, TruthValue::NotImplies),
        (18, 13, TruthValue::NotImplies),
        (21, 0, TruthValue::Implies),
    ] {
        let h = Hypothesis::new(i, j, v).unwrap();
        let r = what_if(&kb, &table, h).unwrap();
        match r.open_after() {
            Some(after) => {
                println!("{h}: {} settled, {} -> {after} open", r.settled().len(), r.open_before);
                if r.settled().len() <= 6 {
                    for (e, v) in r.settled() {
                        println!("    {e} = {v}");
                    }
                }
            }
            None => println!("{h}: refuted\n{}", r.conflict().unwrap()),
        }
    }
}
