//! Stack several hypotheses and close once, as the explorer does with its
//! session state.

use implify::analysis::{what_if, what_if_all};
use implify::{dataset, Hypothesis, TruthValue::*};

fn main() {
    let kb = dataset::spm2003();
    let table = dataset::golden_table();
    let hs = [
        Hypothesis::new(12, 5, Implies).unwrap(),
        Hypothesis::new(16, 3, NotImplies).unwrap(),
    ];
    for h in hs {
        let r = what_if(&kb, &table, h).unwrap();
        println!("{h} alone: {} open", r.open_after().unwrap());
    }
    let both = what_if_all(&kb, &table, &hs, false).unwrap();
    match both.open_after() {
        Some(n) => println!("both: {n} open, {} settled", both.settled().len()),
        None => println!("both: jointly refuted\n{}", both.conflict().unwrap()),
    }

    let clash = [hs[0], Hypothesis::new(12, 5, NotImplies).unwrap()];
    let r = what_if_all(&kb, &table, &clash, false).unwrap();
    println!("{} and {}: {:?}", clash[0], clash[1], r.status());
}
