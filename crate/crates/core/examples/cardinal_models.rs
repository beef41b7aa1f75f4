//! The shipped cardinal models: validation against the provable order, the
//! non-implications they license, and whether those add anything to the
//! published table.

use implify::analysis::diff;
use implify::cardinals::{consistently_greater, eval, validate_models};
use implify::deduction::{cardinal_separations, close_kb};
use implify::{dataset, CardinalExpr};

fn main() {
    let kb = dataset::spm2003();
    for m in kb.models() {
        let ranks: Vec<String> = m.ranks().iter().map(|(c, r)| format!("{c}={r}")).collect();
        println!("{:<13} {}", m.name(), ranks.join(" "));
        if let Some(c) = m.citation() {
            println!("{:<13} {c}", "");
        }
    }
    println!("violations of the provable order: {}", validate_models(&kb).len());

    let x: CardinalExpr = "max(s,b)".parse().unwrap();
    let b = CardinalExpr::base("b");
    println!(
        "x = {x}: consistently > b? {}",
        consistently_greater(&x, &b, kb.models()).unwrap()
    );
    for m in kb.models() {
        println!("  in {}: x = {}, b = {}", m.name(), eval(&x, m).unwrap(), eval(&b, m).unwrap());
    }

    let seps = cardinal_separations(&kb).unwrap();
    println!("non-implications licensed by models: {}", seps.len());
    for s in seps.iter().take(5) {
        println!("  ({},{}) = 0  by {}", s.from, s.to, s.describe(&kb));
    }
    let with = close_kb(&kb, true).unwrap();
    let without = close_kb(&kb, false).unwrap();
    println!("entries changed by the models: {}", diff(&without, &with).unwrap().len());
}
