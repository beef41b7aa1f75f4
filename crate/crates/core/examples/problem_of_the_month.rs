//! Does S1(Ω,T) imply the Hurewicz property Ufin(Γ,Γ)? What each answer
//! would settle.

use implify::analysis::problem_of_the_month;
use implify::dataset;

fn main() {
    let kb = dataset::spm2003();
    let table = dataset::golden_table();
    let e = dataset::PROBLEM_OF_THE_MONTH;
    println!(
        "{} => {} : currently {}",
        kb.properties()[e.row()].display_name(),
        kb.properties()[e.col()].display_name(),
        table.at(e)
    );
    let (yes, no) = problem_of_the_month(&kb, &table).unwrap();
    for r in [&yes, &no] {
        println!("if {}: {} -> {} open", r.hypothesis(), r.open_before, r.open_after().unwrap());
        for (e, v) in r.settled().iter().take(8) {
            println!("    {e} = {v}");
        }
    }
}
