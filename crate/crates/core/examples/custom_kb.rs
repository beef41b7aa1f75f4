//! A knowledge base written inline: parse it, close it, look at a
//! derivation, and write it back out.

use implify::deduction::close_kb;
use implify::explain::explain;
use implify::format::{parse_kb, render_table, serialize_kb, TableFormat};
use implify::Entry;

const KB: &str = "\
property 0 S1(W,W) crit=cov(M)
property 1 S1(O,O) crit=cov(M)
property 2 Sfin(W,W) crit=d
property 3 Ufin(G,O) crit=d
cardinal cov(M) <= d
model cohen cov(M)=2 d=2 # adding aleph_2 Cohen reals
model random cov(M)=1 d=1
implies 0 1
implies 0 2 # selecting one is selecting finitely many
implies 2 3
notimplies 3 1 # hypothetical, for the demo
";

fn main() {
    let kb = parse_kb(KB).unwrap_or_else(|e| panic!("{e}"));
    let table = close_kb(&kb, false).unwrap();
    print!("{}", render_table(&table, TableFormat::Ascii));
    println!("\n{}", explain(&table, &kb, Entry::new(3, 0), false).unwrap());
    print!("{}", serialize_kb(&kb));
}
