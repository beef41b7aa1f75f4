//! Rebuild the whole table from the diagram arrows and the published
//! non-implications, then compare it byte for byte with the golden file.

use std::time::Instant;

use implify::analysis::{count_open, diff};
use implify::dataset;
use implify::deduction::close_kb;
use implify::format::{render_table, TableFormat};
use implify::FactKind;

fn main() {
    let kb = dataset::spm2003();
    let arrows = kb.facts().iter().filter(|f| f.kind == FactKind::Positive).count();
    println!(
        "{} properties, {} arrows, {} non-implications",
        kb.len(),
        arrows,
        kb.facts().len() - arrows
    );

    let t0 = Instant::now();
    let closed = close_kb(&kb, false).expect("bundled facts are consistent");
    let elapsed = t0.elapsed();

    let golden = dataset::golden_table();
    let differences = diff(&closed, &golden).unwrap();
    println!("closure took {elapsed:?}, {} open", count_open(&closed));
    println!("entries differing from golden: {}", differences.len());
    println!(
        "csv byte-identical: {}",
        render_table(&closed, TableFormat::Csv) == dataset::GOLDEN_CSV
    );
}
