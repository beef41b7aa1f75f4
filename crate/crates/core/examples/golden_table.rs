//! Load the published table, confirm it is closed, and show what is open.

use implify::analysis::{count_open, open_entries};
use implify::dataset;
use implify::format::{render_table, TableFormat};

fn main() {
    let kb = dataset::spm2003();
    let golden = dataset::golden_table();
    print!("{}", render_table(&golden, TableFormat::Ascii));
    println!();
    println!("closed under R1-R3: {}", implify::is_closed(&golden, &kb, false));
    println!("open entries: {}", count_open(&golden));
    for e in open_entries(&golden).iter().take(5) {
        let (p, q) = (&kb.properties()[e.row()], &kb.properties()[e.col()]);
        println!("  {e}  {} => {} ?", p.display_name(), q.display_name());
    }
    println!("  ...");
}
