//! Hasse diagram of the closed table in Graphviz format. Pass `--open` to
//! add the unsettled implications as dashed edges.
//!
//! ```text
//! cargo run --example diagram_dot | dot -Tsvg > diagram.svg
//! ```

use implify::dataset;
use implify::format::{render_dot, transitive_reduction};

fn main() {
    let show_open = std::env::args().any(|a| a == "--open");
    let kb = dataset::spm2003();
    let table = dataset::golden_table();
    eprintln!("{} covering edges", transitive_reduction(&table).len());
    print!("{}", render_dot(&table, &kb, show_open));
}
