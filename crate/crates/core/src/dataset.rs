//! The bundled τ-cover dataset: 22 selection principles, the diagram arrows,
//! the published non-implications and three cardinal models.

use crate::catalog::KnowledgeBase;
use crate::format::{parse_kb, parse_table, TableFormat};
use crate::table::{Entry, ImplicationTable};

/// `data/spm2003.kb`.
pub const SPM2003_KB: &str = include_str!("../../../data/spm2003.kb");

/// `data/golden.csv`: the published implication table.
pub const GOLDEN_CSV: &str = include_str!("../../../data/golden.csv");

/// `data/manifest.txt`: regression values computed by the engine.
pub const MANIFEST: &str = include_str!("../../../data/manifest.txt");

/// Does `S1(Ω,T)` imply the Hurewicz property `Ufin(Γ,Γ)`?
pub const PROBLEM_OF_THE_MONTH: Entry = Entry {
    from: crate::PropertyId(9),
    to: crate::PropertyId(18),
};

pub fn spm2003() -> KnowledgeBase {
    parse_kb(SPM2003_KB).expect("bundled knowledge base is valid")
}

pub fn golden_table() -> ImplicationTable {
    parse_table(GOLDEN_CSV, TableFormat::Csv).expect("bundled golden table parses")
}

/// `key = value` lines of the manifest, comments stripped.
pub fn manifest_value(key: &str) -> Option<&'static str> {
    MANIFEST.lines().find_map(|l| {
        let l = l.split('#').next()?.trim();
        let (k, v) = l.split_once('=')?;
        (k.trim() == key).then(|| v.trim())
    })
}
