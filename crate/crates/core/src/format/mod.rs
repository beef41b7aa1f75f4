//! File formats: knowledge-base text, table renderings and DOT.

mod dot;
mod kb;
mod table;

pub use dot::{render_dot, transitive_reduction};
pub use kb::{parse_kb, serialize_kb, KbError};
pub use table::{parse_table, render_table, TableFormat, TableParseError};

/// SHA-256 of the canonical serialisation, hex encoded.
pub fn content_hash(kb: &crate::KnowledgeBase) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(serialize_kb(kb).as_bytes()))
}
