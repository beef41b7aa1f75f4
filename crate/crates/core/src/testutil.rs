use crate::catalog::{CoverClass, KnowledgeBase, Property, Selector};

/// Catalog of `n` distinct properties with no facts, n <= 48.
pub(crate) fn small_catalog(n: usize) -> KnowledgeBase {
    let props = (0..n)
        .map(|i| {
            let sel = [Selector::S1, Selector::Sfin, Selector::Ufin][i / 16];
            Property::new(i, sel, CoverClass::ALL[i / 4 % 4], CoverClass::ALL[i % 4])
        })
        .collect();
    KnowledgeBase::new_catalog(props).unwrap()
}
