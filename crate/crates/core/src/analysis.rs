//! Open problems and their impact.
//!
//! A hypothesis fixes one open entry to `1` or `0`. Re-closing the table then
//! settles the entry itself and everything that follows from it. The number
//! of entries settled measures how much a solution of that one problem would
//! tell us.

use serde::Serialize;
use thiserror::Error;

use crate::catalog::KnowledgeBase;
use crate::dataset;
use crate::deduction::{Closer, DeductionError};
use crate::explain::Conflict;
use crate::table::{Entry, ImplicationTable, TruthValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("a hypothesis must assert 1 or 0, not ?")]
    OpenHypothesis,
    #[error("hypothesis entry {0} lies outside the table")]
    OutOfRange(Entry),
    #[error("tables differ in size: {0}x{0} vs {1}x{1}")]
    DimensionMismatch(usize, usize),
    #[error("the problem-of-the-month preset needs the bundled catalog")]
    PresetUnavailable,
    #[error(transparent)]
    Deduction(DeductionError),
}

/// A hypothetical value for one entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Hypothesis {
    pub entry: Entry,
    pub value: TruthValue,
}

impl Hypothesis {
    pub fn new(i: usize, j: usize, value: TruthValue) -> Result<Self, AnalysisError> {
        if !value.is_decided() {
            return Err(AnalysisError::OpenHypothesis);
        }
        Ok(Hypothesis {
            entry: Entry::new(i, j),
            value,
        })
    }
}

impl std::fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:={}", self.entry, self.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WhatIfStatus {
    Consistent,
    Refuted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Consistent {
        table_after: ImplicationTable,
        /// Entries open before and decided after, row-major.
        settled: Vec<(Entry, TruthValue)>,
    },
    Refuted(Box<Conflict>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhatIfResult {
    /// The asserted hypotheses; the first is the primary one.
    pub hypotheses: Vec<Hypothesis>,
    pub open_before: usize,
    pub outcome: Outcome,
}

impl WhatIfResult {
    pub fn hypothesis(&self) -> Hypothesis {
        self.hypotheses[0]
    }

    pub fn status(&self) -> WhatIfStatus {
        match self.outcome {
            Outcome::Consistent { .. } => WhatIfStatus::Consistent,
            Outcome::Refuted(_) => WhatIfStatus::Refuted,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.status() == WhatIfStatus::Consistent
    }

    pub fn table_after(&self) -> Option<&ImplicationTable> {
        match &self.outcome {
            Outcome::Consistent { table_after, .. } => Some(table_after),
            Outcome::Refuted(_) => None,
        }
    }

    pub fn open_after(&self) -> Option<usize> {
        self.table_after().map(count_open)
    }

    /// Empty when refuted.
    pub fn settled(&self) -> &[(Entry, TruthValue)] {
        match &self.outcome {
            Outcome::Consistent { settled, .. } => settled,
            Outcome::Refuted(_) => &[],
        }
    }

    pub fn conflict(&self) -> Option<&Conflict> {
        match &self.outcome {
            Outcome::Refuted(c) => Some(c),
            Outcome::Consistent { .. } => None,
        }
    }
}

/// One ranked hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankingEntry {
    pub hypothesis: Hypothesis,
    pub settled_count: usize,
    pub open_after: usize,
}

pub fn count_open(table: &ImplicationTable) -> usize {
    table.cells().iter().filter(|v| !v.is_decided()).count()
}

/// Open entries, row-major.
pub fn open_entries(table: &ImplicationTable) -> Vec<Entry> {
    table
        .iter()
        .filter(|(_, v)| !v.is_decided())
        .map(|(e, _)| e)
        .collect()
}

/// Asserts `h` on a copy of `table`, re-closes under R1–R3 and reports what
/// got settled.
pub fn what_if(
    kb: &KnowledgeBase,
    table: &ImplicationTable,
    h: Hypothesis,
) -> Result<WhatIfResult, AnalysisError> {
    what_if_all(kb, table, &[h], false)
}

/// Asserts several hypotheses at once. With `use_cardinals`, R4 also takes
/// part and may refute hypotheses R1–R3 alone would accept.
pub fn what_if_all(
    kb: &KnowledgeBase,
    table: &ImplicationTable,
    hypotheses: &[Hypothesis],
    use_cardinals: bool,
) -> Result<WhatIfResult, AnalysisError> {
    assert!(!hypotheses.is_empty(), "what-if needs at least one hypothesis");
    if let Some(h) = hypotheses.iter().find(|h| !table.contains(h.entry)) {
        return Err(AnalysisError::OutOfRange(h.entry));
    }
    let mut closer = Closer::new(kb).use_cardinals(use_cardinals);
    for h in hypotheses {
        closer = closer.assume(h.entry, h.value);
    }
    let open_before = count_open(table);
    let outcome = match closer.close(table) {
        Ok(after) => {
            let settled = table
                .iter()
                .filter(|(e, v)| !v.is_decided() && after.at(*e).is_decided())
                .map(|(e, _)| (e, after.at(e)))
                .collect();
            Outcome::Consistent {
                table_after: after,
                settled,
            }
        }
        Err(DeductionError::Conflict(c)) => Outcome::Refuted(c),
        Err(e) => return Err(AnalysisError::Deduction(e)),
    };
    Ok(WhatIfResult {
        hypotheses: hypotheses.to_vec(),
        open_before,
        outcome,
    })
}

/// Every open entry under every requested value, most settling first. Ties
/// go to the smaller row, then column, then `1` before `0`. Refuted
/// hypotheses are left out.
pub fn rank(
    kb: &KnowledgeBase,
    table: &ImplicationTable,
    values: &[TruthValue],
) -> Result<Vec<RankingEntry>, AnalysisError> {
    rank_with(kb, table, values, false)
}

pub fn rank_with(
    kb: &KnowledgeBase,
    table: &ImplicationTable,
    values: &[TruthValue],
    use_cardinals: bool,
) -> Result<Vec<RankingEntry>, AnalysisError> {
    let mut wanted: Vec<TruthValue> = [TruthValue::Implies, TruthValue::NotImplies]
        .into_iter()
        .filter(|v| values.contains(v))
        .collect();
    wanted.dedup();
    let mut out = Vec::new();
    for e in open_entries(table) {
        for &v in &wanted {
            let h = Hypothesis { entry: e, value: v };
            let r = what_if_all(kb, table, &[h], use_cardinals)?;
            if let Some(open_after) = r.open_after() {
                out.push(RankingEntry {
                    hypothesis: h,
                    settled_count: r.settled().len(),
                    open_after,
                });
            }
        }
    }
    // Generated in tie-break order already; the sort is stable.
    out.sort_by_key(|r| std::cmp::Reverse(r.settled_count));
    Ok(out)
}

/// Entries where `a` and `b` differ, row-major.
pub fn diff(
    a: &ImplicationTable,
    b: &ImplicationTable,
) -> Result<Vec<(Entry, TruthValue, TruthValue)>, AnalysisError> {
    if a.size() != b.size() {
        return Err(AnalysisError::DimensionMismatch(a.size(), b.size()));
    }
    Ok(a.iter()
        .zip(b.cells())
        .filter(|((_, x), y)| x != *y)
        .map(|((e, x), &y)| (e, x, y))
        .collect())
}

/// Whether `S1(Ω,T)` implies the Hurewicz property `Ufin(Γ,Γ)`: both answers
/// to entry (9,18), positive first.
pub fn problem_of_the_month(
    kb: &KnowledgeBase,
    table: &ImplicationTable,
) -> Result<(WhatIfResult, WhatIfResult), AnalysisError> {
    if kb.properties() != dataset::spm2003().properties() {
        return Err(AnalysisError::PresetUnavailable);
    }
    let e = dataset::PROBLEM_OF_THE_MONTH;
    let yes = what_if(kb, table, Hypothesis::new(e.row(), e.col(), TruthValue::Implies)?)?;
    let no = what_if(kb, table, Hypothesis::new(e.row(), e.col(), TruthValue::NotImplies)?)?;
    Ok((yes, no))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Fact;
    use crate::deduction::close;
    use crate::table::initial_table;
    use crate::testutil::small_catalog;
    use TruthValue::*;

    fn chain() -> (KnowledgeBase, ImplicationTable) {
        // 0 -> 1, 2 -/-> 1; everything else between 0, 1, 2 open.
        let kb = small_catalog(3)
            .with_facts([Fact::implies(0, 1), Fact::not_implies(2, 1)])
            .unwrap();
        let t = close(&initial_table(&kb).unwrap(), &kb, false).unwrap();
        (kb, t)
    }

    #[test]
    fn counting() {
        let kb = small_catalog(3);
        let t = initial_table(&kb).unwrap();
        assert_eq!(count_open(&t), 6);
        assert_eq!(open_entries(&t)[0], Entry::new(0, 1));
        let full = ImplicationTable::from_cells(1, vec![Implies]).unwrap();
        assert_eq!(count_open(&full), 0);
        assert!(open_entries(&full).is_empty());
    }

    #[test]
    fn settled_includes_hypothesis() {
        let (kb, t) = chain();
        assert_eq!(t.get(2, 0), NotImplies);
        let r = what_if(&kb, &t, Hypothesis::new(1, 2, Implies).unwrap()).unwrap();
        assert!(r.is_consistent());
        assert!(r.settled().contains(&(Entry::new(1, 2), Implies)));
        assert!(r.settled().contains(&(Entry::new(0, 2), Implies)));
        assert_eq!(r.open_before - r.open_after().unwrap(), r.settled().len());
    }

    #[test]
    fn decided_entries() {
        let (kb, t) = chain();
        let same = what_if(&kb, &t, Hypothesis::new(0, 1, Implies).unwrap()).unwrap();
        assert!(same.is_consistent() && same.settled().is_empty());
        let opposite = what_if(&kb, &t, Hypothesis::new(0, 1, NotImplies).unwrap()).unwrap();
        assert_eq!(opposite.status(), WhatIfStatus::Refuted);
        assert!(opposite.table_after().is_none());
        assert_eq!(opposite.conflict().unwrap().entry, Entry::new(0, 1));
    }

    #[test]
    fn hypotheses_are_validated() {
        assert_eq!(Hypothesis::new(0, 0, Open), Err(AnalysisError::OpenHypothesis));
        let (kb, t) = chain();
        assert_eq!(
            what_if(&kb, &t, Hypothesis::new(0, 9, Implies).unwrap()),
            Err(AnalysisError::OutOfRange(Entry::new(0, 9)))
        );
    }

    #[test]
    fn ranking_order_and_ties() {
        let (kb, t) = chain();
        let r = rank(&kb, &t, &[Implies, NotImplies]).unwrap();
        assert_eq!(r.len(), 2 * count_open(&t));
        for w in r.windows(2) {
            assert!(w[0].settled_count >= w[1].settled_count);
            if w[0].settled_count == w[1].settled_count {
                assert!(w[0].hypothesis < w[1].hypothesis);
            }
        }
        let full = close(&initial_table(&kb).unwrap(), &kb, false).unwrap();
        let decided = ImplicationTable::from_cells(
            3,
            full.cells().iter().map(|v| if v.is_decided() { *v } else { NotImplies }).collect(),
        )
        .unwrap();
        assert!(rank(&kb, &decided, &[Implies]).unwrap().is_empty());
    }

    #[test]
    fn diffs() {
        let (_, t) = chain();
        assert!(diff(&t, &t).unwrap().is_empty());
        assert_eq!(
            diff(&ImplicationTable::open(2), &ImplicationTable::open(3)),
            Err(AnalysisError::DimensionMismatch(2, 3))
        );
        let mut u = t.clone();
        u.set(1, 0, Implies);
        assert_eq!(diff(&t, &u).unwrap(), vec![(Entry::new(1, 0), Open, Implies)]);
    }

    #[test]
    fn preset_needs_bundled_catalog() {
        let (kb, t) = chain();
        assert_eq!(problem_of_the_month(&kb, &t), Err(AnalysisError::PresetUnavailable));
    }
}
