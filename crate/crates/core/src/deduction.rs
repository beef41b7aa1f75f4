//! Closure of an implication table.
//!
//! Rules, applied until nothing changes:
//!
//! * R1 `i ⇒ i`
//! * R2 `i ⇒ j`, `j ⇒ k` give `i ⇒ k`
//! * R3a `i ⇏ k`, `i ⇒ j` give `j ⇏ k`
//! * R3b `i ⇏ k`, `j ⇒ k` give `i ⇏ j`
//! * R4 (opt-in) `i ⇏ j` when some shipped cardinal model ranks
//!   crit(i) above crit(j)
//!
//! Decided entries are frozen. Deriving the opposite of a decided entry is a
//! [`Conflict`], reported with one derivation of each side.

use thiserror::Error;

use crate::cardinals::{self, CardinalError};
use crate::catalog::KnowledgeBase;
use crate::explain::{self, Conflict};
use crate::table::{initial_table, Entry, ImplicationTable, TableError, TruthValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeductionError {
    #[error("table is {table}x{table} but the catalog has {catalog} properties")]
    DimensionMismatch { table: usize, catalog: usize },
    #[error("assumed entry {0} lies outside the table")]
    OutOfRange(Entry),
    #[error("{0}")]
    Conflict(Box<Conflict>),
    #[error(transparent)]
    Cardinal(#[from] CardinalError),
    #[error(transparent)]
    InitialTable(#[from] TableError),
}

impl DeductionError {
    pub fn conflict(&self) -> Option<&Conflict> {
        match self {
            DeductionError::Conflict(c) => Some(c),
            _ => None,
        }
    }
}

/// A non-implication licensed by a cardinal model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub from: usize,
    pub to: usize,
    pub model: String,
}

impl Separation {
    pub fn describe(&self, kb: &KnowledgeBase) -> String {
        let crit = |i: usize| {
            kb.properties()[i]
                .crit
                .as_ref()
                .map_or_else(|| "?".to_string(), |c| c.to_string())
        };
        format!(
            "model {}: crit({}) = {} > crit({}) = {}",
            self.model,
            self.from,
            crit(self.from),
            self.to,
            crit(self.to)
        )
    }
}

/// Every `(i, j)` with both critical cardinalities known and some model
/// ranking crit(i) strictly above crit(j), row-major.
pub fn cardinal_separations(kb: &KnowledgeBase) -> Result<Vec<Separation>, CardinalError> {
    let mut out = Vec::new();
    for p in kb.properties() {
        let Some(ci) = &p.crit else { continue };
        for q in kb.properties() {
            let Some(cj) = &q.crit else { continue };
            if let Some(m) = cardinals::separating_model(ci, cj, kb.models())? {
                out.push(Separation {
                    from: p.id.0,
                    to: q.id.0,
                    model: m.name().to_string(),
                });
            }
        }
    }
    Ok(out)
}

/// Configurable closure: optional cardinal separation and extra assumed
/// entries.
#[derive(Debug, Clone)]
pub struct Closer<'kb> {
    kb: &'kb KnowledgeBase,
    use_cardinals: bool,
    assumptions: Vec<(Entry, TruthValue)>,
}

impl<'kb> Closer<'kb> {
    pub fn new(kb: &'kb KnowledgeBase) -> Self {
        Closer {
            kb,
            use_cardinals: false,
            assumptions: Vec::new(),
        }
    }

    pub fn use_cardinals(mut self, on: bool) -> Self {
        self.use_cardinals = on;
        self
    }

    /// Adds `entry = value` on top of the table being closed. `Open` is ignored.
    pub fn assume(mut self, entry: Entry, value: TruthValue) -> Self {
        if value.is_decided() {
            self.assumptions.push((entry, value));
        }
        self
    }

    pub fn close(&self, table: &ImplicationTable) -> Result<ImplicationTable, DeductionError> {
        self.close_scheduled(table, |len| len - 1)
    }

    /// Closure with a caller-chosen worklist order: `pick(len)` returns the
    /// index of the pending entry to process next. The result does not depend
    /// on the order; this exists so that can be tested.
    pub fn close_scheduled(
        &self,
        table: &ImplicationTable,
        mut pick: impl FnMut(usize) -> usize,
    ) -> Result<ImplicationTable, DeductionError> {
        let n = table.size();
        if n != self.kb.len() {
            return Err(DeductionError::DimensionMismatch {
                table: n,
                catalog: self.kb.len(),
            });
        }
        if let Some(&(e, _)) = self.assumptions.iter().find(|(e, _)| !table.contains(*e)) {
            return Err(DeductionError::OutOfRange(e));
        }
        let mut state = Worklist {
            n,
            cells: table.cells().to_vec(),
            pending: Vec::new(),
        };
        state.pending.extend(
            table
                .iter()
                .filter(|(_, v)| v.is_decided())
                .map(|(e, _)| (e.row(), e.col())),
        );
        let run = |state: &mut Worklist| -> Result<(), Entry> {
            for i in 0..n {
                state.assign(i, i, TruthValue::Implies)?;
            }
            for &(e, v) in &self.assumptions {
                state.assign(e.row(), e.col(), v)?;
            }
            Ok(())
        };
        let mut outcome = run(&mut state);
        if outcome.is_ok() && self.use_cardinals {
            for sep in cardinal_separations(self.kb)? {
                outcome = state.assign(sep.from, sep.to, TruthValue::NotImplies);
                if outcome.is_err() {
                    break;
                }
            }
        }
        while outcome.is_ok() && !state.pending.is_empty() {
            let len = state.pending.len();
            let (i, j) = state.pending.swap_remove(pick(len).min(len - 1));
            outcome = state.propagate(i, j);
        }
        match outcome {
            Ok(()) => Ok(ImplicationTable::from_cells(n, state.cells).expect("n² cells")),
            Err(entry) => {
                let axioms =
                    explain::axioms(self.kb, Some(table), &self.assumptions, self.use_cardinals)?;
                Err(DeductionError::Conflict(Box::new(explain::conflict_at(
                    n, &axioms, entry,
                ))))
            }
        }
    }
}

struct Worklist {
    n: usize,
    cells: Vec<TruthValue>,
    pending: Vec<(usize, usize)>,
}

impl Worklist {
    fn get(&self, i: usize, j: usize) -> TruthValue {
        self.cells[i * self.n + j]
    }

    fn assign(&mut self, i: usize, j: usize, v: TruthValue) -> Result<(), Entry> {
        let cell = &mut self.cells[i * self.n + j];
        match *cell {
            TruthValue::Open => {
                *cell = v;
                self.pending.push((i, j));
                Ok(())
            }
            cur if cur == v => Ok(()),
            _ => Err(Entry::new(i, j)),
        }
    }

    /// Fires every rule instance that has `(a, b)` as a premise.
    fn propagate(&mut self, a: usize, b: usize) -> Result<(), Entry> {
        use TruthValue::{Implies as I, NotImplies as N};
        match self.get(a, b) {
            I => {
                for k in 0..self.n {
                    // R2 with (a,b) first, then second.
                    if self.get(b, k) == I {
                        self.assign(a, k, I)?;
                    }
                    if self.get(k, a) == I {
                        self.assign(k, b, I)?;
                    }
                    // R3a with (a,b) as i => j; R3b with (a,b) as j => k.
                    if self.get(a, k) == N {
                        self.assign(b, k, N)?;
                    }
                    if self.get(k, b) == N {
                        self.assign(k, a, N)?;
                    }
                }
            }
            N => {
                for j in 0..self.n {
                    if self.get(a, j) == I {
                        self.assign(j, b, N)?;
                    }
                    if self.get(j, b) == I {
                        self.assign(a, j, N)?;
                    }
                }
            }
            TruthValue::Open => {}
        }
        Ok(())
    }
}

/// Least fixpoint of R1–R3 (plus R4 when `use_cardinals`) above `table`.
pub fn close(
    table: &ImplicationTable,
    kb: &KnowledgeBase,
    use_cardinals: bool,
) -> Result<ImplicationTable, DeductionError> {
    Closer::new(kb).use_cardinals(use_cardinals).close(table)
}

/// Closure of the knowledge base's own initial table.
pub fn close_kb(kb: &KnowledgeBase, use_cardinals: bool) -> Result<ImplicationTable, DeductionError> {
    close(&initial_table(kb)?, kb, use_cardinals)
}

/// Result of checking a table against its closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Closedness {
    Closed,
    /// Entries the closure would add.
    Incomplete(Vec<(Entry, TruthValue)>),
    Conflicting(Box<Conflict>),
}

pub fn check_closed(
    table: &ImplicationTable,
    kb: &KnowledgeBase,
    use_cardinals: bool,
) -> Result<Closedness, DeductionError> {
    match close(table, kb, use_cardinals) {
        Ok(closed) => {
            let missing: Vec<_> = closed
                .iter()
                .filter(|&(e, v)| table.at(e) != v)
                .collect();
            Ok(if missing.is_empty() {
                Closedness::Closed
            } else {
                Closedness::Incomplete(missing)
            })
        }
        Err(DeductionError::Conflict(c)) => Ok(Closedness::Conflicting(c)),
        Err(e) => Err(e),
    }
}

/// Whether `table` is its own closure. Conflicts and dimension errors count as
/// not closed; [`check_closed`] has the details.
pub fn is_closed(table: &ImplicationTable, kb: &KnowledgeBase, use_cardinals: bool) -> bool {
    matches!(check_closed(table, kb, use_cardinals), Ok(Closedness::Closed))
}
