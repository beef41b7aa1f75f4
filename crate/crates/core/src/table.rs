//! The `n × n` implication table over `{1, 0, ?}`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{FactKind, KnowledgeBase, PropertyId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("facts assert both {from} => {to} and its negation")]
    FactConflict { from: usize, to: usize },
    #[error("negative fact {0} =/=> {0} contradicts reflexivity")]
    DiagonalNegative(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TruthValue {
    Implies,
    NotImplies,
    Open,
}

impl TruthValue {
    /// `1`, `0` or `?`.
    pub fn symbol(self) -> char {
        match self {
            TruthValue::Implies => '1',
            TruthValue::NotImplies => '0',
            TruthValue::Open => '?',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            '1' => Some(TruthValue::Implies),
            '0' => Some(TruthValue::NotImplies),
            '?' => Some(TruthValue::Open),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TruthValue::Implies => "implies",
            TruthValue::NotImplies => "not_implies",
            TruthValue::Open => "open",
        }
    }

    /// Accepts `implies`/`not_implies`/`open` as well as `1`/`0`/`?`.
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "implies" => Some(TruthValue::Implies),
            "not_implies" => Some(TruthValue::NotImplies),
            "open" => Some(TruthValue::Open),
            _ if s.chars().count() == 1 => Self::from_symbol(s.chars().next()?),
            _ => None,
        }
    }

    pub fn is_decided(self) -> bool {
        self != TruthValue::Open
    }

    pub fn negated(self) -> Self {
        match self {
            TruthValue::Implies => TruthValue::NotImplies,
            TruthValue::NotImplies => TruthValue::Implies,
            TruthValue::Open => TruthValue::Open,
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Cell address: row `from`, column `to`. Orders row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Entry {
    #[serde(rename = "i")]
    pub from: PropertyId,
    #[serde(rename = "j")]
    pub to: PropertyId,
}

impl Entry {
    pub fn new(from: usize, to: usize) -> Self {
        Entry {
            from: PropertyId(from),
            to: PropertyId(to),
        }
    }

    pub fn row(self) -> usize {
        self.from.0
    }

    pub fn col(self) -> usize {
        self.to.0
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.from, self.to)
    }
}

impl From<(usize, usize)> for Entry {
    fn from((i, j): (usize, usize)) -> Self {
        Entry::new(i, j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ImplicationTable {
    n: usize,
    cells: Vec<TruthValue>,
}

impl ImplicationTable {
    /// All entries `?`, including the diagonal.
    pub fn open(n: usize) -> Self {
        ImplicationTable {
            n,
            cells: vec![TruthValue::Open; n * n],
        }
    }

    /// Builds a table from row-major cells; `None` unless `cells.len() == n²`.
    pub fn from_cells(n: usize, cells: Vec<TruthValue>) -> Option<Self> {
        (cells.len() == n * n).then_some(ImplicationTable { n, cells })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> TruthValue {
        assert!(i < self.n && j < self.n, "entry ({i},{j}) outside {0}x{0} table", self.n);
        self.cells[i * self.n + j]
    }

    pub fn at(&self, e: Entry) -> TruthValue {
        self.get(e.row(), e.col())
    }

    pub fn set(&mut self, i: usize, j: usize, v: TruthValue) {
        assert!(i < self.n && j < self.n, "entry ({i},{j}) outside {0}x{0} table", self.n);
        self.cells[i * self.n + j] = v;
    }

    pub fn contains(&self, e: Entry) -> bool {
        e.row() < self.n && e.col() < self.n
    }

    /// Row-major cells.
    pub fn cells(&self) -> &[TruthValue] {
        &self.cells
    }

    pub fn row(&self, i: usize) -> &[TruthValue] {
        &self.cells[i * self.n..(i + 1) * self.n]
    }

    /// `(entry, value)` pairs in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (Entry, TruthValue)> + '_ {
        let n = self.n;
        self.cells
            .iter()
            .enumerate()
            .map(move |(k, &v)| (Entry::new(k / n, k % n), v))
    }
}

/// Table seeded from the knowledge base: diagonal `1`, each fact at its
/// entry, everything else `?`.
pub fn initial_table(kb: &KnowledgeBase) -> Result<ImplicationTable, TableError> {
    let n = kb.len();
    let mut t = ImplicationTable::open(n);
    for i in 0..n {
        t.set(i, i, TruthValue::Implies);
    }
    for f in kb.facts() {
        let (i, j) = (f.from.0, f.to.0);
        if f.kind == FactKind::Negative && i == j {
            return Err(TableError::DiagonalNegative(i));
        }
        let v = f.value();
        match t.get(i, j) {
            TruthValue::Open => t.set(i, j, v),
            cur if cur == v => {}
            _ => return Err(TableError::FactConflict { from: i, to: j }),
        }
    }
    Ok(t)
}
