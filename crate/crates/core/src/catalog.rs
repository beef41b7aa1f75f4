//! Properties, facts and the knowledge base that ties them together.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cardinals::{self, CardinalError, CardinalExpr, CardinalModel, ProvableOrder, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("catalog must contain at least one property")]
    Empty,
    #[error("duplicate property id {0}")]
    DuplicateId(usize),
    #[error("property ids must run 0..{n} without gaps; {missing} is missing")]
    GapInIds { missing: usize, n: usize },
    #[error("duplicate property name {0}")]
    DuplicateName(String),
    #[error("fact {from} -> {to} references a property outside 0..{n}")]
    UnknownProperty { from: usize, to: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Cardinal(#[from] CardinalError),
    #[error("property {property} has critical cardinality {crit}: {source}")]
    Crit {
        property: usize,
        crit: String,
        source: CardinalError,
    },
    #[error("{0}")]
    ModelViolation(Violation),
}

/// Serial number of a property; dense and zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct PropertyId(pub usize);

impl PropertyId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for PropertyId {
    fn from(i: usize) -> Self {
        PropertyId(i)
    }
}

/// Cover classes ordered by inclusion: Γ ⊆ T ⊆ Ω ⊆ O.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoverClass {
    /// γ-covers.
    Gamma,
    /// τ-covers.
    Tau,
    /// ω-covers.
    Omega,
    /// Countable open covers.
    Open,
}

impl CoverClass {
    pub const ALL: [CoverClass; 4] = [
        CoverClass::Gamma,
        CoverClass::Tau,
        CoverClass::Omega,
        CoverClass::Open,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            CoverClass::Gamma => "Γ",
            CoverClass::Tau => "T",
            CoverClass::Omega => "Ω",
            CoverClass::Open => "O",
        }
    }

    pub fn ascii(self) -> &'static str {
        match self {
            CoverClass::Gamma => "G",
            CoverClass::Tau => "T",
            CoverClass::Omega => "W",
            CoverClass::Open => "O",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "G" | "Γ" => Some(CoverClass::Gamma),
            "T" | "τ" | "Τ" => Some(CoverClass::Tau),
            "W" | "Ω" => Some(CoverClass::Omega),
            "O" => Some(CoverClass::Open),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Selector {
    S1,
    Sfin,
    Ufin,
}

impl Selector {
    pub fn as_str(self) -> &'static str {
        match self {
            Selector::S1 => "S1",
            Selector::Sfin => "Sfin",
            Selector::Ufin => "Ufin",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "S1" => Some(Selector::S1),
            "Sfin" => Some(Selector::Sfin),
            "Ufin" => Some(Selector::Ufin),
            _ => None,
        }
    }
}

/// One node of an implication diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Property {
    pub id: PropertyId,
    pub selector: Selector,
    pub source: CoverClass,
    pub target: CoverClass,
    /// Critical cardinality; `None` while unknown.
    pub crit: Option<CardinalExpr>,
}

impl Property {
    pub fn new(id: usize, selector: Selector, source: CoverClass, target: CoverClass) -> Self {
        Property {
            id: PropertyId(id),
            selector,
            source,
            target,
            crit: None,
        }
    }

    pub fn with_crit(mut self, crit: CardinalExpr) -> Self {
        self.crit = Some(crit);
        self
    }

    /// `S1(Ω,T)` style name.
    pub fn display_name(&self) -> String {
        format!(
            "{}({},{})",
            self.selector.as_str(),
            self.source.symbol(),
            self.target.symbol()
        )
    }

    /// `S1(W,T)` style name, as written in kb files.
    pub fn ascii_name(&self) -> String {
        format!(
            "{}({},{})",
            self.selector.as_str(),
            self.source.ascii(),
            self.target.ascii()
        )
    }

    /// Parses `Sel(A,B)` with either Unicode or ASCII cover symbols.
    pub fn parse_name(name: &str) -> Option<(Selector, CoverClass, CoverClass)> {
        let (sel, rest) = name.split_once('(')?;
        let inner = rest.strip_suffix(')')?;
        let (a, b) = inner.split_once(',')?;
        Some((
            Selector::parse(sel)?,
            CoverClass::parse(a.trim())?,
            CoverClass::parse(b.trim())?,
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FactKind {
    Positive,
    Negative,
}

/// An asserted implication (positive) or consistent counterexample (negative).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fact {
    pub kind: FactKind,
    pub from: PropertyId,
    pub to: PropertyId,
    pub justification: Option<String>,
}

impl Fact {
    pub fn implies(from: usize, to: usize) -> Self {
        Fact {
            kind: FactKind::Positive,
            from: PropertyId(from),
            to: PropertyId(to),
            justification: None,
        }
    }

    pub fn not_implies(from: usize, to: usize) -> Self {
        Fact {
            kind: FactKind::Negative,
            ..Fact::implies(from, to)
        }
    }

    /// Attaches provenance text; whitespace runs collapse to single spaces.
    pub fn with_justification(mut self, text: &str) -> Self {
        let t = text.split_whitespace().collect::<Vec<_>>().join(" ");
        self.justification = (!t.is_empty()).then_some(t);
        self
    }

    pub fn value(&self) -> crate::TruthValue {
        match self.kind {
            FactKind::Positive => crate::TruthValue::Implies,
            FactKind::Negative => crate::TruthValue::NotImplies,
        }
    }
}

/// Catalog, facts and cardinal data. The property list is fixed at
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnowledgeBase {
    properties: Vec<Property>,
    facts: Vec<Fact>,
    models: Vec<CardinalModel>,
    provable: ProvableOrder,
}

impl KnowledgeBase {
    /// Builds a catalog with no facts or models. Properties may arrive in any
    /// order; they are stored by id.
    pub fn new_catalog(mut properties: Vec<Property>) -> Result<Self, CatalogError> {
        if properties.is_empty() {
            return Err(CatalogError::Empty);
        }
        properties.sort_by_key(|p| p.id);
        for w in properties.windows(2) {
            if w[0].id == w[1].id {
                return Err(CatalogError::DuplicateId(w[0].id.0));
            }
        }
        let n = properties.len();
        if let Some(missing) = (0..n).find(|&i| properties[i].id.0 != i) {
            return Err(CatalogError::GapInIds { missing, n });
        }
        let mut seen = BTreeSet::new();
        for p in &properties {
            if !seen.insert((p.selector, p.source, p.target)) {
                return Err(CatalogError::DuplicateName(p.display_name()));
            }
        }
        Ok(KnowledgeBase {
            properties,
            facts: Vec::new(),
            models: Vec::new(),
            provable: ProvableOrder::default(),
        })
    }

    pub fn with_facts(
        mut self,
        facts: impl IntoIterator<Item = Fact>,
    ) -> Result<Self, CatalogError> {
        let n = self.len();
        for f in facts {
            if f.from.0 >= n || f.to.0 >= n {
                return Err(CatalogError::UnknownProperty {
                    from: f.from.0,
                    to: f.to.0,
                    n,
                });
            }
            self.facts.push(f);
        }
        Ok(self)
    }

    pub fn with_models(mut self, models: impl IntoIterator<Item = CardinalModel>) -> Self {
        self.models.extend(models);
        self
    }

    pub fn with_provable(mut self, provable: ProvableOrder) -> Self {
        self.provable = provable;
        self
    }

    pub fn len(&self) -> usize {
        self.properties.len()
    }

    pub fn is_empty(&self) -> bool {
        self.properties.is_empty()
    }

    pub fn properties(&self) -> &[Property] {
        &self.properties
    }

    pub fn property(&self, id: usize) -> Option<&Property> {
        self.properties.get(id)
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn models(&self) -> &[CardinalModel] {
        &self.models
    }

    pub fn provable(&self) -> &ProvableOrder {
        &self.provable
    }

    pub fn find_by_name(&self, name: &str) -> Option<&Property> {
        let key = Property::parse_name(name)?;
        self.properties
            .iter()
            .find(|p| (p.selector, p.source, p.target) == key)
    }

    /// Full dataset check: provable order is acyclic, every model ranks every
    /// cardinal in use with a positive rank, and no model breaks a provable
    /// inequality.
    pub fn validate(&self) -> Result<(), ValidationError> {
        self.provable.check_acyclic()?;
        let mut used: BTreeSet<&str> = BTreeSet::new();
        for (l, g) in self.provable.pairs() {
            used.extend(l.bases());
            used.extend(g.bases());
        }
        for m in &self.models {
            for (name, &rank) in m.ranks() {
                if rank == 0 {
                    return Err(CardinalError::ZeroRank {
                        model: m.name().into(),
                        cardinal: name.clone(),
                    }
                    .into());
                }
            }
            for p in &self.properties {
                if let Some(crit) = &p.crit {
                    if let Err(source) = cardinals::eval(crit, m) {
                        let cardinal = match source {
                            CardinalError::UnknownCardinal(c) => c,
                            other => other.to_string(),
                        };
                        return Err(ValidationError::Crit {
                            property: p.id.0,
                            crit: crit.to_string(),
                            source: CardinalError::MissingRank {
                                model: m.name().into(),
                                cardinal,
                            },
                        });
                    }
                }
            }
            for c in &used {
                if m.rank(c).is_none() {
                    return Err(CardinalError::MissingRank {
                        model: m.name().into(),
                        cardinal: c.to_string(),
                    }
                    .into());
                }
            }
        }
        if let Some(v) = cardinals::validate_models(self).into_iter().next() {
            return Err(ValidationError::ModelViolation(v));
        }
        Ok(())
    }
}
