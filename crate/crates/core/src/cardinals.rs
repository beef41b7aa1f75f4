//! Cardinal characteristics as a finite consistency oracle.
//!
//! A property's critical cardinality is the least size of a set of reals
//! failing it. If `i` implies `j` then every set failing `j` fails `i`, so the
//! critical cardinality of `i` can never exceed that of `j`. Exhibiting one
//! consistent configuration where it does exceed it therefore refutes the
//! implication. Configurations are shipped as data ([`CardinalModel`]), each
//! one a ranking of the base cardinals in a known model of set theory.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CardinalError {
    #[error("unknown cardinal `{0}`")]
    UnknownCardinal(String),
    #[error("model `{model}` assigns no rank to `{cardinal}`")]
    MissingRank { model: String, cardinal: String },
    #[error("model `{model}` assigns rank 0 to `{cardinal}`; ranks start at 1")]
    ZeroRank { model: String, cardinal: String },
    #[error("provable order forces {0} = {1} without declaring the equality")]
    CyclicOrder(String, String),
}

/// A critical-cardinality expression: a base cardinal or the maximum of two.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CardinalExpr {
    Base(String),
    Max(Box<CardinalExpr>, Box<CardinalExpr>),
}

impl CardinalExpr {
    pub fn base(name: impl Into<String>) -> Self {
        CardinalExpr::Base(name.into())
    }

    pub fn max(left: CardinalExpr, right: CardinalExpr) -> Self {
        CardinalExpr::Max(Box::new(left), Box::new(right))
    }

    /// Base cardinal names occurring in the expression, left to right.
    pub fn bases(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_bases(&mut out);
        out
    }

    fn collect_bases<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            CardinalExpr::Base(name) => out.push(name),
            CardinalExpr::Max(l, r) => {
                l.collect_bases(out);
                r.collect_bases(out);
            }
        }
    }

    /// Parses the longest expression at the start of `s`, returning it and the
    /// number of bytes consumed.
    pub(crate) fn parse_prefix(s: &str) -> Result<(CardinalExpr, usize), (usize, String)> {
        if let Some(rest) = s.strip_prefix("max(") {
            let mut pos = 4;
            let (left, used) = Self::parse_prefix(rest).map_err(|(at, m)| (at + pos, m))?;
            pos += used;
            if !s[pos..].starts_with(',') {
                return Err((pos, "expected `,` in max(...)".into()));
            }
            pos += 1;
            let (right, used) = Self::parse_prefix(&s[pos..]).map_err(|(at, m)| (at + pos, m))?;
            pos += used;
            if !s[pos..].starts_with(')') {
                return Err((pos, "expected `)` closing max(...)".into()));
            }
            return Ok((CardinalExpr::max(left, right), pos + 1));
        }
        let ident_len = |t: &str| {
            t.char_indices()
                .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_'))
                .map_or(t.len(), |(i, _)| i)
        };
        let mut len = ident_len(s);
        if len == 0 {
            return Err((0, "expected a cardinal name".into()));
        }
        // Names such as cov(M) carry one parenthesised argument.
        if s[len..].starts_with('(') {
            let arg = ident_len(&s[len + 1..]);
            if arg > 0 && s[len + 1 + arg..].starts_with(')') {
                len += arg + 2;
            }
        }
        Ok((CardinalExpr::base(&s[..len]), len))
    }
}

impl fmt::Display for CardinalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardinalExpr::Base(name) => f.write_str(name),
            CardinalExpr::Max(l, r) => write!(f, "max({l},{r})"),
        }
    }
}

impl FromStr for CardinalExpr {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (expr, used) =
            Self::parse_prefix(s).map_err(|(at, msg)| format!("{msg} at offset {at}"))?;
        if used != s.len() {
            return Err(format!("unexpected `{}` after cardinal expression", &s[used..]));
        }
        Ok(expr)
    }
}

impl Serialize for CardinalExpr {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A consistent configuration of the base cardinals. Only the order of the
/// ranks matters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardinalModel {
    name: String,
    ranks: BTreeMap<String, u32>,
    citation: Option<String>,
}

impl CardinalModel {
    pub fn new<N, I>(name: impl Into<String>, ranks: I) -> Self
    where
        N: Into<String>,
        I: IntoIterator<Item = (N, u32)>,
    {
        CardinalModel {
            name: name.into(),
            ranks: ranks.into_iter().map(|(k, v)| (k.into(), v)).collect(),
            citation: None,
        }
    }

    pub fn with_citation(mut self, citation: impl Into<String>) -> Self {
        let c = citation.into();
        let c = c.trim();
        self.citation = (!c.is_empty()).then(|| c.to_string());
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn citation(&self) -> Option<&str> {
        self.citation.as_deref()
    }

    pub fn ranks(&self) -> &BTreeMap<String, u32> {
        &self.ranks
    }

    pub fn rank(&self, cardinal: &str) -> Option<u32> {
        self.ranks.get(cardinal).copied()
    }
}

/// Inequalities between cardinal expressions that ZFC proves.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProvableOrder {
    pairs: Vec<(CardinalExpr, CardinalExpr)>,
}

impl ProvableOrder {
    pub fn new(pairs: Vec<(CardinalExpr, CardinalExpr)>) -> Self {
        ProvableOrder { pairs }
    }

    /// `(lesser, greater)` pairs in declaration order.
    pub fn pairs(&self) -> &[(CardinalExpr, CardinalExpr)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Rejects declarations whose base-level consequences force two distinct
    /// cardinals to be equal unless both directions are declared outright.
    pub fn check_acyclic(&self) -> Result<(), CardinalError> {
        // max(a,b) <= c splits into a <= c and b <= c; a <= max(c,d) gives no
        // base-level edge.
        let mut edges = BTreeSet::new();
        for (lesser, greater) in &self.pairs {
            if let CardinalExpr::Base(g) = greater {
                for l in lesser.bases() {
                    if l != g {
                        edges.insert((l.to_string(), g.clone()));
                    }
                }
            }
        }
        let names: Vec<&String> = edges
            .iter()
            .flat_map(|(a, b)| [a, b])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let idx = |s: &String| names.binary_search(&s).unwrap();
        let m = names.len();
        let mut reach = vec![false; m * m];
        for (a, b) in &edges {
            reach[idx(a) * m + idx(b)] = true;
        }
        for k in 0..m {
            for i in 0..m {
                if reach[i * m + k] {
                    for j in 0..m {
                        if reach[k * m + j] {
                            reach[i * m + j] = true;
                        }
                    }
                }
            }
        }
        for (a, b) in &edges {
            let back = reach[idx(b) * m + idx(a)];
            if back && !edges.contains(&(b.clone(), a.clone())) {
                return Err(CardinalError::CyclicOrder(a.clone(), b.clone()));
            }
        }
        Ok(())
    }
}

/// Rank of `expr` in `model`.
pub fn eval(expr: &CardinalExpr, model: &CardinalModel) -> Result<u32, CardinalError> {
    match expr {
        CardinalExpr::Base(name) => model
            .rank(name)
            .ok_or_else(|| CardinalError::UnknownCardinal(name.clone())),
        CardinalExpr::Max(l, r) => Ok(eval(l, model)?.max(eval(r, model)?)),
    }
}

/// First model in which `a` is strictly greater than `b`, if any.
pub fn separating_model<'m>(
    a: &CardinalExpr,
    b: &CardinalExpr,
    models: &'m [CardinalModel],
) -> Result<Option<&'m CardinalModel>, CardinalError> {
    for m in models {
        if eval(a, m)? > eval(b, m)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Whether `a > b` holds in some shipped model, i.e. is known to be
/// consistent. An under-approximation: a `false` answer only means no shipped
/// model witnesses it.
pub fn consistently_greater(
    a: &CardinalExpr,
    b: &CardinalExpr,
    models: &[CardinalModel],
) -> Result<bool, CardinalError> {
    Ok(separating_model(a, b, models)?.is_some())
}

/// A model breaking a provable inequality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub model: String,
    pub lesser: CardinalExpr,
    pub greater: CardinalExpr,
    pub lesser_rank: u32,
    pub greater_rank: u32,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "model `{}` ranks {} at {} above {} at {}, but {} <= {} is provable",
            self.model,
            self.lesser,
            self.lesser_rank,
            self.greater,
            self.greater_rank,
            self.lesser,
            self.greater
        )
    }
}

/// Every (model, provable pair) the model contradicts. Pairs the model cannot
/// evaluate are skipped; rank totality is checked separately.
pub fn find_violations(models: &[CardinalModel], provable: &ProvableOrder) -> Vec<Violation> {
    let mut out = Vec::new();
    for m in models {
        for (lesser, greater) in provable.pairs() {
            if let (Ok(l), Ok(g)) = (eval(lesser, m), eval(greater, m)) {
                if l > g {
                    out.push(Violation {
                        model: m.name.clone(),
                        lesser: lesser.clone(),
                        greater: greater.clone(),
                        lesser_rank: l,
                        greater_rank: g,
                    });
                }
            }
        }
    }
    out
}

/// Model/provable cross-validation for a knowledge base.
pub fn validate_models(kb: &crate::KnowledgeBase) -> Vec<Violation> {
    find_violations(kb.models(), kb.provable())
}
