//! Derivation traces: why an entry has the value it has.
//!
//! Traces come from a separate, unfrozen derivation system over atoms
//! `(i, j, value)`. Every atom gets the cheapest derivation tree found by
//! iterating the rules to a fixpoint, where a tree costs one per step. Ties
//! go to the lexicographically smallest premise list. Because the system never
//! freezes an entry, both sides of a contradiction stay derivable, which is
//! what conflict reports need.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cardinals::CardinalError;
use crate::catalog::KnowledgeBase;
use crate::deduction;
use crate::table::{Entry, ImplicationTable, TruthValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExplainError {
    #[error("entry {0} is open")]
    EntryOpen(Entry),
    #[error("entry {0} lies outside the table")]
    OutOfRange(Entry),
    #[error("entry {0} = {1} is not derivable from the knowledge base facts")]
    NotDerivable(Entry, TruthValue),
    #[error("table is {table}x{table} but the catalog has {catalog} properties")]
    DimensionMismatch { table: usize, catalog: usize },
    #[error(transparent)]
    Cardinal(#[from] CardinalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// A knowledge-base fact.
    Fact,
    /// A decided entry of the input table that is not a knowledge-base fact.
    Given,
    /// A hypothetical assertion.
    Hypothesis,
    /// R1: `i ⇒ i`.
    Reflexivity,
    /// R2: `i ⇒ j`, `j ⇒ k` give `i ⇒ k`.
    Transitivity,
    /// R3a: `i ⇏ k`, `i ⇒ j` give `j ⇏ k`.
    LeftContrapositive,
    /// R3b: `i ⇏ k`, `j ⇒ k` give `i ⇏ j`.
    RightContrapositive,
    /// R4: a model where crit(i) > crit(j) gives `i ⇏ j`.
    CardinalSeparation,
}

impl Rule {
    pub fn code(self) -> &'static str {
        match self {
            Rule::Fact => "fact",
            Rule::Given => "given",
            Rule::Hypothesis => "hypothesis",
            Rule::Reflexivity => "R1",
            Rule::Transitivity => "R2",
            Rule::LeftContrapositive => "R3a",
            Rule::RightContrapositive => "R3b",
            Rule::CardinalSeparation => "R4",
        }
    }
}

/// One rule application.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub rule: Rule,
    pub entry: Entry,
    pub value: TruthValue,
    pub premises: Vec<(Entry, TruthValue)>,
    /// Fact justification or separating model.
    pub note: Option<String>,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} = {}", self.rule.code(), self.entry, self.value)?;
        if !self.premises.is_empty() {
            let ps: Vec<String> = self
                .premises
                .iter()
                .map(|(e, v)| format!("{e} = {v}"))
                .collect();
            write!(f, " from {}", ps.join(", "))?;
        }
        if let Some(note) = &self.note {
            write!(f, "  [{note}]")?;
        }
        Ok(())
    }
}

/// Steps in dependency order; the last step concludes `entry = value`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivationTrace {
    pub entry: Entry,
    pub value: TruthValue,
    pub steps: Vec<Step>,
}

impl DerivationTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl fmt::Display for DerivationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} = {}", self.entry, self.value)?;
        for (k, s) in self.steps.iter().enumerate() {
            writeln!(f, "  {:>2}. {s}", k + 1)?;
        }
        Ok(())
    }
}

/// An entry derivable both ways.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conflict {
    pub entry: Entry,
    pub implies: DerivationTrace,
    pub not_implies: DerivationTrace,
}

impl fmt::Display for Conflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "conflict at {}", self.entry)?;
        writeln!(f, "derivation of {} = 1:", self.entry)?;
        for (k, s) in self.implies.steps.iter().enumerate() {
            writeln!(f, "  {:>2}. {s}", k + 1)?;
        }
        writeln!(f, "derivation of {} = 0:", self.entry)?;
        for (k, s) in self.not_implies.steps.iter().enumerate() {
            writeln!(f, "  {:>2}. {s}", k + 1)?;
        }
        Ok(())
    }
}

type Atom = (usize, usize, TruthValue);

/// A premise-free starting point of the derivation system.
#[derive(Debug, Clone)]
pub(crate) struct Axiom {
    pub atom: Atom,
    pub rule: Rule,
    pub note: Option<String>,
}

/// Reflexivity, then knowledge-base facts (or the decided entries of `table`,
/// labelled as facts where they match one), then hypotheses, then cardinal
/// separations.
pub(crate) fn axioms(
    kb: &KnowledgeBase,
    table: Option<&ImplicationTable>,
    hypotheses: &[(Entry, TruthValue)],
    use_cardinals: bool,
) -> Result<Vec<Axiom>, CardinalError> {
    let n = kb.len();
    let mut out: Vec<Axiom> = (0..n)
        .map(|i| Axiom {
            atom: (i, i, TruthValue::Implies),
            rule: Rule::Reflexivity,
            note: None,
        })
        .collect();
    let fact_axiom = |f: &crate::Fact| Axiom {
        atom: (f.from.0, f.to.0, f.value()),
        rule: Rule::Fact,
        note: f.justification.clone(),
    };
    match table {
        None => out.extend(kb.facts().iter().map(fact_axiom)),
        Some(t) => {
            for (e, v) in t.iter() {
                if !v.is_decided() || (e.row() == e.col() && v == TruthValue::Implies) {
                    continue;
                }
                let fact = kb
                    .facts()
                    .iter()
                    .find(|f| (f.from, f.to) == (e.from, e.to) && f.value() == v);
                out.push(match fact {
                    Some(f) => fact_axiom(f),
                    None => Axiom {
                        atom: (e.row(), e.col(), v),
                        rule: Rule::Given,
                        note: None,
                    },
                });
            }
        }
    }
    out.extend(hypotheses.iter().map(|&(e, v)| Axiom {
        atom: (e.row(), e.col(), v),
        rule: Rule::Hypothesis,
        note: None,
    }));
    if use_cardinals {
        for sep in deduction::cardinal_separations(kb)? {
            out.push(Axiom {
                atom: (sep.from, sep.to, TruthValue::NotImplies),
                rule: Rule::CardinalSeparation,
                note: Some(sep.describe(kb)),
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
struct Best {
    cost: u64,
    rule: Rule,
    premises: Vec<Atom>,
    note: Option<String>,
}

/// Cheapest derivation of every derivable atom.
pub(crate) struct Derivations {
    n: usize,
    best: Vec<Option<Best>>,
}

impl Derivations {
    pub fn compute(n: usize, axioms: &[Axiom]) -> Self {
        let mut d = Derivations {
            n,
            best: vec![None; n * n * 2],
        };
        for ax in axioms {
            d.offer(ax.atom, 1, ax.rule, &[], ax.note.as_ref());
        }
        use TruthValue::{Implies as I, NotImplies as N};
        loop {
            let mut changed = false;
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        if let (Some(a), Some(b)) = (d.cost((i, j, I)), d.cost((j, k, I))) {
                            changed |= d.offer(
                                (i, k, I),
                                1 + a + b,
                                Rule::Transitivity,
                                &[(i, j, I), (j, k, I)],
                                None,
                            );
                        }
                        if let (Some(a), Some(b)) = (d.cost((i, k, N)), d.cost((i, j, I))) {
                            changed |= d.offer(
                                (j, k, N),
                                1 + a + b,
                                Rule::LeftContrapositive,
                                &[(i, k, N), (i, j, I)],
                                None,
                            );
                        }
                        if let (Some(a), Some(b)) = (d.cost((i, k, N)), d.cost((j, k, I))) {
                            changed |= d.offer(
                                (i, j, N),
                                1 + a + b,
                                Rule::RightContrapositive,
                                &[(i, k, N), (j, k, I)],
                                None,
                            );
                        }
                    }
                }
            }
            if !changed {
                return d;
            }
        }
    }

    fn slot(&self, (i, j, v): Atom) -> usize {
        (i * self.n + j) * 2 + usize::from(v == TruthValue::NotImplies)
    }

    fn cost(&self, atom: Atom) -> Option<u64> {
        self.best[self.slot(atom)].as_ref().map(|b| b.cost)
    }

    fn offer(
        &mut self,
        atom: Atom,
        cost: u64,
        rule: Rule,
        premises: &[Atom],
        note: Option<&String>,
    ) -> bool {
        let slot = self.slot(atom);
        let better = match &self.best[slot] {
            None => true,
            Some(cur) => {
                let key = |ps: &[Atom]| ps.iter().map(|&(i, j, _)| (i, j)).collect::<Vec<_>>();
                cost < cur.cost || (cost == cur.cost && key(premises) < key(&cur.premises))
            }
        };
        if better {
            self.best[slot] = Some(Best {
                cost,
                rule,
                premises: premises.to_vec(),
                note: note.cloned(),
            });
        }
        better
    }

    pub fn derivable(&self, entry: Entry, value: TruthValue) -> bool {
        value.is_decided() && self.cost((entry.row(), entry.col(), value)).is_some()
    }

    pub fn trace(&self, entry: Entry, value: TruthValue) -> Option<DerivationTrace> {
        if !self.derivable(entry, value) {
            return None;
        }
        let mut seen = HashSet::new();
        let mut steps = Vec::new();
        self.emit((entry.row(), entry.col(), value), &mut seen, &mut steps);
        Some(DerivationTrace {
            entry,
            value,
            steps,
        })
    }

    fn emit(&self, atom: Atom, seen: &mut HashSet<Atom>, steps: &mut Vec<Step>) {
        if !seen.insert(atom) {
            return;
        }
        let best = self.best[self.slot(atom)]
            .as_ref()
            .expect("premises of a recorded derivation are derivable");
        for &p in &best.premises {
            self.emit(p, seen, steps);
        }
        steps.push(Step {
            rule: best.rule,
            entry: Entry::new(atom.0, atom.1),
            value: atom.2,
            premises: best
                .premises
                .iter()
                .map(|&(i, j, v)| (Entry::new(i, j), v))
                .collect(),
            note: best.note.clone(),
        });
    }
}

pub(crate) fn conflict_at(n: usize, axioms: &[Axiom], entry: Entry) -> Conflict {
    let d = Derivations::compute(n, axioms);
    let trace = |v| {
        d.trace(entry, v)
            .expect("both sides of a closure conflict are derivable without freezing")
    };
    Conflict {
        entry,
        implies: trace(TruthValue::Implies),
        not_implies: trace(TruthValue::NotImplies),
    }
}

/// A shortest derivation of the value `table` holds at `entry`, starting from
/// the knowledge-base facts.
pub fn explain(
    table: &ImplicationTable,
    kb: &KnowledgeBase,
    entry: Entry,
    use_cardinals: bool,
) -> Result<DerivationTrace, ExplainError> {
    if table.size() != kb.len() {
        return Err(ExplainError::DimensionMismatch {
            table: table.size(),
            catalog: kb.len(),
        });
    }
    if !table.contains(entry) {
        return Err(ExplainError::OutOfRange(entry));
    }
    let value = table.at(entry);
    if !value.is_decided() {
        return Err(ExplainError::EntryOpen(entry));
    }
    let axioms = axioms(kb, None, &[], use_cardinals)?;
    Derivations::compute(kb.len(), &axioms)
        .trace(entry, value)
        .ok_or(ExplainError::NotDerivable(entry, value))
}
