//! Line-oriented knowledge-base files.
//!
//! ```text
//! # comment
//! property 9 S1(W,T) crit=p
//! implies 9 5 # justification
//! notimplies 2 0 # justification
//! cardinal b <= d
//! model cohen b=1 d=2 # citation
//! ```

use thiserror::Error;

use crate::cardinals::{CardinalExpr, CardinalModel, ProvableOrder};
use crate::catalog::{Fact, FactKind, KnowledgeBase, Property, ValidationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KbError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid knowledge base: {0}")]
    Validation(#[from] ValidationError),
}

struct Token<'a> {
    column: usize,
    text: &'a str,
}

fn tokens(code: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, c)) in code.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((byte, col + 1)),
            (true, Some((b, column))) => {
                out.push(Token {
                    column,
                    text: &code[b..byte],
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((b, column)) = start {
        out.push(Token {
            column,
            text: &code[b..],
        });
    }
    out
}

struct LineParser<'a> {
    line: usize,
    toks: Vec<Token<'a>>,
    end_column: usize,
}

impl<'a> LineParser<'a> {
    fn err<T>(&self, column: usize, message: impl Into<String>) -> Result<T, KbError> {
        Err(KbError::Parse {
            line: self.line,
            column,
            message: message.into(),
        })
    }

    fn tok(&self, k: usize, what: &str) -> Result<&Token<'a>, KbError> {
        match self.toks.get(k) {
            Some(t) => Ok(t),
            None => self.err(self.end_column, format!("missing {what}")),
        }
    }

    fn index(&self, k: usize, what: &str) -> Result<usize, KbError> {
        let t = self.tok(k, what)?;
        match t.text.parse() {
            Ok(v) => Ok(v),
            Err(_) => self.err(t.column, format!("expected {what}, found `{}`", t.text)),
        }
    }

    fn expect_len(&self, min: usize, max: usize) -> Result<(), KbError> {
        if self.toks.len() > max {
            let t = &self.toks[max];
            return self.err(t.column, format!("unexpected `{}`", t.text));
        }
        if self.toks.len() < min {
            return self.err(self.end_column, "too few fields");
        }
        Ok(())
    }

    fn expr(&self, text: &str, column: usize) -> Result<CardinalExpr, KbError> {
        match CardinalExpr::parse_prefix(text) {
            Ok((e, used)) if used == text.len() => Ok(e),
            Ok((_, used)) => self.err(
                column + text[..used].chars().count(),
                format!("unexpected `{}` after cardinal expression", &text[used..]),
            ),
            Err((at, msg)) => self.err(column + text[..at].chars().count(), msg),
        }
    }
}

#[derive(Default)]
struct Parsed {
    properties: Vec<Property>,
    facts: Vec<Fact>,
    provable: Vec<(CardinalExpr, CardinalExpr)>,
    models: Vec<CardinalModel>,
}

/// Parses and validates a knowledge base.
pub fn parse_kb(text: &str) -> Result<KnowledgeBase, KbError> {
    let mut acc = Parsed::default();
    for (k, raw) in text.lines().enumerate() {
        let (code, comment) = match raw.split_once('#') {
            Some((c, rest)) => (c, Some(rest.trim())),
            None => (raw, None),
        };
        let p = LineParser {
            line: k + 1,
            toks: tokens(code),
            end_column: code.chars().count() + 1,
        };
        let Some(head) = p.toks.first() else { continue };
        match head.text {
            "property" => {
                p.expect_len(3, 4)?;
                let id = p.index(1, "property id")?;
                let name = p.tok(2, "property name")?;
                let Some((sel, a, b)) = Property::parse_name(name.text) else {
                    return p.err(
                        name.column,
                        format!("expected a name like S1(G,T), found `{}`", name.text),
                    );
                };
                let mut prop = Property::new(id, sel, a, b);
                if let Some(t) = p.toks.get(3) {
                    let Some(expr) = t.text.strip_prefix("crit=") else {
                        return p.err(t.column, format!("expected crit=<expr>, found `{}`", t.text));
                    };
                    prop = prop.with_crit(p.expr(expr, t.column + 5)?);
                }
                acc.properties.push(prop);
            }
            "implies" | "notimplies" => {
                p.expect_len(3, 3)?;
                let (i, j) = (p.index(1, "property id")?, p.index(2, "property id")?);
                let fact = if head.text == "implies" {
                    Fact::implies(i, j)
                } else {
                    Fact::not_implies(i, j)
                };
                acc.facts.push(fact.with_justification(comment.unwrap_or("")));
            }
            "cardinal" => {
                p.expect_len(4, 4)?;
                let op = &p.toks[2];
                if op.text != "<=" {
                    return p.err(op.column, format!("expected `<=`, found `{}`", op.text));
                }
                let lesser = p.expr(p.toks[1].text, p.toks[1].column)?;
                let greater = p.expr(p.toks[3].text, p.toks[3].column)?;
                acc.provable.push((lesser, greater));
            }
            "model" => {
                p.expect_len(3, usize::MAX)?;
                let name = p.toks[1].text;
                let mut ranks = Vec::new();
                for t in &p.toks[2..] {
                    let parsed = t
                        .text
                        .rsplit_once('=')
                        .and_then(|(c, r)| Some((c, r.parse::<u32>().ok()?)));
                    match parsed {
                        Some((c, r)) if !c.is_empty() => {
                            if ranks.iter().any(|(seen, _)| *seen == c) {
                                return p.err(t.column, format!("`{c}` ranked twice"));
                            }
                            ranks.push((c, r));
                        }
                        _ => {
                            return p.err(
                                t.column,
                                format!("expected <cardinal>=<rank>, found `{}`", t.text),
                            )
                        }
                    }
                }
                acc.models
                    .push(CardinalModel::new(name, ranks).with_citation(comment.unwrap_or("")));
            }
            other => return p.err(head.column, format!("unknown directive `{other}`")),
        }
    }
    let kb = KnowledgeBase::new_catalog(acc.properties)
        .map_err(ValidationError::from)?
        .with_facts(acc.facts)
        .map_err(ValidationError::from)?
        .with_provable(ProvableOrder::new(acc.provable))
        .with_models(acc.models);
    kb.validate()?;
    Ok(kb)
}

/// Canonical text: properties, provable order, models, then facts in stored
/// order. `parse_kb(serialize_kb(kb)) == kb`.
pub fn serialize_kb(kb: &KnowledgeBase) -> String {
    let mut groups: Vec<Vec<String>> = Vec::new();
    groups.push(
        kb.properties()
            .iter()
            .map(|p| match &p.crit {
                Some(c) => format!("property {} {} crit={c}", p.id, p.ascii_name()),
                None => format!("property {} {}", p.id, p.ascii_name()),
            })
            .collect(),
    );
    groups.push(
        kb.provable()
            .pairs()
            .iter()
            .map(|(l, g)| format!("cardinal {l} <= {g}"))
            .collect(),
    );
    groups.push(
        kb.models()
            .iter()
            .map(|m| {
                let mut s = format!("model {}", m.name());
                for (c, r) in m.ranks() {
                    s.push_str(&format!(" {c}={r}"));
                }
                if let Some(cite) = m.citation() {
                    s.push_str(&format!(" # {cite}"));
                }
                s
            })
            .collect(),
    );
    groups.push(
        kb.facts()
            .iter()
            .map(|f| {
                let word = match f.kind {
                    FactKind::Positive => "implies",
                    FactKind::Negative => "notimplies",
                };
                match &f.justification {
                    Some(j) => format!("{word} {} {} # {j}", f.from, f.to),
                    None => format!("{word} {} {}", f.from, f.to),
                }
            })
            .collect(),
    );
    let mut out = String::new();
    for g in groups.into_iter().filter(|g| !g.is_empty()) {
        if !out.is_empty() {
            out.push('\n');
        }
        for line in g {
            out.push_str(&line);
            out.push('\n');
        }
    }
    out
}
