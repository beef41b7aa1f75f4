//! JSON API over one closed knowledge base.
//!
//! Transport-free: [`Api::handle`] maps a method, path, query string and body
//! to a status code and JSON value. [`crate::server`] puts it on HTTP.
//!
//! | route | answer |
//! |---|---|
//! | `GET /api/properties` | catalog with names and critical cardinalities |
//! | `GET /api/table` | closed table |
//! | `GET /api/open` | open entries |
//! | `POST /api/whatif` | `{"i","j","value","extra":[..]}` re-closed |
//! | `GET /api/rank?value=&top=` | ranked hypotheses |
//! | `GET /api/explain?i=&j=` | derivation trace |
//!
//! Every success carries `"hash"`, the content hash of the knowledge base.
//! Errors are `{"error": {"code", "message"}}`.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::analysis::{self, Hypothesis, WhatIfResult};
use crate::catalog::KnowledgeBase;
use crate::deduction::{close_kb, DeductionError};
use crate::explain::{explain, ExplainError};
use crate::format::content_hash;
use crate::table::{Entry, ImplicationTable, TruthValue};

#[derive(Debug, Clone, PartialEq)]
pub struct Response {
    pub status: u16,
    pub body: Value,
}

fn error(status: u16, code: &str, message: impl Into<String>) -> Response {
    Response {
        status,
        body: json!({"error": {"code": code, "message": message.into()}}),
    }
}

#[derive(Deserialize)]
struct HypothesisBody {
    i: usize,
    j: usize,
    value: String,
}

#[derive(Deserialize)]
struct WhatIfBody {
    i: usize,
    j: usize,
    value: String,
    #[serde(default)]
    extra: Vec<HypothesisBody>,
}

/// Immutable server state: the knowledge base and its closed table.
#[derive(Debug, Clone)]
pub struct Api {
    kb: KnowledgeBase,
    table: ImplicationTable,
    hash: String,
    use_cardinals: bool,
}

impl Api {
    pub fn new(kb: KnowledgeBase, use_cardinals: bool) -> Result<Self, DeductionError> {
        let table = close_kb(&kb, use_cardinals)?;
        let hash = content_hash(&kb);
        Ok(Api {
            kb,
            table,
            hash,
            use_cardinals,
        })
    }

    pub fn hash(&self) -> &str {
        &self.hash
    }

    pub fn table(&self) -> &ImplicationTable {
        &self.table
    }

    pub fn handle(&self, method: &str, path: &str, query: Option<&str>, body: &[u8]) -> Response {
        let params: Vec<(String, String)> = query
            .map(|q| form_urlencoded::parse(q.as_bytes()).into_owned().collect())
            .unwrap_or_default();
        let param = |k: &str| params.iter().find(|(key, _)| key == k).map(|(_, v)| v.as_str());
        let route = match (method, path.trim_end_matches('/')) {
            ("GET", "/api/properties") => Ok(self.properties()),
            ("GET", "/api/table") => Ok(self.table_json()),
            ("GET", "/api/open") => Ok(self.open()),
            ("POST", "/api/whatif") => self.what_if(body),
            ("GET", "/api/rank") => self.rank(param("value"), param("top")),
            ("GET", "/api/explain") => self.explain(param("i"), param("j")),
            (_, "/api/properties" | "/api/table" | "/api/open" | "/api/whatif" | "/api/rank"
            | "/api/explain") => Err(error(405, "method_not_allowed", format!("{method} {path}"))),
            _ => Err(error(404, "not_found", format!("no route for {path}"))),
        };
        match route {
            Ok(mut body) => {
                body["hash"] = Value::String(self.hash.clone());
                Response { status: 200, body }
            }
            Err(e) => e,
        }
    }

    fn properties(&self) -> Value {
        let props: Vec<Value> = self
            .kb
            .properties()
            .iter()
            .map(|p| {
                json!({
                    "id": p.id,
                    "name": p.display_name(),
                    "ascii": p.ascii_name(),
                    "selector": p.selector.as_str(),
                    "source": p.source.symbol(),
                    "target": p.target.symbol(),
                    "crit": p.crit.as_ref().map(|c| c.to_string()),
                })
            })
            .collect();
        json!({ "properties": props })
    }

    fn table_json(&self) -> Value {
        json!({
            "n": self.table.size(),
            "entries": self.table.cells(),
            "open": analysis::count_open(&self.table),
        })
    }

    fn open(&self) -> Value {
        let entries: Vec<[usize; 2]> = analysis::open_entries(&self.table)
            .into_iter()
            .map(|e| [e.row(), e.col()])
            .collect();
        json!({ "count": entries.len(), "open": entries })
    }

    fn hypothesis(&self, h: &HypothesisBody) -> Result<Hypothesis, Response> {
        let n = self.table.size();
        if h.i >= n || h.j >= n {
            return Err(error(
                400,
                "out_of_range",
                format!("entry ({},{}) outside the {n}x{n} table", h.i, h.j),
            ));
        }
        match TruthValue::parse(&h.value) {
            Some(v) if v.is_decided() => Ok(Hypothesis::new(h.i, h.j, v).expect("decided")),
            _ => Err(error(
                400,
                "bad_value",
                format!("value must be implies or not_implies, found `{}`", h.value),
            )),
        }
    }

    fn what_if(&self, body: &[u8]) -> Result<Value, Response> {
        let req: WhatIfBody = serde_json::from_slice(body)
            .map_err(|e| error(400, "bad_request", e.to_string()))?;
        let primary = HypothesisBody {
            i: req.i,
            j: req.j,
            value: req.value,
        };
        let mut hs = vec![self.hypothesis(&primary)?];
        for h in &req.extra {
            hs.push(self.hypothesis(h)?);
        }
        let r = analysis::what_if_all(&self.kb, &self.table, &hs, self.use_cardinals)
            .map_err(|e| error(500, "internal", e.to_string()))?;
        Ok(what_if_json(&r))
    }

    fn rank(&self, value: Option<&str>, top: Option<&str>) -> Result<Value, Response> {
        let values = match value.unwrap_or("both") {
            "both" => vec![TruthValue::Implies, TruthValue::NotImplies],
            v => match TruthValue::parse(v) {
                Some(t) if t.is_decided() => vec![t],
                _ => return Err(error(400, "bad_value", format!("unknown value `{v}`"))),
            },
        };
        let top = match top {
            None => usize::MAX,
            Some(t) => t
                .parse()
                .map_err(|_| error(400, "bad_request", format!("top must be a count, found `{t}`")))?,
        };
        let ranking = analysis::rank_with(&self.kb, &self.table, &values, self.use_cardinals)
            .map_err(|e| error(500, "internal", e.to_string()))?;
        let rows: Vec<Value> = ranking
            .iter()
            .take(top)
            .map(|r| {
                json!({
                    "i": r.hypothesis.entry.row(),
                    "j": r.hypothesis.entry.col(),
                    "value": r.hypothesis.value,
                    "settled_count": r.settled_count,
                    "open_after": r.open_after,
                })
            })
            .collect();
        Ok(json!({ "ranking": rows }))
    }

    fn explain(&self, i: Option<&str>, j: Option<&str>) -> Result<Value, Response> {
        let idx = |name: &str, v: Option<&str>| -> Result<usize, Response> {
            v.and_then(|s| s.parse().ok())
                .ok_or_else(|| error(400, "bad_request", format!("query parameter {name} must be an index")))
        };
        let entry = Entry::new(idx("i", i)?, idx("j", j)?);
        match explain(&self.table, &self.kb, entry, self.use_cardinals) {
            Ok(trace) => Ok(json!({
                "trace": trace,
                "text": trace.to_string(),
            })),
            Err(e @ ExplainError::EntryOpen(_)) => Err(error(422, "entry_open", e.to_string())),
            Err(e @ ExplainError::OutOfRange(_)) => Err(error(400, "out_of_range", e.to_string())),
            Err(e) => Err(error(500, "internal", e.to_string())),
        }
    }
}

/// JSON form of a what-if result, as served by `POST /api/whatif`.
pub fn what_if_json(r: &WhatIfResult) -> Value {
    let hyp = |h: &Hypothesis| json!({"i": h.entry.row(), "j": h.entry.col(), "value": h.value});
    let settled: Vec<Value> = r
        .settled()
        .iter()
        .map(|(e, v)| json!({"i": e.row(), "j": e.col(), "value": v}))
        .collect();
    json!({
        "status": r.status(),
        "hypotheses": r.hypotheses.iter().map(hyp).collect::<Vec<_>>(),
        "open_before": r.open_before,
        "open_after": r.open_after(),
        "settled": settled,
        "table": r.table_after().map(|t| json!({"n": t.size(), "entries": t.cells()})),
        "conflict": r.conflict().map(|c| json!({
            "entry": c.entry,
            "message": c.to_string(),
            "implies": c.implies,
            "not_implies": c.not_implies,
        })),
    })
}
