//! Text renderings of implication tables.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::table::{ImplicationTable, TruthValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableFormat {
    /// Grid of `1`/`0`/`?` with serial-number headers.
    Ascii,
    /// `n` lines of `n` comma-separated `1`/`0`/`?`.
    Csv,
    /// `{"n": .., "entries": [..]}`, row-major.
    Json,
    /// Graphviz; not parsable.
    Dot,
}

impl TableFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            TableFormat::Ascii => "ascii",
            TableFormat::Csv => "csv",
            TableFormat::Json => "json",
            TableFormat::Dot => "dot",
        }
    }
}

impl FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ascii" => Ok(TableFormat::Ascii),
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            "dot" => Ok(TableFormat::Dot),
            _ => Err(format!("unknown table format `{s}` (ascii, csv, json, dot)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableParseError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("row {row} has {found} cells, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("{0} tables cannot be parsed")]
    Unsupported(&'static str),
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    n: usize,
    entries: Vec<TruthValue>,
}

/// Renders `table`. Output ends in exactly one `\n`. The DOT rendering here
/// labels nodes by serial number only; [`super::render_dot`] adds names.
pub fn render_table(table: &ImplicationTable, format: TableFormat) -> String {
    let n = table.size();
    match format {
        TableFormat::Ascii => {
            let w = (n.saturating_sub(1)).to_string().len() + 1;
            let mut out = " ".repeat(w);
            for j in 0..n {
                let _ = write!(out, "{j:>w$}");
            }
            out.push('\n');
            for i in 0..n {
                let _ = write!(out, "{i:>w$}");
                for v in table.row(i) {
                    let _ = write!(out, "{:>w$}", v.symbol());
                }
                out.push('\n');
            }
            out
        }
        TableFormat::Csv => {
            let mut out = String::with_capacity(2 * n * n);
            for i in 0..n {
                let row: Vec<String> = table.row(i).iter().map(|v| v.symbol().to_string()).collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        TableFormat::Json => {
            let mut out = serde_json::to_string(&JsonTable {
                n,
                entries: table.cells().to_vec(),
            })
            .expect("table serialises");
            out.push('\n');
            out
        }
        TableFormat::Dot => super::dot::render(table, None, false),
    }
}

fn cell(s: &str, line: usize, column: usize) -> Result<TruthValue, TableParseError> {
    let mut chars = s.chars();
    match (chars.next().and_then(TruthValue::from_symbol), chars.next()) {
        (Some(v), None) => Ok(v),
        _ => Err(TableParseError::Parse {
            line,
            column,
            message: format!("expected 1, 0 or ?, found `{s}`"),
        }),
    }
}

/// Inverse of [`render_table`] for the parsable formats. Accepts CRLF input.
pub fn parse_table(text: &str, format: TableFormat) -> Result<ImplicationTable, TableParseError> {
    match format {
        TableFormat::Csv => parse_csv(text),
        TableFormat::Ascii => parse_ascii(text),
        TableFormat::Json => parse_json(text),
        TableFormat::Dot => Err(TableParseError::Unsupported("dot")),
    }
}

fn parse_csv(text: &str) -> Result<ImplicationTable, TableParseError> {
    let rows: Vec<&str> = text
        .lines()
        .map(|l| l.trim_end_matches('\r'))
        .filter(|l| !l.trim().is_empty())
        .collect();
    let n = rows.len();
    let mut cells = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != n {
            return Err(TableParseError::RaggedRows {
                row: i,
                expected: n,
                found: fields.len(),
            });
        }
        let mut column = 1;
        for f in fields {
            cells.push(cell(f.trim(), i + 1, column)?);
            column += f.chars().count() + 1;
        }
    }
    Ok(ImplicationTable::from_cells(n, cells).expect("n² cells"))
}

fn parse_ascii(text: &str) -> Result<ImplicationTable, TableParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let Some((h_line, header)) = lines.next() else {
        return Ok(ImplicationTable::open(0));
    };
    let n = header.split_whitespace().count();
    for (k, tok) in header.split_whitespace().enumerate() {
        if tok.parse::<usize>().ok() != Some(k) {
            return Err(TableParseError::Parse {
                line: h_line + 1,
                column: header.find(tok).unwrap_or(0) + 1,
                message: format!("header should list 0..{n}, found `{tok}`"),
            });
        }
    }
    let mut cells = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (line_no, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks[0].parse::<usize>().ok() != Some(rows) {
            return Err(TableParseError::Parse {
                line: line_no + 1,
                column: line.find(toks[0]).unwrap_or(0) + 1,
                message: format!("expected row label {rows}, found `{}`", toks[0]),
            });
        }
        if toks.len() != n + 1 {
            return Err(TableParseError::RaggedRows {
                row: rows,
                expected: n,
                found: toks.len() - 1,
            });
        }
        let mut from = 0;
        for t in &toks[1..] {
            let at = from + line[from..].find(t).unwrap_or(0);
            cells.push(cell(t, line_no + 1, at + 1)?);
            from = at + t.len();
        }
        rows += 1;
    }
    if rows != n {
        return Err(TableParseError::RaggedRows {
            row: rows,
            expected: n,
            found: 0,
        });
    }
    Ok(ImplicationTable::from_cells(n, cells).expect("n² cells"))
}

fn parse_json(text: &str) -> Result<ImplicationTable, TableParseError> {
    let t: JsonTable = serde_json::from_str(text).map_err(|e| TableParseError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let found = t.entries.len();
    ImplicationTable::from_cells(t.n, t.entries).ok_or(TableParseError::RaggedRows {
        row: found / t.n.max(1),
        expected: t.n * t.n,
        found,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use TruthValue::*;

    fn sample() -> ImplicationTable {
        ImplicationTable::from_cells(3, vec![Implies, NotImplies, Open, Open, Implies, Implies, NotImplies, NotImplies, Implies])
            .unwrap()
    }

    #[test]
    fn single_cell_csv() {
        let t = ImplicationTable::from_cells(1, vec![Implies]).unwrap();
        assert_eq!(render_table(&t, TableFormat::Csv), "1\n");
    }

    #[test]
    fn ascii_layout() {
        assert_eq!(
            render_table(&sample(), TableFormat::Ascii),
            "   0 1 2\n 0 1 0 ?\n 1 ? 1 1\n 2 0 0 1\n"
        );
    }

    #[test]
    fn json_layout() {
        let s = render_table(&ImplicationTable::from_cells(1, vec![Open]).unwrap(), TableFormat::Json);
        assert_eq!(s, "{\"n\":1,\"entries\":[\"open\"]}\n");
    }

    #[test]
    fn round_trips() {
        for f in [TableFormat::Ascii, TableFormat::Csv, TableFormat::Json] {
            assert_eq!(parse_table(&render_table(&sample(), f), f).unwrap(), sample(), "{f:?}");
        }
    }

    #[test]
    fn ragged_rows() {
        assert!(matches!(
            parse_table("1,0\n0,1\n1,1\n", TableFormat::Csv),
            Err(TableParseError::RaggedRows { row: 0, expected: 3, found: 2 })
        ));
        assert!(matches!(
            parse_table("  0 1\n0 1 0\n", TableFormat::Ascii),
            Err(TableParseError::RaggedRows { .. })
        ));
        assert!(matches!(
            parse_table("{\"n\":2,\"entries\":[\"open\"]}", TableFormat::Json),
            Err(TableParseError::RaggedRows { .. })
        ));
    }

    #[test]
    fn bad_cells() {
        assert_eq!(
            parse_table("1,x\n0,1\n", TableFormat::Csv),
            Err(TableParseError::Parse {
                line: 1,
                column: 3,
                message: "expected 1, 0 or ?, found `x`".into()
            })
        );
        assert!(parse_table("1\r\n", TableFormat::Csv).is_ok());
        assert!(parse_table("", TableFormat::Dot).is_err());
    }
}
