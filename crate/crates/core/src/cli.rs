//! `implify` command line.
//!
//! Exit codes: 0 success, 1 input error (unreadable or invalid files, bad
//! arguments), 2 contradictory mathematics (a closure conflict).

use std::ffi::OsString;
use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::analysis::{self, Hypothesis};
use crate::api::Api;
use crate::catalog::{FactKind, KnowledgeBase};
use crate::deduction::{close_kb, DeductionError};
use crate::explain::explain;
use crate::format::{self, parse_kb, parse_table, render_dot, render_table, TableFormat};
use crate::table::{Entry, ImplicationTable, TruthValue};
use crate::{cardinals, server};

pub const KB_ENV: &str = "IMPLIFY_KB";

#[derive(Debug, Parser)]
#[command(name = "implify", version, about = "Closure, what-if analysis and ranking for implication tables")]
struct Cli {
    /// Also derive non-implications from the cardinal models.
    #[arg(long, global = true)]
    use_cardinals: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the closed table.
    Close {
        /// Knowledge-base file (default: $IMPLIFY_KB).
        kb: Option<PathBuf>,
        #[arg(long, default_value = "ascii")]
        format: TableFormat,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Draw open entries as dashed edges (dot format).
        #[arg(long)]
        show_open: bool,
    },
    /// List the unsettled implications.
    Open { kb: Option<PathBuf> },
    /// Assert a hypothetical entry and report what it settles.
    Whatif {
        /// [KB] I J VALUE, VALUE being 1 or 0.
        #[arg(num_args = 3..=4, value_name = "ARGS")]
        args: Vec<String>,
        /// Further hypotheses, each I,J,VALUE.
        #[arg(long = "extra", value_name = "I,J,VALUE")]
        extra: Vec<String>,
    },
    /// Rank open entries by how many entries each answer would settle.
    Rank {
        kb: Option<PathBuf>,
        /// 1, 0 or both.
        #[arg(long, default_value = "both")]
        value: String,
        #[arg(long, default_value_t = 10)]
        top: usize,
    },
    /// Show a shortest derivation of a decided entry.
    Explain {
        /// [KB] I J.
        #[arg(num_args = 2..=3, value_name = "ARGS")]
        args: Vec<String>,
    },
    /// Compare two tables (.kb files are closed first).
    Diff { a: PathBuf, b: PathBuf },
    /// Validate a knowledge base and optionally compare its closure to a table.
    Check {
        kb: Option<PathBuf>,
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Serve the JSON API.
    Serve {
        kb: Option<PathBuf>,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
    },
}

enum Failure {
    /// Downstream closed stdout (`implify open | head`); not an error.
    Pipe,
    Input(String),
    Conflict(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::Pipe;
        }
        Failure::Input(e.to_string())
    }
}

fn deduction_failure(e: DeductionError) -> Failure {
    match e {
        DeductionError::Conflict(c) => Failure::Conflict(c.to_string()),
        DeductionError::InitialTable(t) => Failure::Conflict(t.to_string()),
        other => Failure::Input(other.to_string()),
    }
}

type CmdResult = Result<(), Failure>;

/// Runs the CLI with explicit arguments and output streams; returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(()) | Err(Failure::Pipe) => 0,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Conflict(msg)) => {
            let _ = write!(err, "{msg}");
            2
        }
    }
}

fn kb_path(p: Option<PathBuf>) -> Result<PathBuf, Failure> {
    p.or_else(|| std::env::var_os(KB_ENV).map(PathBuf::from))
        .ok_or_else(|| Failure::Input(format!("no knowledge base given and {KB_ENV} is unset")))
}

fn load_kb(p: &Path) -> Result<KnowledgeBase, Failure> {
    let text = std::fs::read_to_string(p)
        .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
    parse_kb(&text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
}

fn load_closed(p: Option<PathBuf>, cards: bool) -> Result<(KnowledgeBase, ImplicationTable), Failure> {
    let kb = load_kb(&kb_path(p)?)?;
    let table = close_kb(&kb, cards).map_err(deduction_failure)?;
    Ok((kb, table))
}

fn index(s: &str, what: &str) -> Result<usize, Failure> {
    s.parse()
        .map_err(|_| Failure::Input(format!("{what} must be a property id, found `{s}`")))
}

fn hypothesis(i: &str, j: &str, v: &str) -> Result<Hypothesis, Failure> {
    let value = TruthValue::parse(v)
        .filter(|v| v.is_decided())
        .ok_or_else(|| Failure::Input(format!("value must be 1 or 0, found `{v}`")))?;
    Hypothesis::new(index(i, "I")?, index(j, "J")?, value).map_err(|e| Failure::Input(e.to_string()))
}

/// Splits optional leading kb path off positional arguments.
fn split_kb(mut args: Vec<String>, fixed: usize) -> (Option<PathBuf>, Vec<String>) {
    if args.len() > fixed {
        let kb = args.remove(0);
        (Some(PathBuf::from(kb)), args)
    } else {
        (None, args)
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let cards = cli.use_cardinals;
    match cli.command {
        Command::Close {
            kb,
            format,
            out: path,
            show_open,
        } => {
            let (kb, table) = load_closed(kb, cards)?;
            let text = match format {
                TableFormat::Dot => render_dot(&table, &kb, show_open),
                f => render_table(&table, f),
            };
            match path {
                Some(p) => std::fs::write(&p, text)
                    .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::Open { kb } => {
            let (kb, table) = load_closed(kb, cards)?;
            let open = analysis::open_entries(&table);
            let name = |i: usize| kb.properties()[i].display_name();
            for e in &open {
                writeln!(
                    out,
                    "{} -> {} : {} => {} ?",
                    e.row(),
                    e.col(),
                    name(e.row()),
                    name(e.col())
                )?;
            }
            writeln!(out, "open: {}", open.len())?;
        }
        Command::Whatif { args, extra } => {
            let (kb, rest) = split_kb(args, 3);
            let mut hs = vec![hypothesis(&rest[0], &rest[1], &rest[2])?];
            for x in &extra {
                let parts: Vec<&str> = x.split(',').map(str::trim).collect();
                if parts.len() != 3 {
                    return Err(Failure::Input(format!("--extra expects I,J,VALUE, found `{x}`")));
                }
                hs.push(hypothesis(parts[0], parts[1], parts[2])?);
            }
            let (kb, table) = load_closed(kb, cards)?;
            let r = analysis::what_if_all(&kb, &table, &hs, cards)
                .map_err(|e| Failure::Input(e.to_string()))?;
            for h in &r.hypotheses {
                writeln!(out, "hypothesis: {h}")?;
            }
            match r.open_after() {
                Some(after) => {
                    writeln!(out, "status: consistent")?;
                    writeln!(out, "open: {} -> {}", r.open_before, after)?;
                    writeln!(out, "settled: {}", r.settled().len())?;
                    for (e, v) in r.settled() {
                        writeln!(out, "  {e} = {v}")?;
                    }
                }
                None => {
                    writeln!(out, "status: refuted")?;
                    if let Some(c) = r.conflict() {
                        write!(out, "{c}")?;
                    }
                }
            }
        }
        Command::Rank { kb, value, top } => {
            let values = match value.as_str() {
                "both" => vec![TruthValue::Implies, TruthValue::NotImplies],
                v => vec![TruthValue::parse(v)
                    .filter(|v| v.is_decided())
                    .ok_or_else(|| Failure::Input(format!("--value must be 1, 0 or both, found `{v}`")))?],
            };
            let (kb, table) = load_closed(kb, cards)?;
            let ranking = analysis::rank_with(&kb, &table, &values, cards)
                .map_err(|e| Failure::Input(e.to_string()))?;
            for r in ranking.iter().take(top) {
                writeln!(
                    out,
                    "{} settles {}, open {}",
                    r.hypothesis, r.settled_count, r.open_after
                )?;
            }
        }
        Command::Explain { args } => {
            let (kb, rest) = split_kb(args, 2);
            let entry = Entry::new(index(&rest[0], "I")?, index(&rest[1], "J")?);
            let (kb, table) = load_closed(kb, cards)?;
            let trace =
                explain(&table, &kb, entry, cards).map_err(|e| Failure::Input(e.to_string()))?;
            write!(out, "{trace}")?;
        }
        Command::Diff { a, b } => {
            let (ta, tb) = (load_table(&a, cards)?, load_table(&b, cards)?);
            let d = analysis::diff(&ta, &tb).map_err(|e| Failure::Input(e.to_string()))?;
            for (e, x, y) in &d {
                writeln!(out, "{e}: {x} -> {y}")?;
            }
            writeln!(out, "differences: {}", d.len())?;
        }
        Command::Check { kb, golden } => check(kb, golden, cards, out)?,
        Command::Serve { kb, port, host } => {
            let kb = load_kb(&kb_path(kb)?)?;
            let api = Api::new(kb, cards).map_err(deduction_failure)?;
            let addr = SocketAddr::new(host, port);
            server::run(api, addr, |bound| {
                let _ = writeln!(err, "listening on http://{bound}");
                let _ = err.flush();
            })
            .map_err(|e| Failure::Input(format!("cannot serve on {addr}: {e}")))?;
        }
    }
    Ok(())
}

fn load_table(p: &Path, cards: bool) -> Result<ImplicationTable, Failure> {
    let ext = p.extension().and_then(|e| e.to_str()).unwrap_or("");
    if ext == "kb" {
        return Ok(load_closed(Some(p.to_path_buf()), cards)?.1);
    }
    let fmt = match ext {
        "csv" => TableFormat::Csv,
        "json" => TableFormat::Json,
        _ => TableFormat::Ascii,
    };
    let text = std::fs::read_to_string(p)
        .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
    parse_table(&text, fmt).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
}

fn check(kb: Option<PathBuf>, golden: Option<PathBuf>, cards: bool, out: &mut dyn Write) -> CmdResult {
    let kb = load_kb(&kb_path(kb)?)?;
    let positive = kb.facts().iter().filter(|f| f.kind == FactKind::Positive).count();
    writeln!(out, "properties: {}", kb.len())?;
    writeln!(
        out,
        "facts: {} ({} implies, {} notimplies)",
        kb.facts().len(),
        positive,
        kb.facts().len() - positive
    )?;
    writeln!(out, "models: {}", kb.models().len())?;
    writeln!(out, "model violations: {}", cardinals::validate_models(&kb).len())?;
    writeln!(out, "content hash: {}", format::content_hash(&kb))?;
    let table = close_kb(&kb, cards).map_err(deduction_failure)?;
    writeln!(out, "closure: consistent, open {}", analysis::count_open(&table))?;
    if let Some(g) = golden {
        let expected = load_table(&g, cards)?;
        let d = analysis::diff(&table, &expected).map_err(|e| Failure::Input(e.to_string()))?;
        if d.is_empty() {
            writeln!(out, "golden: identical")?;
        } else {
            for (e, x, y) in &d {
                writeln!(out, "golden mismatch {e}: closure {x}, golden {y}")?;
            }
            return Err(Failure::Input(format!("closure differs from {} in {} entries", g.display(), d.len())));
        }
    }
    Ok(())
}
