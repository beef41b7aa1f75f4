//! Graphviz export of the implication diagram.
//!
//! Solid edges form the transitive reduction of the `1` entries. Properties
//! that imply each other collapse to one class: classes are joined by the
//! reduction of the class order, and members of a class by a cycle in id order.

use std::fmt::Write as _;

use crate::catalog::KnowledgeBase;
use crate::table::{ImplicationTable, TruthValue};

/// Reflexive-transitive closure of the `1` entries as a boolean matrix.
fn reachability(table: &ImplicationTable) -> Vec<bool> {
    let n = table.size();
    let mut r: Vec<bool> = table.cells().iter().map(|v| *v == TruthValue::Implies).collect();
    for i in 0..n {
        r[i * n + i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r[i * n + k] {
                for j in 0..n {
                    if r[k * n + j] {
                        r[i * n + j] = true;
                    }
                }
            }
        }
    }
    r
}

/// Edges of the transitive reduction of the table's `1` entries, sorted.
pub fn transitive_reduction(table: &ImplicationTable) -> Vec<(usize, usize)> {
    let n = table.size();
    let r = reachability(table);
    let reach = |i: usize, j: usize| r[i * n + j];
    // Smallest member of each mutual-implication class.
    let rep: Vec<usize> = (0..n)
        .map(|i| (0..n).find(|&j| reach(i, j) && reach(j, i)).unwrap_or(i))
        .collect();
    let reps: Vec<usize> = (0..n).filter(|&i| rep[i] == i).collect();
    let mut edges = Vec::new();
    for &a in &reps {
        for &b in &reps {
            if a == b || !reach(a, b) {
                continue;
            }
            let via = reps
                .iter()
                .any(|&c| c != a && c != b && reach(a, c) && reach(c, b));
            if !via {
                edges.push((a, b));
            }
        }
    }
    for &a in &reps {
        let members: Vec<usize> = (0..n).filter(|&i| rep[i] == a).collect();
        if members.len() > 1 {
            for w in members.windows(2) {
                edges.push((w[0], w[1]));
            }
            edges.push((*members.last().unwrap(), a));
        }
    }
    edges.sort_unstable();
    edges
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub(crate) fn render(table: &ImplicationTable, kb: Option<&KnowledgeBase>, show_open: bool) -> String {
    let n = table.size();
    let mut out = String::from("digraph implications {\n  rankdir=LR;\n  node [shape=box];\n");
    for i in 0..n {
        let label = match kb.and_then(|k| k.property(i)) {
            Some(p) => {
                let crit = p.crit.as_ref().map_or_else(|| "?".to_string(), |c| c.to_string());
                format!("{}\\n({i})  {}", escape(&p.display_name()), escape(&crit))
            }
            None => i.to_string(),
        };
        let _ = writeln!(out, "  n{i} [label=\"{label}\"];");
    }
    for (a, b) in transitive_reduction(table) {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    if show_open {
        for (e, v) in table.iter() {
            if v == TruthValue::Open {
                let _ = writeln!(
                    out,
                    "  n{} -> n{} [style=dashed, color=gray];",
                    e.row(),
                    e.col()
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

/// DOT with property names and critical cardinalities on the nodes; open
/// entries appear as dashed gray edges when `show_open` is set.
pub fn render_dot(table: &ImplicationTable, kb: &KnowledgeBase, show_open: bool) -> String {
    render(table, Some(kb), show_open)
}

#[cfg(test)]
mod tests {
    use super::*;
    use TruthValue::*;

    #[test]
    fn chain_reduces_to_adjacent_edges() {
        // 0 -> 1 -> 2 with 0 -> 2 implied.
        let t = ImplicationTable::from_cells(
            3,
            vec![Implies, Implies, Implies, Open, Implies, Implies, NotImplies, Open, Implies],
        )
        .unwrap();
        assert_eq!(transitive_reduction(&t), vec![(0, 1), (1, 2)]);
        let dot = render(&t, None, true);
        assert!(dot.contains("n0 -> n1;"));
        assert!(!dot.contains("n0 -> n2;"));
        assert!(dot.contains("n1 -> n0 [style=dashed, color=gray];"));
        assert!(!render(&t, None, false).contains("dashed"));
    }

    #[test]
    fn equivalent_properties_form_a_cycle() {
        let t = ImplicationTable::from_cells(
            3,
            vec![Implies; 9],
        )
        .unwrap();
        assert_eq!(transitive_reduction(&t), vec![(0, 1), (1, 2), (2, 0)]);
    }
}
