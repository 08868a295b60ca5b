use std::collections::BTreeSet;
use std::fmt::Write;

use serde_json::json;

use rewritekit::ars::{ReductionGraph, State};

/// A reduction graph with nodes in canonical order and labeled edges.
pub struct GraphView {
    /// Printed terms, sorted by (term size, text).
    pub nodes: Vec<String>,
    /// `(from, to, label)` by node position, sorted.
    pub edges: Vec<(usize, usize, String)>,
}

impl GraphView {
    pub fn build<S: State>(
        g: &ReductionGraph<S>,
        size: impl Fn(&S) -> usize,
        labeled: impl Fn(&S) -> Vec<(String, S)>,
    ) -> Self {
        let mut order: Vec<(usize, String, usize)> =
            g.nodes().iter().enumerate().map(|(i, s)| (size(s), s.to_string(), i)).collect();
        order.sort();
        let mut pos = vec![0; order.len()];
        for (p, (_, _, i)) in order.iter().enumerate() {
            pos[*i] = p;
        }
        let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &(a, b) in g.edge_indices() {
            pairs.insert((a, b));
        }
        let mut edges: Vec<(usize, usize, String)> = pairs
            .into_iter()
            .map(|(a, b)| {
                let target = &g.nodes()[b];
                let names: BTreeSet<String> =
                    labeled(&g.nodes()[a]).into_iter().filter(|(_, t)| t == target).map(|(r, _)| r).collect();
                (pos[a], pos[b], names.into_iter().collect::<Vec<_>>().join(","))
            })
            .collect();
        edges.sort();
        GraphView { nodes: order.into_iter().map(|(_, s, _)| s).collect(), edges }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph reductions {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(n));
        }
        for (a, b, label) in &self.edges {
            if label.is_empty() {
                let _ = writeln!(out, "  n{a} -> n{b};");
            } else {
                let _ = writeln!(out, "  n{a} -> n{b} [label=\"{}\"];", escape(label));
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn json_lines(&self) -> Vec<String> {
        let nodes = self.nodes.iter().enumerate().map(|(i, n)| {
            json!({ "event": "node", "term": n, "rule": null, "step": null, "id": format!("n{i}") }).to_string()
        });
        let edges = self.edges.iter().map(|(a, b, label)| {
            json!({
                "event": "edge",
                "term": format!("{} -> {}", self.nodes[*a], self.nodes[*b]),
                "rule": label,
                "step": null,
                "from": format!("n{a}"),
                "to": format!("n{b}"),
            })
            .to_string()
        });
        nodes.chain(edges).collect()
    }
}

/// Escapes a string for a double-quoted DOT identifier.
pub fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn escapes_quotes_and_backslashes() {
        assert_eq!(escape(r#"\. "v0""#), r#"\\. \"v0\""#);
    }
}
